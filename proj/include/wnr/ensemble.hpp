#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wnr/linalg.hpp"
#include "wnr/registry.hpp"

namespace wnr {

/// kind is one of ensemble_kinds(); generation is a pure function of all
/// four fields.
struct EnsembleSpec {
  std::string kind = "ginibre";
  int n = 2;
  double scale = 1.0;
  std::uint64_t seed = 0;

  bool operator==(const EnsembleSpec &) const = default;
};

/// ginibre, hermitian, psd, unitary, nilpotent, normal, scalar.
const std::vector<std::string> &ensemble_kinds();

/// Matrix entries are complex Gaussians drawn row-major from
/// SplitMix64(seed), then shaped:
///   ginibre    G
///   hermitian  upper triangle of G mirrored, real diagonal
///   psd        G G*, mirrored from the upper triangle
///   unitary    Q diag(r_ii / |r_ii|) from the Householder QR of G
///   nilpotent  strict upper triangle of G
///   normal     U diag(d) U*, U unitary as above, d complex Gaussian
///   scalar     c I with c a real standard normal
/// and multiplied by scale. Throws UnknownKind, DomainError (n < 1 or
/// scale <= 0).
ComplexMatrix generate(const EnsembleSpec &spec);

/// Four matrices (component j from derive_seed(seed, j)) and three complex
/// Gaussian vectors (tags 100, 101, 102).
Instance make_instance(const EnsembleSpec &spec);

/// Seed of trial `trial` for (kind, n) under a base seed; independent of
/// the order trials run in.
std::uint64_t trial_seed(std::uint64_t base, const std::string &kind, int n, int trial);

} // namespace wnr
