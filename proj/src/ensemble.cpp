#include "wnr/ensemble.hpp"

#include <algorithm>

#include "wnr/errors.hpp"
#include "wnr/rng.hpp"

namespace wnr {

namespace {

ComplexMatrix gaussian_matrix(SplitMix64 &rng, int n) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = rng.complex_gaussian();
  return g;
}

ComplexMatrix haar_unitary(SplitMix64 &rng, int n) {
  const ComplexMatrix g = gaussian_matrix(rng, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0.0)
      q.col(j) *= r(j, j) / m;
  }
  return q;
}

// Copies the upper triangle onto the lower one and zeroes imaginary parts
// on the diagonal, so the result is exactly Hermitian.
ComplexMatrix mirror_upper(ComplexMatrix a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = Complex(a(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j)
      a(j, i) = std::conj(a(i, j));
  }
  return a;
}

} // namespace

const std::vector<std::string> &ensemble_kinds() {
  static const std::vector<std::string> kinds{"ginibre",   "hermitian", "psd",   "unitary",
                                              "nilpotent", "normal",    "scalar"};
  return kinds;
}

ComplexMatrix generate(const EnsembleSpec &spec) {
  const auto &kinds = ensemble_kinds();
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end())
    throw UnknownKind(spec.kind);
  if (spec.n < 1)
    throw DomainError("ensemble dimension must be >= 1");
  if (!(spec.scale > 0.0))
    throw DomainError("ensemble scale must be positive");

  SplitMix64 rng(spec.seed);
  const int n = spec.n;
  ComplexMatrix m;
  if (spec.kind == "ginibre") {
    m = gaussian_matrix(rng, n);
  } else if (spec.kind == "hermitian") {
    m = mirror_upper(gaussian_matrix(rng, n));
  } else if (spec.kind == "psd") {
    const ComplexMatrix g = gaussian_matrix(rng, n);
    m = mirror_upper(g * g.adjoint());
  } else if (spec.kind == "unitary") {
    m = haar_unitary(rng, n);
  } else if (spec.kind == "nilpotent") {
    m = gaussian_matrix(rng, n).triangularView<Eigen::StrictlyUpper>();
  } else if (spec.kind == "normal") {
    const ComplexMatrix u = haar_unitary(rng, n);
    ComplexVector d(n);
    for (int i = 0; i < n; ++i)
      d(i) = rng.complex_gaussian();
    m = u * d.asDiagonal() * u.adjoint();
  } else { // scalar
    m = rng.normal() * ComplexMatrix::Identity(n, n);
  }
  return spec.scale * m;
}

Instance make_instance(const EnsembleSpec &spec) {
  Instance inst;
  for (std::uint64_t j = 0; j < 4; ++j) {
    EnsembleSpec part = spec;
    part.seed = derive_seed(spec.seed, j);
    inst.mats.push_back(generate(part));
  }
  auto vec = [&](std::uint64_t tag) {
    SplitMix64 rng(derive_seed(spec.seed, tag));
    ComplexVector v(spec.n);
    for (int i = 0; i < spec.n; ++i)
      v(i) = rng.complex_gaussian();
    return v;
  };
  inst.x = vec(100);
  inst.y = vec(101);
  inst.e = vec(102);
  return inst;
}

std::uint64_t trial_seed(std::uint64_t base, const std::string &kind, int n, int trial) {
  std::uint64_t s = derive_seed(base, name_tag(kind));
  s = derive_seed(s, static_cast<std::uint64_t>(n));
  return derive_seed(s, static_cast<std::uint64_t>(trial));
}

} // namespace wnr
