#pragma once

// Random generators shared by the unit, property and acceptance tests.

#include "symdisc/geometry.hpp"
#include "symdisc/numerics.hpp"
#include "symdisc/tuples.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace symdisc::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline cplx unimodular(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi)); }

/// Uniform in the disc of radius r.
inline cplx in_disc(Rng& rng, double r = 1.0) {
  return r * std::sqrt(uniform(rng)) * unimodular(rng);
}

inline cplx gaussian(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

inline ComplexMatrix gaussian_matrix(Eigen::Index r, Eigen::Index c, Rng& rng) {
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = gaussian(rng);
  return m;
}

/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
inline ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < d; ++k) {
    const cplx rk = r(k, k);
    if (std::abs(rk) > 0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

inline std::vector<cplx> torus(int n, Rng& rng) {
  std::vector<cplx> z(n);
  for (auto& v : z) v = unimodular(rng);
  return z;
}

inline std::vector<cplx> polydisc(int n, Rng& rng, double r = 1.0) {
  std::vector<cplx> z(n);
  for (auto& v : z) v = in_disc(rng, r);
  return z;
}

/// Roots with max modulus exactly `rmax` and the rest spread below it.
inline std::vector<cplx> roots_with_max(int n, double rmax, Rng& rng) {
  std::vector<cplx> z = polydisc(n, rng, rmax);
  z[uniform_int(rng, 0, n - 1)] = rmax * unimodular(rng);
  return z;
}

/// Point of G_n whose oracle max root modulus is at most 1 - margin.
inline GammaPoint interior_point(int n, Rng& rng, double margin = 1e-3) {
  return symmetrize(polydisc(n, rng, 1.0 - margin));
}

/// Tuple (S_1, ..., S_{n-1}, P) = U diag(pi(z^(k))) U^* built from joint
/// eigenvalues `pts` (one per diagonal slot).
inline OperatorTuple diagonal_tuple(const std::vector<GammaPoint>& pts, const ComplexMatrix& u) {
  const int n = pts.front().n();
  const Eigen::Index d = static_cast<Eigen::Index>(pts.size());
  std::vector<ComplexMatrix> members;
  for (int k = 0; k < n; ++k) {
    ComplexVector diag(d);
    for (Eigen::Index j = 0; j < d; ++j) diag(j) = pts[j].coords()[k];
    members.push_back(u * diag.asDiagonal() * u.adjoint());
  }
  return OperatorTuple::from_members(std::move(members));
}

/// Symmetrization of a normal tuple with unimodular joint eigenvalues.
/// When `repeat_first` is set, slots 0 and 1 share a joint eigenvalue.
inline OperatorTuple unitary_tuple(int n, Eigen::Index d, Rng& rng, bool repeat_first = false,
                                   std::vector<GammaPoint>* eig = nullptr,
                                   ComplexMatrix* basis = nullptr) {
  std::vector<GammaPoint> pts;
  for (Eigen::Index j = 0; j < d; ++j) pts.push_back(symmetrize(torus(n, rng)));
  if (repeat_first && d >= 2) pts[1] = pts[0];
  const ComplexMatrix u = random_unitary(d, rng);
  if (eig) *eig = pts;
  if (basis) *basis = u;
  return diagonal_tuple(pts, u);
}

/// Elementary symmetric functions of commuting matrices: returns
/// (e_1, ..., e_n) of (a_1, ..., a_n).
inline std::vector<ComplexMatrix> matrix_symmetrize(const std::vector<ComplexMatrix>& a) {
  const Eigen::Index d = a.front().rows();
  std::vector<ComplexMatrix> e(a.size() + 1, ComplexMatrix::Zero(d, d));
  e[0] = ComplexMatrix::Identity(d, d);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t j = k + 1; j >= 1; --j) e[j] = e[j] + a[k] * e[j - 1];
  }
  return {e.begin() + 1, e.end()};
}

/// pi_n of jointly diagonal strict contractions with entries in r * D, in a
/// random orthonormal basis.
inline OperatorTuple diagonal_contraction_tuple(int n, Eigen::Index d, Rng& rng, double r = 0.9) {
  std::vector<GammaPoint> pts;
  for (Eigen::Index j = 0; j < d; ++j) pts.push_back(symmetrize(polydisc(n, rng, r)));
  return diagonal_tuple(pts, random_unitary(d, rng));
}

/// A Gamma_n contraction that is not normal in general: the symmetrization
/// of c_k A + d_k I for one contraction A with |c_k| + |d_k| <= 1.
inline OperatorTuple contraction_tuple(int n, Eigen::Index d, Rng& rng, double norm_a) {
  ComplexMatrix a = gaussian_matrix(d, d, rng);
  a *= norm_a / operator_norm(a);
  std::vector<ComplexMatrix> parts;
  for (int k = 0; k < n; ++k) {
    const cplx c = in_disc(rng);
    const cplx off = in_disc(rng, 1.0 - std::abs(c));
    parts.push_back(c * a + off * ComplexMatrix::Identity(d, d));
  }
  return OperatorTuple::from_members(matrix_symmetrize(parts));
}

}  // namespace symdisc::testing
