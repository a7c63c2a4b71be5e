#include "symdisc/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace symdisc {

void require_well_formed(const ComplexMatrix& a, const std::string& what) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw Error(what + ": dimension-zero matrix");
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        std::ostringstream os;
        os << what << ": non-finite entry at (" << i << ", " << j << ")";
        throw Error(os.str());
      }
    }
  }
}

void require_square(const ComplexMatrix& a, const std::string& what) {
  require_well_formed(a, what);
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(os.str());
  }
}

double operator_norm(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw Error("operator_norm: dimension-zero matrix");
  if (!a.allFinite()) throw Error("operator_norm: non-finite entry");
  if (a.isZero(0.0)) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double hermitian_residual(const ComplexMatrix& a) {
  return operator_norm(a - a.adjoint());
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return operator_norm(a * b - b * a);
}

double normality_defect(const ComplexMatrix& a) {
  return operator_norm(a.adjoint() * a - a * a.adjoint());
}

HermitianEig hermitian_eig(const ComplexMatrix& a, const Tolerance& tol) {
  require_square(a, "hermitian_eig");
  const double asym = hermitian_residual(a);
  if (asym > tol.slack(operator_norm(a))) {
    std::ostringstream os;
    os << "hermitian_eig: input is not Hermitian (||A - A*|| = " << asym << ")";
    throw Error(os.str());
  }
  const ComplexMatrix h = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
  const ComplexMatrix h = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, const Tolerance& tol) {
  HermitianEig eig = hermitian_eig(a, tol);
  Eigen::VectorXd roots(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values(k);
    if (lambda < -tol.abs_eps) {
      std::ostringstream os;
      os << "psd_sqrt: matrix is not PSD (eigenvalue " << lambda << ")";
      throw Error(os.str());
    }
    roots(k) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix b = eig.vectors * roots.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  return (b + b.adjoint()) * 0.5;
}

cplx eval_monic(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 1.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

namespace {

// |p^{(m)}(mu)| / m! via repeated synthetic division of the monic polynomial.
double taylor_coefficient(const std::vector<cplx>& coeffs, cplx mu, std::size_t m) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  c.push_back(1.0);  // c[k] is the coefficient of z^k
  cplx rem = 0.0;
  for (std::size_t k = 0; k <= m && !c.empty(); ++k) {
    const std::size_t d = c.size() - 1;
    if (d == 0) {
      rem = c[0];
      c.clear();
      break;
    }
    std::vector<cplx> q(d);
    q[d - 1] = c[d];
    for (std::size_t j = d - 1; j >= 1; --j) q[j - 1] = c[j] + mu * q[j];
    rem = c[0] + mu * q[0];
    c = std::move(q);
  }
  return std::abs(rem);
}

}  // namespace

std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs) {
  const std::size_t n = coeffs.size();
  if (n == 0) throw Error("companion_roots: degree-0 polynomial");
  for (const cplx& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error("companion_roots: non-finite coefficient");
    }
  }
  if (n == 1) return {-coeffs[0]};

  ComplexMatrix companion = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  for (std::size_t k = 0; k < n; ++k) companion(k, n - 1) = -coeffs[k];
  Eigen::ComplexEigenSolver<ComplexMatrix> es(companion, false);
  if (es.info() != Eigen::Success) throw Error("companion_roots: eigensolver did not converge");

  std::vector<cplx> roots(n);
  for (std::size_t k = 0; k < n; ++k) roots[k] = es.eigenvalues()(k);

  // Single-linkage clusters; a cluster whose spread is what rounding would
  // do to an exact m-fold root is collapsed onto its centroid.
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<int> label(n, -1);
  int clusters = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (label[k] >= 0) continue;
    label[k] = clusters;
    std::vector<std::size_t> stack{k};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (label[b] < 0 && std::abs(roots[a] - roots[b]) <= 1e-2 * (1.0 + std::abs(roots[a]))) {
          label[b] = clusters;
          stack.push_back(b);
        }
      }
    }
    ++clusters;
  }
  for (int c = 0; c < clusters; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < n; ++k) {
      if (label[k] == c) members.push_back(k);
    }
    const std::size_t m = members.size();
    if (m < 2) continue;
    cplx mu = 0.0;
    for (std::size_t k : members) mu += roots[k];
    mu /= static_cast<double>(m);
    double spread = 0.0;
    for (std::size_t k : members) spread = std::max(spread, std::abs(roots[k] - mu));
    double kappa = std::pow(std::abs(mu), static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
      kappa += std::abs(coeffs[k]) * std::pow(std::abs(mu), static_cast<double>(k));
    }
    const double lead = taylor_coefficient(coeffs, mu, m);
    if (lead <= 0.0) continue;
    const double expected = 10.0 * std::pow(eps * kappa / lead, 1.0 / static_cast<double>(m));
    if (spread <= expected) {
      for (std::size_t k : members) roots[k] = mu;
    }
  }
  return roots;
}

double numerical_radius(const ComplexMatrix& a, int angles) {
  require_square(a, "numerical_radius");
  if (angles < 16) throw Error("numerical_radius: need at least 16 angles");
  double best = 0.0;
  const ComplexMatrix adj = a.adjoint();
  for (int k = 0; k < angles; ++k) {
    const double t = 2.0 * std::numbers::pi * k / angles;
    const cplx w = std::polar(1.0, t);
    const ComplexMatrix h = (w * a + std::conj(w) * adj) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues()(es.eigenvalues().size() - 1));
  }
  return best;
}

}  // namespace symdisc
