#pragma once

// Dense complex linear algebra kernels shared by every other module.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace symdisc {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised for malformed input and for failed numerical preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comparison slack. `slack(scale)` is the allowed deviation for a quantity
/// whose natural magnitude is `scale`.
struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-8;

  double slack(double scale) const { return abs_eps + rel_eps * scale; }
};

/// Throws unless `a` has at least one row and column and only finite entries.
void require_well_formed(const ComplexMatrix& a, const std::string& what = "matrix");
void require_square(const ComplexMatrix& a, const std::string& what = "matrix");

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// ||A - A*|| in the operator norm.
double hermitian_residual(const ComplexMatrix& a);

/// ||AB - BA||.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||A*A - AA*||.
double normality_defect(const ComplexMatrix& a);

struct HermitianEig {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // columns are orthonormal eigenvectors
};

/// Eigendecomposition of a Hermitian matrix. Input whose asymmetry exceeds
/// tol.slack(||A||) is rejected with the asymmetry norm in the message.
HermitianEig hermitian_eig(const ComplexMatrix& a, const Tolerance& tol = {});

/// Smallest eigenvalue of the Hermitian part (A + A*)/2.
double min_hermitian_eigenvalue(const ComplexMatrix& a);

/// Hermitian PSD square root. Eigenvalues in [-abs_eps, 0) are clamped to
/// zero; anything more negative is reported as "not PSD".
ComplexMatrix psd_sqrt(const ComplexMatrix& a, const Tolerance& tol = {});

/// Roots of z^n + c[n-1] z^(n-1) + ... + c[0] (coefficients ascending, the
/// leading 1 implied), computed as companion-matrix eigenvalues. Tight
/// clusters that are numerically a single multiple root are replaced by
/// their centroid.
std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs);

/// Evaluates z^n + c[n-1] z^(n-1) + ... + c[0].
cplx eval_monic(const std::vector<cplx>& coeffs, cplx z);

/// Numerical radius sampled on `angles` equispaced directions:
///   max_k lambda_max((e^{i t_k} A + e^{-i t_k} A*) / 2).
/// This is a lower bound on w(A) that increases towards it as the grid is
/// refined; it is exact for normal and 2x2 nilpotent inputs on any grid that
/// contains the maximizing direction.
double numerical_radius(const ComplexMatrix& a, int angles = 720);

}  // namespace symdisc
