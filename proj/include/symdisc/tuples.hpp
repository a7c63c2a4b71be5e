#pragma once

// Commuting matrix tuples (S_1, ..., S_{n-1}, P): operator pencils, joint
// eigenvalues, unitary / isometry certification and sampled von Neumann
// testing.

#include "symdisc/geometry.hpp"
#include "symdisc/numerics.hpp"
#include "symdisc/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symdisc {

class OperatorTuple {
 public:
  /// Members S_1..S_{n-1} and P. All must be square of the same size.
  /// `commute_rel` scales the commutation tolerance by max(1, max norm^2).
  OperatorTuple(std::vector<ComplexMatrix> s, ComplexMatrix p, double commute_rel = 1e-10);

  /// From the full member list (S_1, ..., S_{n-1}, P).
  static OperatorTuple from_members(std::vector<ComplexMatrix> members,
                                    double commute_rel = 1e-10);
  /// 1x1 tuple at a point.
  static OperatorTuple scalar(const GammaPoint& pt);

  int n() const { return static_cast<int>(members_.size()); }
  Eigen::Index dim() const { return members_.front().rows(); }
  /// S_i for 1 <= i <= n-1.
  const ComplexMatrix& S(int i) const;
  const ComplexMatrix& P() const { return members_.back(); }
  /// 0-based member k (k = n-1 is P).
  const ComplexMatrix& member(int k) const { return members_.at(k); }
  const std::vector<ComplexMatrix>& members() const { return members_; }

  double commute_residual() const { return commute_residual_; }
  double commute_tolerance() const { return commute_tol_; }
  bool is_commuting() const { return commute_residual_ <= commute_tol_; }
  double max_norm() const { return max_norm_; }

  /// (a S_1, a^2 S_2, ..., a^n P).
  OperatorTuple scaled(cplx alpha) const;

 private:
  std::vector<ComplexMatrix> members_;
  double commute_residual_ = 0.0;
  double commute_tol_ = 0.0;
  double max_norm_ = 0.0;
};

struct JointSpectrum {
  /// Each entry is one joint eigenvalue (lambda_1, ..., lambda_n), listed
  /// with multiplicity; lambda_n is the P-component.
  std::vector<std::vector<cplx>> points;
  /// max_k ||(T_k - lambda_k) v|| for the best common approximate
  /// eigenvector v of each point.
  std::vector<double> residuals;

  GammaPoint point(std::size_t k) const;
  double max_residual() const;
};

enum class CertKind { GammaUnitary, GammaIsometry, GammaContractionConsistent, Violation };

std::string to_string(CertKind k);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  double margin = 0.0;  // threshold - value for "<=" checks
  bool passed = false;
};

struct Witness {
  std::string description;
  int index = 0;            // pencil or coordinate index when relevant
  cplx parameter = 0.0;     // alpha or beta
  double value = 0.0;       // offending quantity
  std::optional<Polynomial> polynomial;
};

struct CertReport {
  CertKind kind = CertKind::Violation;
  std::vector<Check> checks;
  std::optional<Witness> witness;
  std::vector<std::string> notes;
  Tolerance tol{};

  bool passed(const std::string& name) const;
  const Check& check(const std::string& name) const;
  bool all_passed() const;
};

/// The Hermitian pencil Phi_i at (a S_1, ..., a^{n-1} S_{n-1}, a^n P).
ComplexMatrix phi_operator(int i, const OperatorTuple& t, cplx alpha);

CertReport pencil_positivity(const OperatorTuple& t, const DiskGrid& grid = {},
                             const Tolerance& tol = {});

/// Joint eigenvalues by repeated deflation of common eigenvectors. The
/// seed drives the random linear combinations only.
JointSpectrum joint_eigenvalues(const OperatorTuple& t, std::uint64_t seed = 7);

/// Checks (a) normality, (b) P unitary, (c) S_i = S_{n-i}^* P, (d) joint
/// eigenvalues on the distinguished boundary.
CertReport gamma_unitary_check(const OperatorTuple& t, const Tolerance& tol = {});

struct IsometryOptions {
  int beta_grid = 256;
  Tolerance tol{};
};

CertReport gamma_isometry_check(const OperatorTuple& t, const IsometryOptions& opts = {});

struct VonNeumannOptions {
  int degree = 3;
  int trials = 100;
  int torus_grid = 48;
  std::uint64_t seed = 42;
  double rel_slack = 1e-8;
  double abs_slack = 1e-10;
  /// Lattice maxima refined by local ascent when no lattice point settles
  /// the comparison.
  int refine_starts = 8;
};

/// Falsifier only: compares ||f(T)|| with a sampled (hence under-estimated)
/// sup of |f| over the symmetrized polydisc for random polynomials f.
CertReport von_neumann_sample(const OperatorTuple& t, const VonNeumannOptions& opts = {});

struct VonNeumannTrial {
  bool consistent = true;
  double norm_ft = 0.0;
  /// Largest |f| found at sampled points of the closed set. With early exit
  /// this is only as large as needed to settle the comparison.
  double sampled_sup = 0.0;
  bool early_exit = false;
};

/// The same comparison for one given polynomial in n variables.
VonNeumannTrial von_neumann_single(const OperatorTuple& t, const Polynomial& f,
                                   const VonNeumannOptions& opts = {});

}  // namespace symdisc
