#pragma once

// Defect operator D_P = (I - P*P)^{1/2}, the fundamental operators F_i on its
// range solving S_i - S_{n-i}^* P = D_P F_i D_P, and the checks built on
// them.

#include "symdisc/numerics.hpp"
#include "symdisc/tuples.hpp"

#include <vector>

namespace symdisc {

/// S_i - S_{n-i}^* P has a component outside range(D) (x) range(D), so no
/// F_i exists and the tuple fails a necessary condition.
class InconsistentEquation : public Error {
 public:
  using Error::Error;
};

struct DefectSpace {
  ComplexMatrix D;      // dim x dim, Hermitian PSD
  ComplexMatrix basis;  // dim x rank, orthonormal columns spanning range(D)
  Eigen::Index rank = 0;

  /// Orthogonal projection onto range(D).
  ComplexMatrix projection() const;
};

/// Throws "not a contraction" when ||P|| > 1 + tol.abs_eps.
DefectSpace defect(const ComplexMatrix& p, const Tolerance& tol = {}, double rank_tol = 1e-9);

/// Same defect space with basis columns mixed by a rank x rank unitary.
DefectSpace rotate_basis(const DefectSpace& ds, const ComplexMatrix& unitary);

struct FundamentalTuple {
  int n = 0;
  DefectSpace space;
  std::vector<ComplexMatrix> F;  // F_1..F_{n-1}, each rank x rank
  /// ||S_i - S_{n-i}^* P - D F^_i D|| with F^_i = basis F_i basis^*.
  std::vector<double> residuals;
  /// ||rhs - Pi rhs Pi||, the part of the right-hand side that no F can
  /// reach.
  std::vector<double> consistency;
  /// n - max_z w(F_i + z F_{n-i}), filled in by radius_bound_check.
  std::vector<double> radius_margins;

  /// F_i for 1 <= i <= n-1.
  const ComplexMatrix& f(int i) const;
  /// F_i lifted to the ambient space.
  ComplexMatrix lift(int i) const;
};

struct SolveOptions {
  Tolerance tol{};
  double rank_tol = 1e-9;
  /// Relative solver tolerance; scaled by max(1, max norm^2).
  double solver_rel = 1e-8;
};

FundamentalTuple solve_fundamental(const OperatorTuple& t, const SolveOptions& opts = {});
/// Solve with a caller-supplied defect space (e.g. a rotated basis).
FundamentalTuple solve_fundamental(const OperatorTuple& t, const DefectSpace& space,
                                   const SolveOptions& opts = {});

struct RadiusCheck {
  bool passed = true;
  double worst = 0.0;              // smallest margin n - w over all i and z
  std::vector<double> margins;     // per i
};

/// w(F_i + z F_{n-i}) <= n + abs_eps on z_grid points of the unit circle.
/// Also stores the margins in ft.radius_margins.
RadiusCheck radius_bound_check(FundamentalTuple& ft, int z_grid = 64, int angles = 720,
                               const Tolerance& tol = {});

struct AlmostNormalCheck {
  bool is_almost_normal = true;
  /// ||[F_i^*, F_i] - [F_{n-i}^*, F_{n-i}]|| for i = 1..floor(n/2).
  std::vector<double> defect_norms;
};

AlmostNormalCheck almost_normal_check(const FundamentalTuple& ft, const Tolerance& tol = {});

/// [A^*, A] = A^* A - A A^*.
ComplexMatrix self_commutator(const ComplexMatrix& a);

}  // namespace symdisc
