#include "symdisc/fundamental.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace symdisc {

ComplexMatrix DefectSpace::projection() const { return basis * basis.adjoint(); }

DefectSpace defect(const ComplexMatrix& p, const Tolerance& tol, double rank_tol) {
  require_square(p, "defect");
  const double np = operator_norm(p);
  if (np > 1.0 + tol.abs_eps) {
    std::ostringstream os;
    os << "defect: P is not a contraction (||P|| = " << np << ")";
    throw Error(os.str());
  }
  const Eigen::Index d = p.rows();
  const ComplexMatrix a = ComplexMatrix::Identity(d, d) - p.adjoint() * p;
  const HermitianEig eig = hermitian_eig(a, tol);
  // eigenvalues at rounding level are zero; their square roots would not be
  const double floor = 16.0 * d * std::numeric_limits<double>::epsilon();
  Eigen::VectorXd roots(d);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double lam = eig.values(k);
    if (lam < -tol.abs_eps) {
      std::ostringstream os;
      os << "defect: I - P*P is not PSD (eigenvalue " << lam << ")";
      throw Error(os.str());
    }
    roots(k) = lam > floor ? std::sqrt(lam) : 0.0;
    if (roots(k) > rank_tol) cols.push_back(k);
  }
  DefectSpace ds;
  ComplexMatrix dm = eig.vectors * roots.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  ds.D = (dm + dm.adjoint()) * 0.5;
  ds.rank = static_cast<Eigen::Index>(cols.size());
  ds.basis.resize(d, ds.rank);
  for (Eigen::Index k = 0; k < ds.rank; ++k) ds.basis.col(k) = eig.vectors.col(cols[k]);
  return ds;
}

DefectSpace rotate_basis(const DefectSpace& ds, const ComplexMatrix& unitary) {
  if (unitary.rows() != ds.rank || unitary.cols() != ds.rank) {
    throw Error("rotate_basis: unitary must be rank x rank");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(ds.rank, ds.rank);
  if (ds.rank > 0 && operator_norm(unitary.adjoint() * unitary - id) > 1e-10) {
    throw Error("rotate_basis: matrix is not unitary");
  }
  DefectSpace out = ds;
  out.basis = ds.basis * unitary;
  return out;
}

const ComplexMatrix& FundamentalTuple::f(int i) const {
  if (i < 1 || i > n - 1) {
    std::ostringstream os;
    os << "FundamentalTuple::f: index " << i << " out of range 1.." << n - 1;
    throw Error(os.str());
  }
  return F[i - 1];
}

ComplexMatrix FundamentalTuple::lift(int i) const {
  return space.basis * f(i) * space.basis.adjoint();
}

FundamentalTuple solve_fundamental(const OperatorTuple& t, const SolveOptions& opts) {
  return solve_fundamental(t, defect(t.P(), opts.tol, opts.rank_tol), opts);
}

FundamentalTuple solve_fundamental(const OperatorTuple& t, const DefectSpace& space,
                                   const SolveOptions& opts) {
  if (!t.is_commuting()) throw Error("solve_fundamental: tuple does not commute");
  const int n = t.n();
  const Eigen::Index r = space.rank;
  const double tol = opts.solver_rel * std::max(1.0, t.max_norm() * t.max_norm());
  FundamentalTuple ft;
  ft.n = n;
  ft.space = space;

  const ComplexMatrix& b = space.basis;
  const ComplexMatrix proj = space.projection();
  // D restricted to its range, in the basis: Hermitian positive definite.
  ComplexMatrix dr;
  Eigen::LDLT<ComplexMatrix> ldlt;
  if (r > 0) {
    dr = b.adjoint() * space.D * b;
    dr = (dr + dr.adjoint()) * 0.5;
    ldlt.compute(dr);
    if (ldlt.info() != Eigen::Success) throw Error("solve_fundamental: defect block is singular");
  }

  for (int i = 1; i <= n - 1; ++i) {
    const ComplexMatrix rhs = t.S(i) - t.S(n - i).adjoint() * t.P();
    const double outside = r > 0 ? operator_norm(rhs - proj * rhs * proj) : operator_norm(rhs);
    ft.consistency.push_back(outside);
    if (outside > tol) {
      std::ostringstream os;
      if (r == 0) {
        os << "solve_fundamental: defect space is zero but S_" << i << " - S_" << n - i
           << "^* P has norm " << outside;
      } else {
        os << "solve_fundamental: inconsistent equation for i = " << i
           << " (component outside the defect space " << outside << " > " << tol << ")";
      }
      throw InconsistentEquation(os.str());
    }
    if (r == 0) {
      ft.F.emplace_back(0, 0);
      ft.residuals.push_back(outside);
      continue;
    }
    // dr G dr = B^* rhs B
    const ComplexMatrix c = b.adjoint() * rhs * b;
    const ComplexMatrix x = ldlt.solve(c);                       // dr^{-1} c
    const ComplexMatrix g = ldlt.solve(x.adjoint()).adjoint();   // x dr^{-1}
    ft.F.push_back(g);
    const ComplexMatrix lifted = b * g * b.adjoint();
    ft.residuals.push_back(operator_norm(rhs - space.D * lifted * space.D));
    if (ft.residuals.back() > tol) {
      std::ostringstream os;
      os << "solve_fundamental: residual " << ft.residuals.back() << " for i = " << i
         << " exceeds " << tol;
      throw Error(os.str());
    }
  }
  return ft;
}

RadiusCheck radius_bound_check(FundamentalTuple& ft, int z_grid, int angles,
                               const Tolerance& tol) {
  if (z_grid < 1) throw Error("radius_bound_check: z grid must be positive");
  const int n = ft.n;
  RadiusCheck rc;
  rc.worst = std::numeric_limits<double>::infinity();
  ft.radius_margins.assign(n - 1, std::numeric_limits<double>::infinity());
  if (ft.space.rank == 0) {
    ft.radius_margins.assign(n - 1, static_cast<double>(n));
    rc.margins = ft.radius_margins;
    rc.worst = n;
    return rc;
  }
  for (int i = 1; i <= n - 1; ++i) {
    for (int k = 0; k < z_grid; ++k) {
      const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / z_grid);
      const double w = numerical_radius(ft.f(i) + z * ft.f(n - i), angles);
      ft.radius_margins[i - 1] = std::min(ft.radius_margins[i - 1], n - w);
    }
    rc.worst = std::min(rc.worst, ft.radius_margins[i - 1]);
  }
  rc.margins = ft.radius_margins;
  rc.passed = rc.worst >= -tol.abs_eps;
  return rc;
}

ComplexMatrix self_commutator(const ComplexMatrix& a) {
  return a.adjoint() * a - a * a.adjoint();
}

AlmostNormalCheck almost_normal_check(const FundamentalTuple& ft, const Tolerance& tol) {
  AlmostNormalCheck out;
  for (int i = 1; i <= ft.n / 2; ++i) {
    if (ft.space.rank == 0) {
      out.defect_norms.push_back(0.0);
      continue;
    }
    const ComplexMatrix diff = self_commutator(ft.f(i)) - self_commutator(ft.f(ft.n - i));
    const double v = operator_norm(diff);
    out.defect_norms.push_back(v);
    const double scale = std::max(operator_norm(ft.f(i)), operator_norm(ft.f(ft.n - i)));
    if (v > tol.slack(scale * scale)) out.is_almost_normal = false;
  }
  return out;
}

}  // namespace symdisc
