#include "symdisc/tuples.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace symdisc {

OperatorTuple::OperatorTuple(std::vector<ComplexMatrix> s, ComplexMatrix p, double commute_rel) {
  if (s.empty()) throw Error("OperatorTuple: need n >= 2 (at least one S)");
  members_ = std::move(s);
  members_.push_back(std::move(p));
  const Eigen::Index d = members_.front().rows();
  for (std::size_t k = 0; k < members_.size(); ++k) {
    require_square(members_[k], "OperatorTuple member " + std::to_string(k + 1));
    if (members_[k].rows() != d) {
      std::ostringstream os;
      os << "OperatorTuple: member " << k + 1 << " is " << members_[k].rows() << "x"
         << members_[k].cols() << ", expected " << d << "x" << d;
      throw Error(os.str());
    }
    max_norm_ = std::max(max_norm_, operator_norm(members_[k]));
  }
  for (std::size_t a = 0; a < members_.size(); ++a) {
    for (std::size_t b = a + 1; b < members_.size(); ++b) {
      commute_residual_ =
          std::max(commute_residual_, commutator_norm(members_[a], members_[b]));
    }
  }
  commute_tol_ = commute_rel * std::max(1.0, max_norm_ * max_norm_);
}

OperatorTuple OperatorTuple::from_members(std::vector<ComplexMatrix> members, double commute_rel) {
  if (members.size() < 2) throw Error("OperatorTuple: need n >= 2 members");
  ComplexMatrix p = std::move(members.back());
  members.pop_back();
  return OperatorTuple(std::move(members), std::move(p), commute_rel);
}

OperatorTuple OperatorTuple::scalar(const GammaPoint& pt) {
  std::vector<ComplexMatrix> m;
  for (const cplx c : pt.coords()) m.push_back(ComplexMatrix::Constant(1, 1, c));
  return from_members(std::move(m));
}

const ComplexMatrix& OperatorTuple::S(int i) const {
  if (i < 1 || i > n() - 1) {
    std::ostringstream os;
    os << "OperatorTuple::S: index " << i << " out of range 1.." << n() - 1;
    throw Error(os.str());
  }
  return members_[i - 1];
}

OperatorTuple OperatorTuple::scaled(cplx alpha) const {
  std::vector<ComplexMatrix> m;
  cplx a = 1.0;
  for (const auto& x : members_) {
    a *= alpha;
    m.push_back(a * x);
  }
  return from_members(std::move(m), commute_tol_ / std::max(1.0, max_norm_ * max_norm_));
}

GammaPoint JointSpectrum::point(std::size_t k) const {
  return GammaPoint::from_coords(points.at(k));
}

double JointSpectrum::max_residual() const {
  double r = 0.0;
  for (double x : residuals) r = std::max(r, x);
  return r;
}

std::string to_string(CertKind k) {
  switch (k) {
    case CertKind::GammaUnitary: return "GammaUnitary";
    case CertKind::GammaIsometry: return "GammaIsometry";
    case CertKind::GammaContractionConsistent: return "GammaContractionConsistent";
    case CertKind::Violation: return "Violation";
  }
  return "?";
}

bool CertReport::passed(const std::string& name) const { return check(name).passed; }

const Check& CertReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error("CertReport: no check named " + name);
}

bool CertReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

Check le_check(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, threshold - value, value <= threshold};
}

void require_commuting(const OperatorTuple& t, const char* what) {
  if (!t.is_commuting()) {
    std::ostringstream os;
    os << what << ": tuple does not commute (residual " << t.commute_residual()
       << " > tolerance " << t.commute_tolerance() << ")";
    throw Error(os.str());
  }
}

}  // namespace

ComplexMatrix phi_operator(int i, const OperatorTuple& t, cplx alpha) {
  const int n = t.n();
  if (i < 1 || i > n - 1) {
    std::ostringstream os;
    os << "phi_operator: index " << i << " out of range 1.." << n - 1;
    throw Error(os.str());
  }
  if (std::abs(alpha) > 1.0 + 1e-12) throw Error("phi_operator: |alpha| > 1");
  const cplx ai = std::pow(alpha, i);
  const cplx an = std::pow(alpha, n - i);
  const cplx ap = std::pow(alpha, n);
  const ComplexMatrix si = ai * t.S(i);
  const ComplexMatrix sn = an * t.S(n - i);
  const ComplexMatrix p = ap * t.P();
  const double nn = n;
  const Eigen::Index d = t.dim();
  const ComplexMatrix b = si - sn.adjoint() * p;
  const ComplexMatrix phi = nn * nn * (ComplexMatrix::Identity(d, d) - p.adjoint() * p) +
                            (si.adjoint() * si - sn.adjoint() * sn) - nn * b - nn * b.adjoint();
  // Frobenius norms: cheap upper bounds are enough for a relative residual.
  const double np = p.norm();
  const double ns = si.norm();
  const double nsn = sn.norm();
  const double scale = nn * nn * (std::sqrt(static_cast<double>(d)) + np * np) + ns * ns +
                       nsn * nsn + 2.0 * nn * (ns + nsn * np);
  if ((phi - phi.adjoint()).norm() > 1e-12 * scale) {
    throw Error("phi_operator: Hermitian residual exceeds 1e-12 relative");
  }
  return (phi + phi.adjoint()) * 0.5;
}

CertReport pencil_positivity(const OperatorTuple& t, const DiskGrid& grid, const Tolerance& tol) {
  require_commuting(t, "pencil_positivity");
  const int n = t.n();
  CertReport rep;
  rep.tol = tol;
  std::vector<double> worst(n - 1, std::numeric_limits<double>::infinity());
  std::vector<cplx> where(n - 1, 0.0);
  for (const cplx alpha : grid.points()) {
    for (int i = 1; i <= n - 1; ++i) {
      const double lam = min_hermitian_eigenvalue(phi_operator(i, t, alpha));
      if (lam < worst[i - 1]) {
        worst[i - 1] = lam;
        where[i - 1] = alpha;
      }
    }
  }
  int bad = 0;
  for (int i = 1; i <= n - 1; ++i) {
    Check c{"phi_" + std::to_string(i) + "_min_eigenvalue", worst[i - 1], -tol.abs_eps,
            worst[i - 1] + tol.abs_eps, worst[i - 1] >= -tol.abs_eps};
    if (!c.passed) {
      if (!rep.witness || worst[i - 1] < rep.witness->value) {
        rep.witness = Witness{"most negative pencil eigenvalue on the alpha grid", i,
                              where[i - 1], worst[i - 1], std::nullopt};
      }
      ++bad;
    }
    rep.checks.push_back(std::move(c));
  }
  rep.kind = bad ? CertKind::Violation : CertKind::GammaContractionConsistent;
  std::ostringstream os;
  os << "alpha grid " << grid.radii << " radii x " << grid.angles
     << " angles; pencil positivity is necessary, not sufficient";
  rep.notes.push_back(os.str());
  if (n >= 4) {
    rep.notes.push_back(
        "n >= 4: positivity is not necessary either; the scalar point with all roots 0.99 in "
        "G_4 already has phi_2(alpha = 1) < 0, so a violation here does not rule out a "
        "Gamma_n-contraction");
  }
  return rep;
}

namespace {

class Deflation {
 public:
  Deflation(double scale, std::uint64_t seed) : scale_(std::max(scale, 1e-300)), rng_(seed) {}

  // Unit vector common to all of `mats` (approximately an eigenvector of
  // each).
  ComplexVector common_eigenvector(const std::vector<ComplexMatrix>& mats) {
    const Eigen::Index d = mats.front().rows();
    ComplexMatrix basis = ComplexMatrix::Identity(d, d);
    for (int guard = 0; guard < 64; ++guard) {
      const Eigen::Index r = basis.cols();
      if (r == 1) return basis.col(0);
      std::vector<ComplexMatrix> comp;
      bool all_scalar = true;
      for (const auto& m : mats) {
        comp.push_back(basis.adjoint() * m * basis);
        const cplx mean = comp.back().trace() / static_cast<double>(r);
        const ComplexMatrix dev = comp.back() - mean * ComplexMatrix::Identity(r, r);
        if (dev.norm() > 1e-12 * scale_) all_scalar = false;
      }
      if (all_scalar) return basis.col(0);

      ComplexMatrix c = ComplexMatrix::Zero(r, r);
      for (const auto& m : comp) c += gaussian() * m;
      const cplx lambda = clustered_eigenvalue(c);
      Eigen::JacobiSVD<ComplexMatrix> svd(c - lambda * ComplexMatrix::Identity(r, r),
                                          Eigen::ComputeFullV);
      const Eigen::VectorXd sv = svd.singularValues();
      const double thr = 1e-7 * std::max(1.0, sv(0));
      Eigen::Index keep = 0;
      for (Eigen::Index k = 0; k < r; ++k) {
        if (sv(k) <= thr) ++keep;
      }
      if (keep == 0) keep = 1;
      if (keep == r) return basis.col(0);
      basis = basis * svd.matrixV().rightCols(keep);
    }
    return basis.col(0);
  }

 private:
  cplx gaussian() {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng_);
    const double im = g(rng_);
    return {re, im};
  }

  // One eigenvalue of c, averaged over its numerical cluster. The mean of
  // a perturbed multiple eigenvalue is far more accurate than any member.
  cplx clustered_eigenvalue(const ComplexMatrix& c) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(c, false);
    if (es.info() != Eigen::Success) throw Error("joint_eigenvalues: eigensolver failed");
    const auto& ev = es.eigenvalues();
    const double radius = 1e-6 * std::max(1.0, c.norm());
    const cplx seed = ev(0);
    cplx sum = 0.0;
    int count = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (std::abs(ev(k) - seed) <= radius) {
        sum += ev(k);
        ++count;
      }
    }
    return sum / static_cast<double>(count);
  }

  double scale_;
  std::mt19937_64 rng_;
};

double certified_residual(const std::vector<ComplexMatrix>& mats, const std::vector<cplx>& lambda) {
  const Eigen::Index d = mats.front().rows();
  const Eigen::Index k = static_cast<Eigen::Index>(mats.size());
  ComplexMatrix stacked(k * d, d);
  for (Eigen::Index j = 0; j < k; ++j) {
    stacked.middleRows(j * d, d) = mats[j] - lambda[j] * ComplexMatrix::Identity(d, d);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeThinV);
  const ComplexVector v = svd.matrixV().col(d - 1);
  double r = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    r = std::max(r, (stacked.middleRows(j * d, d) * v).norm());
  }
  return r;
}

}  // namespace

JointSpectrum joint_eigenvalues(const OperatorTuple& t, std::uint64_t seed) {
  require_commuting(t, "joint_eigenvalues");
  JointSpectrum js;
  std::vector<ComplexMatrix> cur = t.members();
  Deflation defl(t.max_norm(), seed);
  while (true) {
    const Eigen::Index d = cur.front().rows();
    std::vector<cplx> lambda;
    if (d == 1) {
      for (const auto& m : cur) lambda.push_back(m(0, 0));
      js.points.push_back(lambda);
      break;
    }
    const ComplexVector v = defl.common_eigenvector(cur);
    for (const auto& m : cur) lambda.push_back(v.dot(m * v));
    js.points.push_back(lambda);

    // Unitary whose first column is v (up to phase); compressing onto the
    // complement keeps the remaining joint eigenvalues.
    const ComplexMatrix vm = v;
    Eigen::HouseholderQR<ComplexMatrix> qr(vm);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    for (auto& m : cur) {
      const ComplexMatrix rot = q.adjoint() * m * q;
      m = rot.bottomRightCorner(d - 1, d - 1);
    }
  }
  for (const auto& lambda : js.points) {
    js.residuals.push_back(certified_residual(t.members(), lambda));
  }
  return js;
}

CertReport gamma_unitary_check(const OperatorTuple& t, const Tolerance& tol) {
  require_commuting(t, "gamma_unitary_check");
  const int n = t.n();
  const Eigen::Index d = t.dim();
  CertReport rep;
  rep.tol = tol;

  for (int k = 0; k < n; ++k) {
    const double nm = operator_norm(t.member(k));
    const std::string name = k == n - 1 ? "normal_P" : "normal_S" + std::to_string(k + 1);
    rep.checks.push_back(le_check(name, normality_defect(t.member(k)), tol.slack(nm * nm)));
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const double unit = std::max(operator_norm(t.P().adjoint() * t.P() - id),
                               operator_norm(t.P() * t.P().adjoint() - id));
  rep.checks.push_back(le_check("P_unitary", unit, tol.slack(1.0)));
  for (int i = 1; i <= n - 1; ++i) {
    const double v = operator_norm(t.S(i) - t.S(n - i).adjoint() * t.P());
    const double scale = operator_norm(t.S(i)) + operator_norm(t.S(n - i)) * operator_norm(t.P());
    rep.checks.push_back(le_check("S" + std::to_string(i) + "_relation", v, tol.slack(scale)));
  }

  const JointSpectrum js = joint_eigenvalues(t);
  int off = 0;
  int first_off = -1;
  for (std::size_t k = 0; k < js.points.size(); ++k) {
    if (!in_distinguished_boundary(js.point(k)).member) {
      if (first_off < 0) first_off = static_cast<int>(k);
      ++off;
    }
  }
  rep.checks.push_back(le_check("joint_spectrum_on_distinguished_boundary", off, 0.0));
  rep.checks.push_back(le_check("joint_eigen_residual", js.max_residual(),
                                1e-8 * std::max(1.0, t.max_norm())));

  if (rep.all_passed()) {
    rep.kind = CertKind::GammaUnitary;
  } else {
    rep.kind = CertKind::Violation;
    for (const auto& c : rep.checks) {
      if (!c.passed) {
        Witness w{"failed check " + c.name, 0, 0.0, c.value, std::nullopt};
        if (c.name == "joint_spectrum_on_distinguished_boundary") w.index = first_off;
        rep.witness = w;
        break;
      }
    }
  }
  return rep;
}

CertReport gamma_isometry_check(const OperatorTuple& t, const IsometryOptions& opts) {
  require_commuting(t, "gamma_isometry_check");
  if (opts.beta_grid < 8) throw Error("gamma_isometry_check: beta grid below floor 8");
  const int n = t.n();
  const Eigen::Index d = t.dim();
  const Tolerance& tol = opts.tol;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  CertReport rep;
  rep.tol = tol;

  rep.checks.push_back(
      le_check("P_isometry", operator_norm(t.P().adjoint() * t.P() - id), tol.slack(1.0)));
  for (int i = 1; i <= n - 1; ++i) {
    const double v = operator_norm(t.S(i) - t.S(n - i).adjoint() * t.P());
    const double scale = operator_norm(t.S(i)) + operator_norm(t.S(n - i)) * operator_norm(t.P());
    rep.checks.push_back(le_check("S" + std::to_string(i) + "_relation", v, tol.slack(scale)));
  }

  const JointSpectrum js = joint_eigenvalues(t);
  std::vector<double> radius(n - 1, 0.0);
  for (const auto& pt : js.points) {
    for (int i = 1; i <= n - 1; ++i) radius[i - 1] = std::max(radius[i - 1], std::abs(pt[i - 1]));
  }

  std::optional<Witness> singular;
  double worst_m = 0.0;
  cplx worst_m_beta = 0.0;
  int worst_m_index = 0;
  double worst_phi = 0.0;
  cplx worst_phi_beta = 0.0;
  int worst_phi_index = 0;
  bool any_m = false;
  for (int k = 0; k < opts.beta_grid; ++k) {
    const cplx beta = std::polar(1.0, 2.0 * std::numbers::pi * k / opts.beta_grid);
    for (int i = 1; i <= n - 1; ++i) {
      if (radius[i - 1] < n) {
        any_m = true;
        const ComplexMatrix a = static_cast<double>(n) * id - beta * t.S(i);
        Eigen::PartialPivLU<ComplexMatrix> lu(a);
        if (lu.rcond() < 1e-14) {
          if (!singular) {
            singular = Witness{"n - beta S_i is singular", i, beta, lu.rcond(), std::nullopt};
          }
          continue;
        }
        const ComplexMatrix m =
            (static_cast<double>(n) * beta * t.P() - t.S(n - i)) * lu.inverse();
        const double v = operator_norm(m.adjoint() * m - id);
        if (v > worst_m) {
          worst_m = v;
          worst_m_beta = beta;
          worst_m_index = i;
        }
      }
      const double ph = operator_norm(phi_operator(i, t, beta));
      if (ph > worst_phi) {
        worst_phi = ph;
        worst_phi_beta = beta;
        worst_phi_index = i;
      }
    }
  }
  for (int i = 1; i <= n - 1; ++i) {
    if (radius[i - 1] >= n) {
      std::ostringstream os;
      os << "r(S_" << i << ") = " << radius[i - 1] << " >= n; M(beta) check skipped for i = " << i;
      rep.notes.push_back(os.str());
    }
  }
  if (any_m) {
    rep.checks.push_back(le_check("M_beta_isometry", worst_m, tol.slack(1.0)));
  }
  rep.checks.push_back(
      le_check("phi_vanishes_on_circle", worst_phi, tol.rel_eps * static_cast<double>(n * n)));
  if (singular) {
    rep.checks.push_back(le_check("n_minus_beta_S_invertible", 1.0, 0.0));
  }
  {
    std::ostringstream os;
    os << "beta grid " << opts.beta_grid << " points on the unit circle";
    rep.notes.push_back(os.str());
  }

  if (rep.all_passed()) {
    rep.kind = CertKind::GammaIsometry;
  } else {
    rep.kind = CertKind::Violation;
    for (const auto& c : rep.checks) {
      if (c.passed) continue;
      if (c.name == "M_beta_isometry") {
        rep.witness = Witness{"M(beta) is not an isometry", worst_m_index, worst_m_beta, worst_m,
                              std::nullopt};
      } else if (c.name == "phi_vanishes_on_circle") {
        rep.witness = Witness{"pencil does not vanish at beta", worst_phi_index, worst_phi_beta,
                              worst_phi, std::nullopt};
      } else if (c.name == "n_minus_beta_S_invertible") {
        rep.witness = singular;
      } else {
        rep.witness = Witness{"failed check " + c.name, 0, 0.0, c.value, std::nullopt};
      }
      break;
    }
  }
  return rep;
}

namespace {

// Flattened polynomial for fast scalar evaluation on many points.
class FastPoly {
 public:
  explicit FastPoly(const Polynomial& f) : vars_(f.vars), deg_(f.degree()), coeffs_(f.coeffs) {
    for (const auto& e : f.exps) exps_.insert(exps_.end(), e.begin(), e.end());
    powers_.resize(static_cast<std::size_t>(vars_) * (deg_ + 1));
  }

  double abs_at(const cplx* x) {
    for (int k = 0; k < vars_; ++k) {
      cplx* row = &powers_[static_cast<std::size_t>(k) * (deg_ + 1)];
      row[0] = 1.0;
      for (int j = 1; j <= deg_; ++j) row[j] = row[j - 1] * x[k];
    }
    cplx acc = 0.0;
    const int* e = exps_.data();
    for (std::size_t m = 0; m < coeffs_.size(); ++m, e += vars_) {
      cplx term = coeffs_[m];
      for (int k = 0; k < vars_; ++k) {
        if (e[k]) term *= powers_[static_cast<std::size_t>(k) * (deg_ + 1) + e[k]];
      }
      acc += term;
    }
    return std::abs(acc);
  }

 private:
  int vars_;
  int deg_;
  std::vector<cplx> coeffs_;
  std::vector<int> exps_;
  std::vector<cplx> powers_;
};

// (e_1, ..., e_n) of the unimodular numbers e^{i theta_k}.
void symmetric_on_torus(const std::vector<double>& theta, std::vector<cplx>& e) {
  const std::size_t n = theta.size();
  std::vector<cplx> acc(n + 1, 0.0);
  acc[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z = std::polar(1.0, theta[k]);
    for (std::size_t j = k + 1; j >= 1; --j) acc[j] += z * acc[j - 1];
  }
  e.assign(acc.begin() + 1, acc.end());
}

struct Candidate {
  double value;
  std::vector<double> theta;
};

VonNeumannTrial run_trial(const OperatorTuple& t, const MonomialTable& table, const Polynomial& f,
                          const VonNeumannOptions& opts, const std::vector<GammaPoint>& extra) {
  const int n = t.n();
  VonNeumannTrial out;
  out.norm_ft = operator_norm(table.evaluate(f));
  // Consistent as soon as some point reaches this value.
  const double need = (out.norm_ft - opts.abs_slack) / (1.0 + opts.rel_slack);
  FastPoly fp(f);
  double sup = 0.0;
  auto settle = [&](double v) {
    sup = std::max(sup, v);
    return sup >= need;
  };

  for (const auto& pt : extra) {
    const std::vector<cplx> c = pt.coords();
    if (settle(fp.abs_at(c.data()))) {
      out.sampled_sup = sup;
      out.early_exit = true;
      return out;
    }
  }

  // Nondecreasing index tuples cover the lattice up to permutation, and
  // symmetric functions do not see the order.
  const int g = opts.torus_grid;
  const double step = 2.0 * std::numbers::pi / g;
  std::vector<int> idx(n, 0);
  std::vector<double> theta(n, 0.0);
  std::vector<cplx> e;
  std::vector<Candidate> top;
  const std::size_t keep = static_cast<std::size_t>(std::max(1, opts.refine_starts));
  while (true) {
    for (int k = 0; k < n; ++k) theta[k] = step * idx[k];
    symmetric_on_torus(theta, e);
    const double v = fp.abs_at(e.data());
    if (settle(v)) {
      out.sampled_sup = sup;
      out.early_exit = true;
      return out;
    }
    if (top.size() < keep || v > top.back().value) {
      top.push_back({v, theta});
      std::sort(top.begin(), top.end(),
                [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
      if (top.size() > keep) top.pop_back();
    }
    int k = n - 1;
    while (k >= 0 && idx[k] == g - 1) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[k];
  }

  // Pattern-search ascent from the best lattice points.
  for (auto& cand : top) {
    double h = step / 2.0;
    double best = cand.value;
    std::vector<double> th = cand.theta;
    while (h > 1e-10) {
      bool moved = false;
      for (int k = 0; k < n; ++k) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = th;
          trial[k] += dir * h;
          symmetric_on_torus(trial, e);
          const double v = fp.abs_at(e.data());
          if (v > best) {
            best = v;
            th = std::move(trial);
            moved = true;
            if (settle(v)) {
              out.sampled_sup = sup;
              out.early_exit = true;
              return out;
            }
            break;
          }
        }
      }
      if (!moved) h /= 2.0;
    }
  }
  out.sampled_sup = sup;
  out.consistent = sup >= need;
  return out;
}

std::vector<GammaPoint> spectrum_in_gamma(const OperatorTuple& t) {
  std::vector<GammaPoint> pts;
  const JointSpectrum js = joint_eigenvalues(t);
  for (std::size_t k = 0; k < js.points.size(); ++k) {
    const GammaPoint pt = js.point(k);
    if (in_closed_gamma(pt).member) pts.push_back(pt);
  }
  return pts;
}

void check_vn_options(const VonNeumannOptions& opts) {
  if (opts.degree < 1) throw Error("von_neumann_sample: degree must be >= 1");
  if (opts.trials < 1) throw Error("von_neumann_sample: trials must be >= 1");
  if (opts.torus_grid < 4) throw Error("von_neumann_sample: torus grid below floor 4");
}

}  // namespace

VonNeumannTrial von_neumann_single(const OperatorTuple& t, const Polynomial& f,
                                   const VonNeumannOptions& opts) {
  require_commuting(t, "von_neumann_single");
  if (f.vars != t.n()) throw Error("von_neumann_single: polynomial must have n variables");
  VonNeumannOptions o = opts;
  o.degree = std::max(1, f.degree());
  check_vn_options(o);
  const MonomialTable table(t.members(), o.degree);
  return run_trial(t, table, f, o, spectrum_in_gamma(t));
}

CertReport von_neumann_sample(const OperatorTuple& t, const VonNeumannOptions& opts) {
  require_commuting(t, "von_neumann_sample");
  check_vn_options(opts);
  const MonomialTable table(t.members(), opts.degree);
  const std::vector<GammaPoint> extra = spectrum_in_gamma(t);
  CertReport rep;
  rep.tol = Tolerance{opts.abs_slack, opts.rel_slack};
  int violations = 0;
  int early = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < opts.trials; ++trial) {
    std::mt19937_64 rng(sub_seed(opts.seed, static_cast<std::uint64_t>(trial)));
    const Polynomial f = random_polynomial(t.n(), opts.degree, rng);
    const VonNeumannTrial r = run_trial(t, table, f, opts, extra);
    if (r.early_exit) ++early;
    if (r.sampled_sup > 0.0) worst_ratio = std::max(worst_ratio, r.norm_ft / r.sampled_sup);
    if (!r.consistent) {
      if (violations == 0) {
        rep.witness = Witness{"||f(T)|| exceeds the sampled sup of |f|", trial, 0.0, r.norm_ft, f};
      }
      ++violations;
    }
  }
  rep.checks.push_back(le_check("violating_trials", violations, 0.0));
  rep.kind = violations ? CertKind::Violation : CertKind::GammaContractionConsistent;
  std::ostringstream os;
  os << opts.trials << " random polynomials of degree <= " << opts.degree << ", torus grid "
     << opts.torus_grid << ", " << early << " settled before the full lattice scan; "
     << "max ||f(T)|| / sampled sup at exit " << worst_ratio;
  rep.notes.push_back(os.str());
  rep.notes.push_back(
      "falsifier only: the sampled sup under-estimates the true sup, so a consistent verdict is "
      "evidence, not proof");
  if (!extra.empty()) {
    rep.notes.push_back(std::to_string(extra.size()) +
                        " joint eigenvalues certified in the closed set were added as sample points");
  }
  return rep;
}

}  // namespace symdisc
