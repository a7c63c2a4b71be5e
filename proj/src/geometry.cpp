#include "symdisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace symdisc {

GammaPoint::GammaPoint(std::vector<cplx> s, cplx p) : s_(std::move(s)), p_(p) {
  auto finite = [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  if (!finite(p_) || !std::all_of(s_.begin(), s_.end(), finite)) {
    throw Error("GammaPoint: non-finite coordinate");
  }
}

GammaPoint GammaPoint::from_coords(std::span<const cplx> coords) {
  if (coords.empty()) throw Error("GammaPoint: empty coordinate list");
  return GammaPoint(std::vector<cplx>(coords.begin(), coords.end() - 1), coords.back());
}

GammaPoint GammaPoint::origin(int n) {
  if (n < 1) throw Error("GammaPoint: n must be positive");
  return GammaPoint(std::vector<cplx>(n - 1, 0.0), 0.0);
}

cplx GammaPoint::s(int i) const {
  if (i < 1 || i > n() - 1) {
    std::ostringstream os;
    os << "GammaPoint::s: index " << i << " out of range 1.." << n() - 1;
    throw Error(os.str());
  }
  return s_[i - 1];
}

std::vector<cplx> GammaPoint::coords() const {
  std::vector<cplx> c = s_;
  c.push_back(p_);
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InteriorG: return "InteriorG";
    case Verdict::BoundaryGamma_b: return "BoundaryGamma_b";
    case Verdict::GammaNotInterior: return "GammaNotInterior";
    case Verdict::Outside: return "Outside";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(PointSet s) {
  switch (s) {
    case PointSet::OpenG: return "G";
    case PointSet::ClosedGamma: return "Gamma";
    case PointSet::DistinguishedBoundary: return "bGamma";
  }
  return "?";
}

std::vector<cplx> elementary_symmetric(std::span<const cplx> z) {
  std::vector<cplx> e(z.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (std::size_t j = k + 1; j >= 1; --j) e[j] += z[k] * e[j - 1];
  }
  return e;
}

GammaPoint symmetrize(std::span<const cplx> z) {
  if (z.size() < 2) throw Error("symmetrize: need n >= 2 variables");
  // Canonical order makes the floating-point result permutation invariant.
  std::vector<cplx> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<cplx> e = elementary_symmetric(sorted);
  const cplx p = e.back();
  e.pop_back();
  e.erase(e.begin());
  return GammaPoint(std::move(e), p);
}

std::vector<cplx> characteristic_coeffs(const GammaPoint& pt) {
  const int n = pt.n();
  const std::vector<cplx> c = pt.coords();  // e_1..e_n
  std::vector<cplx> out(n);
  for (int k = 0; k < n; ++k) {
    const int j = n - k;  // coefficient of z^k is (-1)^j e_j
    out[k] = (j % 2 == 0 ? 1.0 : -1.0) * c[j - 1];
  }
  return out;
}

OracleResult root_oracle(const GammaPoint& pt) {
  OracleResult r;
  r.roots = companion_roots(characteristic_coeffs(pt));
  r.max_modulus = 0.0;
  r.min_modulus = std::numeric_limits<double>::infinity();
  for (const cplx& z : r.roots) {
    r.max_modulus = std::max(r.max_modulus, std::abs(z));
    r.min_modulus = std::min(r.min_modulus, std::abs(z));
  }
  return r;
}

Verdict oracle_classify(const OracleResult& oracle, double band) {
  if (oracle.max_modulus < 1.0 - band) return Verdict::InteriorG;
  if (oracle.max_modulus > 1.0 + band) return Verdict::Outside;
  if (oracle.min_modulus >= 1.0 - band) return Verdict::BoundaryGamma_b;
  return Verdict::GammaNotInterior;
}

GammaPoint scaled_point(const GammaPoint& pt, cplx alpha) {
  const int n = pt.n();
  std::vector<cplx> s(n - 1);
  cplx a = 1.0;
  for (int i = 1; i < n; ++i) {
    a *= alpha;
    s[i - 1] = a * pt.s(i);
  }
  return GammaPoint(std::move(s), a * alpha * pt.p());
}

double phi_scalar(int i, const GammaPoint& pt, cplx alpha) {
  const int n = pt.n();
  if (i < 1 || i > n - 1) {
    std::ostringstream os;
    os << "phi_scalar: index " << i << " out of range 1.." << n - 1;
    throw Error(os.str());
  }
  if (std::abs(alpha) > 1.0 + 1e-12) throw Error("phi_scalar: |alpha| > 1");
  const GammaPoint t = scaled_point(pt, alpha);
  const cplx si = t.s(i);
  const cplx sn = t.s(n - i);
  const cplx p = t.p();
  const double nn = n;
  const cplx b = si - std::conj(sn) * p;
  const cplx value = nn * nn * (1.0 - std::norm(p)) + (std::norm(si) - std::norm(sn)) - nn * b -
                     nn * (std::conj(si) - std::conj(p) * sn);
  const double scale = nn * nn + std::norm(si) + std::norm(sn) + 2.0 * nn * std::abs(b);
  if (std::abs(value.imag()) > 1e-12 * scale) {
    throw Error("phi_scalar: imaginary residue exceeds 1e-12 relative");
  }
  return value.real();
}

QRPoints qr_points(const GammaPoint& pt, double band) {
  const int n = pt.n();
  if (n < 2) throw Error("qr_points: need n >= 2");
  const cplx p = pt.p();
  const double a = 1.0 - std::norm(p);
  std::vector<cplx> q(n - 1, 0.0);
  std::vector<cplx> r(n - 1);
  const bool defined = std::abs(a) > band;
  for (int i = 1; i <= n - 1; ++i) {
    if (defined) q[i - 1] = (pt.s(i) - std::conj(pt.s(n - i)) * p) / a;
    r[i - 1] = (static_cast<double>(n - i) / n) * pt.s(i);
  }
  return {GammaPoint::from_coords(q), GammaPoint::from_coords(r), defined};
}

namespace {

std::string index_id(const std::string& prefix, const std::string& what, int i) {
  std::ostringstream os;
  os << prefix << what << "[i=" << i << "]";
  return os.str();
}

std::string level_prefix(const std::string& parent, const char* kind, int n) {
  std::ostringstream os;
  os << parent << kind << "(n=" << n << ")/";
  return os.str();
}

class Recorder {
 public:
  explicit Recorder(std::vector<Condition>* out) : out_(out) {}

  bool add(std::string id, double value, double threshold, double margin, bool passed) {
    if (out_) out_->push_back({std::move(id), value, threshold, margin, passed, true});
    return passed;
  }

  // Recorded for the report only; never changes the verdict.
  void note(std::string id, double value, double threshold, double margin, bool passed) {
    if (out_) out_->push_back({std::move(id), value, threshold, margin, passed, false});
  }

 private:
  std::vector<Condition>* out_;
};

// |s_i - conj(s_{n-i}) p| + |s_{n-i} - conj(s_i) p| for the (i, n-i) pair.
double pair_lhs(const GammaPoint& pt, int i) {
  const int n = pt.n();
  const cplx p = pt.p();
  return std::abs(pt.s(i) - std::conj(pt.s(n - i)) * p) +
         std::abs(pt.s(n - i) - std::conj(pt.s(i)) * p);
}

// s_i = conj(s_{n-i}) p for every i.
bool self_inversive(const GammaPoint& pt, const MembershipOptions& o, const std::string& prefix,
                    Recorder rec) {
  const int n = pt.n();
  bool ok = true;
  for (int i = 1; i <= n - 1; ++i) {
    const double resid = std::abs(pt.s(i) - std::conj(pt.s(n - i)) * pt.p());
    const double thr = o.tol.abs_eps * (1.0 + std::abs(pt.s(i)) + std::abs(pt.s(n - i)));
    ok &= rec.add(index_id(prefix, "self_inversive", i), resid, thr, thr - resid, resid <= thr);
  }
  return ok;
}

bool open_test(const GammaPoint& pt, const MembershipOptions& o, const std::string& prefix,
               Recorder rec) {
  const int n = pt.n();
  const double absp = std::abs(pt.p());
  if (n == 1) {
    return rec.add(prefix + "open_disc", absp, 1.0, 1.0 - absp, 1.0 - absp > o.tol.abs_eps);
  }
  const double a = 1.0 - absp * absp;
  for (int i = 1; i <= n / 2; ++i) {
    const double lhs = pair_lhs(pt, i);
    const double rhs = n * a;
    rec.note(index_id(prefix, "pair_strict", i), lhs, rhs, rhs - lhs, rhs - lhs > o.tol.abs_eps);
  }
  const bool q_defined = std::abs(a) > o.boundary_band && a > 0.0;
  if (!rec.add(prefix + "p_inside_disc", absp, 1.0, 1.0 - absp, q_defined)) return false;
  const QRPoints qr = qr_points(pt, o.boundary_band);
  return open_test(qr.q, o, level_prefix(prefix, "Q", n - 1), rec);
}

bool closed_test(const GammaPoint& pt, const MembershipOptions& o, const std::string& prefix,
                 Recorder rec) {
  const int n = pt.n();
  const double absp = std::abs(pt.p());
  if (n == 1) {
    return rec.add(prefix + "closed_disc", absp, 1.0, 1.0 - absp,
                   1.0 - absp >= -o.tol.abs_eps);
  }
  const double a = 1.0 - absp * absp;
  bool ok = rec.add(prefix + "p_in_closed_disc", absp, 1.0, 1.0 - absp,
                    1.0 - absp >= -o.tol.abs_eps);
  for (int i = 1; i <= n / 2; ++i) {
    const double lhs = pair_lhs(pt, i);
    const double rhs = n * a;
    rec.note(index_id(prefix, "pair", i), lhs, rhs, rhs - lhs, rhs - lhs >= -o.tol.slack(lhs));
  }
  const QRPoints qr = qr_points(pt, o.boundary_band);
  if (std::abs(a) <= o.boundary_band) {
    ok &= self_inversive(pt, o, prefix, rec);
    ok &= closed_test(qr.r, o, level_prefix(prefix, "R", n - 1), rec);
  } else if (a > 0.0) {
    ok &= closed_test(qr.q, o, level_prefix(prefix, "Q", n - 1), rec);
  } else {
    ok = false;
  }
  return ok;
}

bool boundary_test(const GammaPoint& pt, const MembershipOptions& o, const std::string& prefix,
                   Recorder rec) {
  const int n = pt.n();
  const double absp = std::abs(pt.p());
  const double dev = std::abs(absp - 1.0);
  bool ok = rec.add(prefix + "p_unimodular", dev, o.boundary_band, o.boundary_band - dev,
                    dev <= o.boundary_band);
  if (n == 1) return ok;
  ok &= self_inversive(pt, o, prefix, rec);
  const QRPoints qr = qr_points(pt, o.boundary_band);
  ok &= closed_test(qr.r, o, level_prefix(prefix, "R", n - 1), rec);
  return ok;
}

MembershipReport classify(const GammaPoint& pt, const MembershipOptions& o, PointSet queried) {
  if (pt.n() < 2) throw Error("membership: need n >= 2");
  MembershipReport rep;
  rep.queried = queried;
  rep.options = o;

  std::vector<Condition> open_c, closed_c, bnd_c;
  const bool open = open_test(pt, o, "", Recorder(&open_c));
  const bool closed = closed_test(pt, o, "", Recorder(&closed_c));
  const bool bnd = boundary_test(pt, o, "", Recorder(&bnd_c));
  switch (queried) {
    case PointSet::OpenG: rep.conditions = std::move(open_c); break;
    case PointSet::ClosedGamma: rep.conditions = std::move(closed_c); break;
    case PointSet::DistinguishedBoundary: rep.conditions = std::move(bnd_c); break;
  }

  if (bnd) {
    rep.theorem_verdict = Verdict::BoundaryGamma_b;
  } else if (open) {
    rep.theorem_verdict = Verdict::InteriorG;
  } else if (closed) {
    rep.theorem_verdict = Verdict::GammaNotInterior;
  } else {
    rep.theorem_verdict = Verdict::Outside;
  }

  const OracleResult oracle = root_oracle(pt);
  rep.oracle_roots = oracle.roots;
  rep.oracle_max_root_modulus = oracle.max_modulus;
  rep.oracle_min_root_modulus = oracle.min_modulus;
  rep.oracle_verdict = oracle_classify(oracle, o.boundary_band);

  const bool in_band = std::abs(oracle.max_modulus - 1.0) <= o.boundary_band;
  if (in_band) {
    const bool boundaryish = rep.theorem_verdict == Verdict::BoundaryGamma_b ||
                             rep.theorem_verdict == Verdict::GammaNotInterior;
    rep.verdict = boundaryish ? rep.theorem_verdict : Verdict::Inconclusive;
  } else if (rep.theorem_verdict == rep.oracle_verdict) {
    rep.verdict = rep.theorem_verdict;
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.oracle_disagreement = true;
  }

  switch (queried) {
    case PointSet::OpenG: rep.member = rep.verdict == Verdict::InteriorG; break;
    case PointSet::ClosedGamma:
      rep.member = rep.verdict == Verdict::InteriorG ||
                   rep.verdict == Verdict::BoundaryGamma_b ||
                   rep.verdict == Verdict::GammaNotInterior;
      break;
    case PointSet::DistinguishedBoundary:
      rep.member = rep.verdict == Verdict::BoundaryGamma_b;
      break;
  }
  return rep;
}

}  // namespace

MembershipReport in_open_g(const GammaPoint& pt, const MembershipOptions& opts) {
  return classify(pt, opts, PointSet::OpenG);
}

MembershipReport in_closed_gamma(const GammaPoint& pt, const MembershipOptions& opts) {
  return classify(pt, opts, PointSet::ClosedGamma);
}

MembershipReport in_distinguished_boundary(const GammaPoint& pt, const MembershipOptions& opts) {
  return classify(pt, opts, PointSet::DistinguishedBoundary);
}

GammaPoint rotation_orbit(const GammaPoint& pt, cplx omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) {
    throw Error("rotation_orbit: omega must be unimodular");
  }
  return scaled_point(pt, omega);
}

GammaPoint embed(const GammaPoint& pt) {
  std::vector<cplx> s(pt.s_all().begin(), pt.s_all().end());
  s.push_back(pt.p());
  return GammaPoint(std::move(s), 0.0);
}

BoundCheck lemma_s_bound(const GammaPoint& pt, const Tolerance& tol) {
  if (pt.n() != 2) throw Error("lemma_s_bound: needs a point of C^2");
  const double margin = 1.0 + std::abs(pt.p()) - std::abs(pt.s(1));
  return {margin >= -tol.abs_eps, margin};
}

std::vector<cplx> DiskGrid::points() const {
  if (radii < 1 || angles < 1) throw Error("DiskGrid: radii and angles must be positive");
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(radii) * angles);
  for (int r = 1; r <= radii; ++r) {
    const double rho = static_cast<double>(r) / radii;
    for (int k = 0; k < angles; ++k) {
      out.push_back(std::polar(rho, 2.0 * std::numbers::pi * k / angles));
    }
  }
  return out;
}

PencilScan scan_pencils(const GammaPoint& pt, const DiskGrid& grid, double tie) {
  const int n = pt.n();
  PencilScan scan;
  scan.min_phi.assign(n - 1, std::numeric_limits<double>::infinity());
  scan.argmin_alpha.assign(n - 1, 0.0);
  for (const cplx alpha : grid.points()) {
    const GammaPoint t = scaled_point(pt, alpha);
    for (int i = 1; i <= n - 1; ++i) {
      const double phi = phi_scalar(i, pt, alpha);
      if (phi < scan.min_phi[i - 1]) {
        scan.min_phi[i - 1] = phi;
        scan.argmin_alpha[i - 1] = alpha;
      }
      const double lhs = std::abs(static_cast<double>(n) * t.p() - t.s(n - i));
      const double rhs = std::abs(static_cast<double>(n) - t.s(i));
      if (std::abs(rhs - lhs) > tie && std::abs(phi) > tie && ((phi > 0) != (lhs < rhs))) {
        ++scan.modulus_form_mismatches;
      }
    }
  }
  return scan;
}

std::vector<Condition> pencil_conditions(const GammaPoint& pt, const DiskGrid& grid, bool strict,
                                         const Tolerance& tol) {
  const PencilScan scan = scan_pencils(pt, grid);
  std::vector<Condition> out;
  for (int i = 1; i <= pt.n() - 1; ++i) {
    const double m = scan.min_phi[i - 1];
    const bool ok = strict ? m > tol.abs_eps : m >= -tol.abs_eps;
    out.push_back({index_id("", strict ? "phi_positive_on_grid" : "phi_nonnegative_on_grid", i),
                   m, 0.0, m, ok});
  }
  return out;
}

}  // namespace symdisc
