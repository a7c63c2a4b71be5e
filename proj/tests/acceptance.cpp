// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "support.hpp"

#include "symdisc/counterexample.hpp"
#include "symdisc/fundamental.hpp"
#include "symdisc/geometry.hpp"
#include "symdisc/tuples.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace symdisc;
using namespace symdisc::testing;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Interior, boundary, exterior and near-boundary mixes plus raw coordinates.
GammaPoint membership_sample(int n, int k, Rng& rng) {
  switch (k % 6) {
    case 0: return symmetrize(polydisc(n, rng));
    case 1: return symmetrize(torus(n, rng));
    case 2: return symmetrize(roots_with_max(n, uniform(rng, 1.0, 3.0), rng));
    case 3: {
      const double e = std::pow(10.0, uniform(rng, -5.7, -2.0));
      return symmetrize(roots_with_max(n, uniform_int(rng, 0, 1) ? 1.0 - e : 1.0 + e, rng));
    }
    case 4: {
      std::vector<cplx> c(n);
      const double box = uniform(rng, 0.5, 4.0);
      for (auto& v : c) v = in_disc(rng, box);
      return GammaPoint::from_coords(c);
    }
    default: {
      // self-inversive: satisfies the coordinate relation without lying on the torus
      std::vector<cplx> z = torus(n, rng);
      if (n >= 2) {
        const double r = uniform(rng, 1.0 + 1e-4, 2.0);
        const cplx w = unimodular(rng);
        z[0] = r * w;
        z[1] = w / r;
      }
      return symmetrize(z);
    }
  }
}

Result criterion1() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  long compared = 0, mismatches = 0, total = 0;
  std::string first_bad;
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 10000; ++k) {
      const GammaPoint pt = membership_sample(n, k, rng);
      const MembershipReport r = in_closed_gamma(pt);
      ++total;
      const double m = r.oracle_max_root_modulus;
      if (m >= 1.0 - 1e-6 && m <= 1.0 + 1e-6) continue;
      ++compared;
      const Verdict expect = m < 1.0 ? Verdict::InteriorG : Verdict::Outside;
      if (r.theorem_verdict != expect) {
        ++mismatches;
        if (first_bad.empty()) {
          std::ostringstream os;
          os << " first mismatch n=" << n << " sample " << k << " max|root|=" << m
             << " theorem=" << to_string(r.theorem_verdict);
          first_bad = os.str();
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << total << " points, " << compared << " outside the band, " << mismatches
     << " mismatches, " << secs << " s" << first_bad;
  return {mismatches == 0 && secs <= 60.0, os.str()};
}

Result criterion2() {
  Rng rng(1002);
  const DiskGrid grid{32, 64};
  long failures = 0, points = 0;
  std::ostringstream os;
  for (int n = 2; n <= 5; ++n) {
    long bad = 0;
    double worst = 1e300;
    for (int k = 0; k < 1000; ++k) {
      const GammaPoint pt = interior_point(n, rng, 1e-3);
      if (root_oracle(pt).max_modulus > 1.0 - 1e-3) continue;
      ++points;
      const PencilScan scan = scan_pencils(pt, grid);
      bool point_bad = false;
      for (double v : scan.min_phi) {
        worst = std::min(worst, v);
        if (!(v > 0.0)) point_bad = true;
      }
      bad += point_bad;
    }
    failures += bad;
    os << "n=" << n << ": " << bad << "/1000 points fail (min phi " << worst << "); ";
  }
  os << points << " points";
  return {failures == 0 && points >= 1000, os.str()};
}

Result criterion3() {
  Rng rng(1003);
  double worst = 1e300;
  for (int k = 0; k < 10000; ++k) {
    const GammaPoint pt = symmetrize(k % 3 == 0 ? torus(2, rng) : polydisc(2, rng));
    worst = std::min(worst, lemma_s_bound(pt).margin);
  }
  std::ostringstream os;
  os << "10000 points, smallest margin " << worst;
  return {worst >= -1e-10, os.str()};
}

// Four single-defect perturbations of a certified tuple, one per check.
enum class Defect { Normality, Unitarity, Relation, Spectrum };

struct Perturbed {
  OperatorTuple t;
  std::string intended;
};

Perturbed perturb(Defect kind, Rng& rng) {
  const int n = kind == Defect::Relation ? uniform_int(rng, 3, 5) : uniform_int(rng, 2, 5);
  const Eigen::Index d = uniform_int(rng, 2, 16);
  std::vector<GammaPoint> pts;
  ComplexMatrix u;
  const OperatorTuple base = unitary_tuple(n, d, rng, true, &pts, &u);
  std::vector<ComplexMatrix> m = base.members();
  const double eps = uniform(rng, 0.5, 1.0);
  switch (kind) {
    case Defect::Normality: {
      // nilpotent acting inside the repeated joint eigenspace
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(0, 1) = eps;
      const int k = uniform_int(rng, 0, n - 1);
      m[k] += u * e * u.adjoint();
      return {OperatorTuple::from_members(m),
              k == n - 1 ? "normal_P" : "normal_S" + std::to_string(k + 1)};
    }
    case Defect::Unitarity:
      m[n - 1] *= 1.0 - 0.5 * eps;
      return {OperatorTuple::from_members(m), "P_unitary"};
    case Defect::Relation:
      m[0] += eps * unimodular(rng) * ComplexMatrix::Identity(d, d);
      return {OperatorTuple::from_members(m), "S1_relation"};
    case Defect::Spectrum: {
      // roots r w and w / r keep the coordinate relation and |p| = 1
      std::vector<cplx> z = torus(n, rng);
      const double r = 1.0 + eps;
      z[0] *= r;
      z[1] = z[0] / (r * r);
      pts[uniform_int(rng, 0, static_cast<int>(d) - 1)] = symmetrize(z);
      return {diagonal_tuple(pts, u), "joint_spectrum_on_distinguished_boundary"};
    }
  }
  return {base, ""};
}

std::vector<OperatorTuple> certified_tuples(int count, Rng& rng) {
  std::vector<OperatorTuple> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(unitary_tuple(2 + k % 4, uniform_int(rng, 1, 16), rng, k % 2 == 0));
  }
  return out;
}

Result criterion4() {
  Rng rng(1004);
  const auto tuples = certified_tuples(200, rng);
  int certified = 0, off_boundary = 0;
  double worst_residual = 0.0;
  for (const auto& t : tuples) {
    const CertReport r = gamma_unitary_check(t);
    if (r.kind == CertKind::GammaUnitary && r.passed("normal_P") && r.passed("P_unitary") &&
        r.passed("joint_spectrum_on_distinguished_boundary")) {
      ++certified;
    }
    const JointSpectrum js = joint_eigenvalues(t);
    worst_residual = std::max(worst_residual, js.max_residual());
    for (std::size_t k = 0; k < js.points.size(); ++k) {
      if (!in_distinguished_boundary(js.point(k)).member) ++off_boundary;
    }
  }
  int caught = 0;
  std::string missed;
  for (int k = 0; k < 200; ++k) {
    const Perturbed p = perturb(static_cast<Defect>(k % 4), rng);
    const CertReport r = gamma_unitary_check(p.t);
    if (r.kind == CertKind::Violation && !r.passed(p.intended)) {
      ++caught;
    } else if (missed.empty()) {
      missed = " first miss: " + p.intended + " at perturbation " + std::to_string(k);
    }
  }
  std::ostringstream os;
  os << certified << "/200 certified, " << caught << "/200 perturbations caught, "
     << off_boundary << " joint eigenvalues off the boundary, max residual " << worst_residual
     << missed;
  return {certified == 200 && caught == 200 && off_boundary == 0 && worst_residual <= 1e-8,
          os.str()};
}

Result criterion5() {
  Rng rng(1005);
  const auto tuples = certified_tuples(200, rng);
  int used = 0, with_m = 0;
  double worst_m = 0.0, worst_phi_ratio = 0.0;
  for (const auto& t : tuples) {
    if (gamma_unitary_check(t).kind != CertKind::GammaUnitary) continue;
    ++used;
    const CertReport r = gamma_isometry_check(t, IsometryOptions{256, {}});
    for (const auto& c : r.checks) {
      if (c.name == "M_beta_isometry") {
        ++with_m;
        worst_m = std::max(worst_m, c.value);
      } else if (c.name == "phi_vanishes_on_circle") {
        worst_phi_ratio = std::max(worst_phi_ratio, c.value / (t.n() * t.n()));
      } else if (c.name == "n_minus_beta_S_invertible") {
        worst_m = 1e300;
      }
    }
  }
  std::ostringstream os;
  os << used << " certified tuples, " << with_m << " with some r(S_i) < n, max ||M*M - I|| "
     << worst_m << ", max ||phi|| / n^2 " << worst_phi_ratio;
  return {used == 200 && with_m > 0 && worst_m <= 1e-8 && worst_phi_ratio <= 1e-8, os.str()};
}

Result criterion6() {
  Rng rng(1006);
  double worst_res = 0.0, worst_q = 0.0;
  // radius margins by n for the diagonal family (the property samples) and
  // the non-normal family
  std::vector<double> diag_margin(6, 1e300), other_margin(6, 1e300);
  int failures = 0;
  std::string first_error;
  for (int k = 0; k < 500; ++k) {
    const int n = 2 + (k / 2) % 4;
    const bool diagonal = k % 2 == 0;
    const Eigen::Index d = uniform_int(rng, 1, 6);
    const OperatorTuple t =
        diagonal ? diagonal_contraction_tuple(n, d, rng, 0.9)
                 : contraction_tuple(n, d, rng, k % 5 == 1 ? 1.0 : uniform(rng, 0.2, 0.99));
    try {
      FundamentalTuple ft = solve_fundamental(t);
      for (double r : ft.residuals) worst_res = std::max(worst_res, r);
      const RadiusCheck rc = radius_bound_check(ft, 64, 720);
      auto& slot = diagonal ? diag_margin[n] : other_margin[n];
      slot = std::min(slot, rc.worst);
    } catch (const Error& e) {
      ++failures;
      if (first_error.empty()) first_error = std::string(" first error: ") + e.what();
    }
  }
  for (int k = 0; k < 500; ++k) {
    const int n = 2 + k % 4;
    const GammaPoint pt = interior_point(n, rng, 1e-3);
    const FundamentalTuple ft = solve_fundamental(OperatorTuple::scalar(pt));
    const auto q = qr_points(pt).q.coords();
    for (int i = 1; i <= n - 1; ++i) {
      const cplx f = ft.space.rank == 1 ? ft.f(i)(0, 0) : cplx(0.0);
      worst_q = std::max(worst_q, std::abs(f - q[i - 1]));
    }
  }
  double worst_diag = 1e300;
  for (int n = 2; n <= 5; ++n) worst_diag = std::min(worst_diag, diag_margin[n]);
  std::ostringstream os;
  os << "500 candidates: max residual " << worst_res << ", " << failures
     << " solver failures; scalar max |F_i - Q_i| " << worst_q
     << "; radius margin n - w, diagonal 0.9D samples by n=2..5:";
  for (int n = 2; n <= 5; ++n) os << " " << diag_margin[n];
  os << "; non-normal samples:";
  for (int n = 2; n <= 5; ++n) os << " " << other_margin[n];
  os << first_error;
  return {failures == 0 && worst_res <= 1e-8 && worst_q <= 1e-12 && worst_diag >= -1e-6,
          os.str()};
}

Result criterion7() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  for (int n = 3; n <= 5; ++n) {
    for (int N : {2, 8}) {
      const TruncatedModel m = n == 3 ? build_case_a(N, 0.25) : build_case_b(n, N, 0.25);
      ObstructionOptions oo;
      oo.collapse_trials = 500;
      oo.collapse_degree = 6;
      oo.vn_trials = 1000;
      oo.torus_grid = 48;
      const ObstructionReport r = verify_obstruction(m, oo);
      bool this_ok = r.linear_collapse_residual == 0.0;
      double hyp = 0.0;
      for (const auto& c : r.hypothesis_checks) hyp = std::max(hyp, c.value);
      this_ok = this_ok && hyp <= 1e-10;
      if (n == 3) {
        double block = 1e300, f2 = 1e300;
        for (const auto& c : r.fot_checks) {
          if (c.name == "F1_block_equals_X") block = c.value;
          if (c.name == "F2_exactly_zero") f2 = c.value;
        }
        this_ok = this_ok && block <= 1e-12 && f2 == 0.0;
      }
      this_ok = this_ok && !r.almost_normal &&
                std::abs(r.pair_defect_interior - 1.0 / 16.0) <= 1e-12;
      this_ok = this_ok && r.contraction_evidence.kind == CertKind::GammaContractionConsistent;
      if (!this_ok) {
        ok = false;
        os << "[n=" << n << " N=" << N << " failed: collapse " << r.linear_collapse_residual
           << ", hypotheses " << hyp << ", defect " << r.pair_defect_interior << ", vN "
           << to_string(r.contraction_evidence.kind) << "] ";
      }
    }
  }
  const double secs = seconds_since(t0);
  os << "n=3..5, N in {2,8}: collapse exact, defect 1/16, no vN violation, " << secs << " s";
  return {ok && secs <= 300.0, os.str()};
}

Result criterion8() {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double cf = cf_two_by_two(1.0, 1.0);
  CfOptions co;
  co.trials = 2000;
  const CfReport rep = cf_lower_bound_check(1.0, 1.0, co);
  Rng rng(1008);
  int bad_small = 0, bad_large = 0, small = 0, large = 0;
  while (small < 10000 || large < 10000) {
    const cplx a0 = gaussian(rng), a1 = gaussian(rng), a3 = gaussian(rng);
    const ComparisonOrdering o = comparison_ordering(a0, a1, a3);
    if (o.small_a0 && small < 10000) {
      ++small;
      if (!o.holds) ++bad_small;
    } else if (!o.small_a0 && large < 10000) {
      ++large;
      if (!o.holds) ++bad_large;
    }
  }
  std::ostringstream os;
  os.precision(16);
  os << "cf(1,1) = " << cf << " (error " << std::abs(cf - golden) << "), worst gap "
     << rep.worst_gap << ", ordering failures " << bad_small << " + " << bad_large
     << " of 10000 + 10000";
  return {std::abs(cf - golden) <= 1e-12 && rep.worst_gap >= -1e-6 && bad_small == 0 &&
              bad_large == 0,
          os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"1 membership oracle equivalence", criterion1},
      {"2 pencil necessity", criterion2},
      {"3 |s| <= 1 + |p| on Gamma_2", criterion3},
      {"4 Gamma_n-unitary certification", criterion4},
      {"5 Gamma_n-isometry condition", criterion5},
      {"6 fundamental operator fidelity", criterion6},
      {"7 counterexample reconstruction", criterion7},
      {"8 Caratheodory-Fejer device", criterion8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failed;
    std::printf("%s criterion %s: %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
