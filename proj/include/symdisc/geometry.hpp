#pragma once

// Point geometry of the open and closed symmetrized polydisc and of its
// distinguished boundary.
//
// A point of C^n is written (s_1, ..., s_{n-1}, p). It is the image of
// (z_1, ..., z_n) under symmetrization exactly when z_1, ..., z_n are the
// roots of
//
//     z^n - s_1 z^{n-1} + s_2 z^{n-2} - ... + (-1)^n p  =  prod_k (z - z_k),
//
// so membership can always be decided by a root computation (the "oracle").
// The characterizations implemented here are recursive in n: each reduces a
// point of C^n to an auxiliary point of C^{n-1} (Q or R below), bottoming out
// at n = 1 where the open/closed sets are the open/closed unit disc.

#include "symdisc/numerics.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symdisc {

/// Coordinates (s_1, ..., s_{n-1}, p). n == 1 is allowed and denotes a point
/// of the plane (only p), which is the base case of the recursive tests.
class GammaPoint {
 public:
  GammaPoint(std::vector<cplx> s, cplx p);

  /// From the full coordinate list (s_1, ..., s_{n-1}, p).
  static GammaPoint from_coords(std::span<const cplx> coords);
  static GammaPoint origin(int n);

  int n() const { return static_cast<int>(s_.size()) + 1; }
  /// s_i for 1 <= i <= n-1.
  cplx s(int i) const;
  cplx p() const { return p_; }
  std::span<const cplx> s_all() const { return s_; }
  /// (s_1, ..., s_{n-1}, p).
  std::vector<cplx> coords() const;

  bool operator==(const GammaPoint&) const = default;

 private:
  std::vector<cplx> s_;
  cplx p_;
};

enum class Verdict { InteriorG, BoundaryGamma_b, GammaNotInterior, Outside, Inconclusive };

std::string to_string(Verdict v);

/// Which set a membership query asks about.
enum class PointSet { OpenG, ClosedGamma, DistinguishedBoundary };

std::string to_string(PointSet s);

struct Condition {
  std::string id;
  double value = 0.0;      // the tested quantity
  double threshold = 0.0;  // what it is compared with
  double margin = 0.0;     // signed distance to failure; >= 0 (or > 0) passes
  bool passed = false;
  /// False for conditions that are reported but do not enter the verdict.
  bool decisive = true;
};

struct MembershipOptions {
  Tolerance tol{};
  /// Oracle max root modulus within [1 - band, 1 + band] counts as boundary.
  /// Also the |p| = 1 switch of the recursive tests.
  double boundary_band = 1e-9;
};

struct MembershipReport {
  PointSet queried = PointSet::ClosedGamma;
  bool member = false;  // false when the verdict is Inconclusive
  Verdict verdict = Verdict::Inconclusive;
  Verdict theorem_verdict = Verdict::Inconclusive;
  Verdict oracle_verdict = Verdict::Inconclusive;
  bool oracle_disagreement = false;
  std::vector<Condition> conditions;
  double oracle_max_root_modulus = 0.0;
  double oracle_min_root_modulus = 0.0;
  std::vector<cplx> oracle_roots;
  MembershipOptions options{};
};

struct QRPoints {
  GammaPoint q;
  GammaPoint r;
  bool q_defined = false;
};

struct OracleResult {
  double max_modulus = 0.0;
  double min_modulus = 0.0;
  std::vector<cplx> roots;
};

/// Elementary symmetric polynomials e_0 = 1, e_1, ..., e_m of `z`.
std::vector<cplx> elementary_symmetric(std::span<const cplx> z);

/// (e_1(z), ..., e_{n-1}(z), e_n(z)). Bit-identical for every ordering of z.
GammaPoint symmetrize(std::span<const cplx> z);

/// Coefficients c_0..c_{n-1} (ascending) of the monic polynomial whose roots
/// symmetrize to `pt`.
std::vector<cplx> characteristic_coeffs(const GammaPoint& pt);

OracleResult root_oracle(const GammaPoint& pt);

/// Oracle classification with the given boundary band (never Inconclusive).
Verdict oracle_classify(const OracleResult& oracle, double band);

/// The scalar pencil Phi_i at the scaled point (a s_1, a^2 s_2, ..., a^n p).
double phi_scalar(int i, const GammaPoint& pt, cplx alpha);

/// (a s_1, a^2 s_2, ..., a^{n-1} s_{n-1}, a^n p) for any complex a.
GammaPoint scaled_point(const GammaPoint& pt, cplx alpha);

QRPoints qr_points(const GammaPoint& pt, double band = 1e-9);

/// Decisive conditions: |p| < 1 and Q in G_{n-1} (closed: Q in Gamma_{n-1},
/// or |p| = 1 with s_i = conj(s_{n-i}) p and R in Gamma_{n-1}). The pair
/// inequalities |s_i - conj(s_{n-i}) p| + |s_{n-i} - conj(s_i) p| vs
/// n(1 - |p|^2) are listed with decisive = false: for n >= 4 they fail at
/// genuine interior points (all roots 0.99, i = 2), so they cannot gate.
MembershipReport in_open_g(const GammaPoint& pt, const MembershipOptions& opts = {});
MembershipReport in_closed_gamma(const GammaPoint& pt, const MembershipOptions& opts = {});
MembershipReport in_distinguished_boundary(const GammaPoint& pt,
                                           const MembershipOptions& opts = {});

/// (w s_1, w^2 s_2, ..., w^n p) for unimodular w.
GammaPoint rotation_orbit(const GammaPoint& pt, cplx omega);

/// (s_1, ..., s_{n-2}, p) |-> (s_1, ..., s_{n-2}, p, 0).
GammaPoint embed(const GammaPoint& pt);

struct BoundCheck {
  bool holds = false;
  double margin = 0.0;
};

/// |s| <= 1 + |p| for a point of Gamma_2; margin = 1 + |p| - |s|.
BoundCheck lemma_s_bound(const GammaPoint& pt, const Tolerance& tol = {});

/// Radial x angular sample of the closed unit disc. Radii are k / radii for
/// k = 1..radii (so |alpha| = 1 is always included), angles equispaced.
struct DiskGrid {
  int radii = 32;
  int angles = 64;

  std::vector<cplx> points() const;
};

/// Minimum of phi_scalar(i, pt, alpha) over the grid, for each i = 1..n-1.
struct PencilScan {
  std::vector<double> min_phi;        // indexed by i - 1
  std::vector<cplx> argmin_alpha;     // indexed by i - 1
  /// Grid points where "phi > 0" and the modulus form
  /// |n a^n p - a^{n-i} s_{n-i}| < |n - a^i s_i| gave different answers
  /// (ignoring points where either side is within `tie` of equality).
  int modulus_form_mismatches = 0;
};

PencilScan scan_pencils(const GammaPoint& pt, const DiskGrid& grid, double tie = 1e-9);

/// Pencil conditions as report entries ("phi_i > 0 on the grid").
std::vector<Condition> pencil_conditions(const GammaPoint& pt, const DiskGrid& grid,
                                         bool strict, const Tolerance& tol = {});

}  // namespace symdisc
