#pragma once

// Finite truncation of the tuple (S_1, S_2, P) on H_1 (+) H_1 whose
// fundamental operators fail to be almost normal, its extension to n > 3,
// and the Caratheodory-Fejer 2x2 device used to bound ||f(S_1, S_2, P)||.
//
// Layout: four blocks, each a depth-N truncation of l^2(E) with E = C^2, so
// dim = 8N. Block b, slot k (0 <= k < N), component e (0 or 1) sits at
// b*2N + 2k + e. Blocks 0,1 form the first H_1 and blocks 2,3 the second.

#include "symdisc/fundamental.hpp"
#include "symdisc/numerics.hpp"
#include "symdisc/tuples.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symdisc {

struct BlockMap {
  int N = 2;

  Eigen::Index block_size() const { return 2 * N; }
  Eigen::Index dim() const { return 8 * N; }
  Eigen::Index index(int block, int slot, int component) const;
  /// Coordinates of whole blocks.
  std::vector<Eigen::Index> block_coords(std::initializer_list<int> blocks) const;
  /// Blocks 0 and 1 without the last slot of block 1.
  std::vector<Eigen::Index> interior_kernel() const;
  /// Last slot of block 1: V kills it, so it falls into the defect space
  /// of the truncation although it lies in the kernel for the infinite
  /// shift.
  std::vector<Eigen::Index> truncation_edge() const;
  /// Slot 0 of block 2, where X acts.
  std::vector<Eigen::Index> interior_slot() const;
  std::string describe() const;
};

/// Columns of the identity at the given coordinates.
ComplexMatrix coordinate_selector(Eigen::Index dim, const std::vector<Eigen::Index>& coords);

struct TruncatedModel {
  int n;
  int N;
  double eta;
  BlockMap map;
  ComplexMatrix X;   // 2N x 2N, c |-> (X_1 c_0, 0, ...)
  ComplexMatrix V;   // 2N x 2N truncated shift
  ComplexMatrix S1;  // Case-A core, dim x dim
  ComplexMatrix S2;
  ComplexMatrix P;
  OperatorTuple tuple;  // (S1, S2, P) for n = 3, (S1, S2, P, 0, ..., 0) for n > 3
};

TruncatedModel build_case_a(int N, double eta = 0.25);
TruncatedModel build_case_b(int n, int N, double eta = 0.25);

/// Block (r, c) of a model matrix, each block 2N x 2N.
ComplexMatrix model_block(const TruncatedModel& m, const ComplexMatrix& a, int r, int c);

/// max over random polynomials of ||f(T) - (a_0 I + sum_k a_k T_k)||, with
/// a_0 the constant term and a_k the linear coefficients.
double linear_collapse_check(const TruncatedModel& m, int trials, int degree, std::uint64_t seed);

struct ObstructionOptions {
  int vn_trials = 200;
  int vn_degree = 6;
  int torus_grid = 48;
  std::uint64_t seed = 42;
  int collapse_trials = 500;
  int collapse_degree = 6;
  /// Tolerance on the interior hypothesis residuals and closed forms.
  double structural_tol = 1e-10;
  double closed_form_tol = 1e-12;
  Tolerance tol{};
};

struct ObstructionReport {
  int n = 0;
  int N = 0;
  double eta = 0.0;
  std::vector<Check> hypothesis_checks;  // interior block; must pass
  std::vector<Check> edge_diagnostics;   // truncation edge; reported only
  std::vector<Check> fot_checks;         // closed forms of the fundamental operators
  FundamentalTuple fot;
  AlmostNormalCheck almost_normal_pairs;
  bool almost_normal = true;
  /// ||[F_1^*,F_1] - [F_{n-1}^*,F_{n-1}]|| in full and compressed to the
  /// interior slot.
  double pair_defect_full = 0.0;
  double pair_defect_interior = 0.0;
  CertReport contraction_evidence;
  double linear_collapse_residual = 0.0;
  bool obstruction_confirmed = false;
  std::vector<std::string> notes;
};

ObstructionReport verify_obstruction(const TruncatedModel& m, const ObstructionOptions& opts = {});

/// ||[[b0, 0], [b1, b0]]||.
double cf_two_by_two(cplx b0, cplx b1);

/// Sup of |sum_k c_k z^k| over the unit circle, sampled on `grid` points
/// and refined locally around the best ones. Never exceeds the true sup.
double circle_sup(const std::vector<cplx>& coeffs, int grid);

struct CfOptions {
  int trials = 2000;
  int degree = 6;       // tails have degree 2..degree
  int torus_grid = 1024;
  std::uint64_t seed = 42;
};

struct CfReport {
  double worst_gap = 0.0;  // min over trials of sampled sup - cf_two_by_two
  int worst_trial = 0;
  double cf_value = 0.0;
};

/// Trial 0 uses the zero tail; the rest use Gaussian tails with a random
/// overall scale in [0, 1].
CfReport cf_lower_bound_check(cplx b0, cplx b1, const CfOptions& opts = {});

/// ||[[|a0|, 0], [|a3|, |a0| + |a1|/4]]||, the bound for ||f(S_1, S_2, P)||.
double comparison_first(cplx a0, cplx a1, cplx a3);
/// ||[[|a0|, 0], [|a1| + |a3|, |a0|]]||.
double comparison_second(cplx a0, cplx a1, cplx a3);
/// ||[[|a0|, 0], [|a3|, |a0| + |a0|/4]]||.
double comparison_middle_large_a0(cplx a0, cplx a3);
/// ||[[|a0|, 0], [|a0| + |a3|, |a0|]]||.
double comparison_second_large_a0(cplx a0, cplx a3);

struct ComparisonOrdering {
  bool small_a0 = true;  // |a0| <= |a1|
  double first = 0.0;
  double bound = 0.0;    // the matrix norm the first one is compared with
  bool holds = false;
};

/// For |a0| <= |a1|: first <= second. Otherwise first <= middle <= the
/// large-|a0| second matrix. `rel` is the relative slack.
ComparisonOrdering comparison_ordering(cplx a0, cplx a1, cplx a3, double rel = 1e-12);

}  // namespace symdisc
