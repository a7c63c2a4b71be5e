#pragma once

// Polynomials in several complex variables, used as test functions for the
// von Neumann inequality and the linear-collapse identity.

#include "symdisc/numerics.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace symdisc {

using Exponent = std::vector<int>;

/// All exponent vectors in `vars` variables with total degree <= `degree`,
/// ordered by total degree, then lexicographically (descending in the
/// first variable). The constant monomial comes first.
std::vector<Exponent> monomials(int vars, int degree);

int total_degree(const Exponent& e);

struct Polynomial {
  int vars = 0;
  std::vector<Exponent> exps;
  std::vector<cplx> coeffs;

  /// Coefficient of the given exponent (0 when absent).
  cplx coefficient(const Exponent& e) const;
  cplx constant_term() const;
  /// Coefficient of the k-th coordinate (0-based) to the first power.
  cplx linear_coefficient(int k) const;
  int degree() const;

  cplx operator()(std::span<const cplx> x) const;

  /// "c0 + c1*x1 + ..." with x1..xm naming the variables.
  std::string to_string(int precision = 6) const;
};

/// Polynomial whose coefficients on every monomial of degree <= `degree`
/// are i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
Polynomial random_polynomial(int vars, int degree, std::mt19937_64& rng);

/// Single monomial x^e with coefficient c.
Polynomial monomial_polynomial(int vars, const Exponent& e, cplx c = 1.0);

/// Deterministic per-trial seed (splitmix64 of seed + trial).
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t trial);

/// T^e for every monomial up to a fixed degree, built once and reused for
/// many polynomials. Monomials whose matrix is exactly zero are flagged and
/// skipped during evaluation.
class MonomialTable {
 public:
  MonomialTable(std::span<const ComplexMatrix> mats, int degree);

  int degree() const { return degree_; }
  int vars() const { return vars_; }
  Eigen::Index dim() const { return dim_; }
  const ComplexMatrix& matrix(const Exponent& e) const;
  bool is_zero(const Exponent& e) const;
  std::size_t nonzero_count() const;

  /// f(T_1, ..., T_m); throws when f has more variables or higher degree.
  ComplexMatrix evaluate(const Polynomial& f) const;

 private:
  int vars_;
  int degree_;
  Eigen::Index dim_;
  std::map<Exponent, std::size_t> index_;
  std::vector<ComplexMatrix> mats_;
  std::vector<bool> zero_;
};

}  // namespace symdisc
