#include "symdisc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace symdisc {

namespace {

void fill_degree(int vars, int remaining, int pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos == vars - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[pos] = k;
    fill_degree(vars, remaining - k, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Exponent> monomials(int vars, int degree) {
  if (vars < 1) throw Error("monomials: need at least one variable");
  if (degree < 0) throw Error("monomials: negative degree");
  std::vector<Exponent> out;
  Exponent cur(vars, 0);
  for (int d = 0; d <= degree; ++d) fill_degree(vars, d, 0, cur, out);
  return out;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

cplx Polynomial::coefficient(const Exponent& e) const {
  cplx c = 0.0;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] == e) c += coeffs[k];
  }
  return c;
}

cplx Polynomial::constant_term() const { return coefficient(Exponent(vars, 0)); }

cplx Polynomial::linear_coefficient(int k) const {
  if (k < 0 || k >= vars) throw Error("linear_coefficient: variable out of range");
  Exponent e(vars, 0);
  e[k] = 1;
  return coefficient(e);
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& e : exps) d = std::max(d, total_degree(e));
  return d;
}

cplx Polynomial::operator()(std::span<const cplx> x) const {
  if (static_cast<int>(x.size()) != vars) throw Error("Polynomial: wrong number of arguments");
  const int d = degree();
  // powers[k][j] = x_k^j
  std::vector<std::vector<cplx>> powers(vars, std::vector<cplx>(d + 1, 1.0));
  for (int k = 0; k < vars; ++k) {
    for (int j = 1; j <= d; ++j) powers[k][j] = powers[k][j - 1] * x[k];
  }
  cplx acc = 0.0;
  for (std::size_t m = 0; m < exps.size(); ++m) {
    cplx term = coeffs[m];
    for (int k = 0; k < vars; ++k) term *= powers[k][exps[m][k]];
    acc += term;
  }
  return acc;
}

std::string Polynomial::to_string(int precision) const {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t m = 0; m < exps.size(); ++m) {
    if (m) os << " + ";
    os << "(" << coeffs[m].real() << (coeffs[m].imag() < 0 ? "-" : "+")
       << std::abs(coeffs[m].imag()) << "i)";
    for (int k = 0; k < vars; ++k) {
      if (exps[m][k] == 0) continue;
      os << "*x" << (k + 1);
      if (exps[m][k] > 1) os << "^" << exps[m][k];
    }
  }
  return os.str();
}

Polynomial random_polynomial(int vars, int degree, std::mt19937_64& rng) {
  Polynomial f;
  f.vars = vars;
  f.exps = monomials(vars, degree);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  f.coeffs.reserve(f.exps.size());
  for (std::size_t k = 0; k < f.exps.size(); ++k) {
    const double re = g(rng);
    const double im = g(rng);
    f.coeffs.emplace_back(re, im);
  }
  return f;
}

Polynomial monomial_polynomial(int vars, const Exponent& e, cplx c) {
  if (static_cast<int>(e.size()) != vars) throw Error("monomial_polynomial: exponent size");
  Polynomial f;
  f.vars = vars;
  f.exps = {e};
  f.coeffs = {c};
  return f;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + trial + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MonomialTable::MonomialTable(std::span<const ComplexMatrix> mats, int degree)
    : vars_(static_cast<int>(mats.size())), degree_(degree) {
  if (mats.empty()) throw Error("MonomialTable: no matrices");
  dim_ = mats[0].rows();
  for (const auto& m : mats) {
    require_square(m, "MonomialTable");
    if (m.rows() != dim_) throw Error("MonomialTable: dimension mismatch");
  }
  const std::vector<Exponent> all = monomials(vars_, degree_);
  mats_.reserve(all.size());
  for (const Exponent& e : all) {
    const std::size_t idx = mats_.size();
    if (total_degree(e) == 0) {
      mats_.push_back(ComplexMatrix::Identity(dim_, dim_));
      zero_.push_back(false);
    } else {
      // Peel one factor off the first nonzero exponent; the parent has
      // lower degree and is already in the table.
      int k = 0;
      while (e[k] == 0) ++k;
      Exponent parent = e;
      --parent[k];
      const std::size_t pidx = index_.at(parent);
      if (zero_[pidx]) {
        mats_.push_back(ComplexMatrix::Zero(dim_, dim_));
        zero_.push_back(true);
      } else {
        ComplexMatrix prod = mats[k] * mats_[pidx];
        const bool z = prod.isZero(0.0);
        mats_.push_back(std::move(prod));
        zero_.push_back(z);
      }
    }
    index_.emplace(e, idx);
  }
}

const ComplexMatrix& MonomialTable::matrix(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw Error("MonomialTable: monomial not in table");
  return mats_[it->second];
}

bool MonomialTable::is_zero(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw Error("MonomialTable: monomial not in table");
  return zero_[it->second];
}

std::size_t MonomialTable::nonzero_count() const {
  return static_cast<std::size_t>(std::count(zero_.begin(), zero_.end(), false));
}

ComplexMatrix MonomialTable::evaluate(const Polynomial& f) const {
  if (f.vars != vars_) throw Error("MonomialTable::evaluate: variable count mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t m = 0; m < f.exps.size(); ++m) {
    auto it = index_.find(f.exps[m]);
    if (it == index_.end()) throw Error("MonomialTable::evaluate: degree exceeds table");
    if (zero_[it->second] || f.coeffs[m] == cplx(0.0)) continue;
    out += f.coeffs[m] * mats_[it->second];
  }
  return out;
}

}  // namespace symdisc
