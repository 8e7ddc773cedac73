#pragma once

// Helpers and brute-force oracles for the tests. The oracles deliberately
// avoid the library's linear algebra: they work on plain term maps.

#include "ikernel/poly.hpp"

#include <functional>
#include <ostream>
#include <map>
#include <random>
#include <vector>

namespace ikernel {

// readable gtest failure messages
inline void PrintTo(const Polynomial& f, std::ostream* os) { *os << f.to_string(); }

}  // namespace ikernel

namespace testsupport {

using ikernel::Monomial;
using ikernel::Polynomial;
using ikernel::Rational;
using ikernel::VarSystemPtr;

inline Polynomial P(const VarSystemPtr& vs, std::string_view text) {
  return ikernel::parse_polynomial(text, vs);
}

using Row = std::map<std::vector<std::uint32_t>, Rational>;

inline Row to_row(const Polynomial& f) {
  Row r;
  for (const auto& [m, c] : f.terms()) r[m.exponents()] = c;
  return r;
}

/// Incremental Gaussian elimination on sparse rows keyed by exponent vectors.
class OracleSpan {
 public:
  bool insert(const Polynomial& f) { return insert(to_row(f)); }

  bool insert(Row v) {
    reduce(v);
    if (v.empty()) return false;
    auto pivot = v.rbegin()->first;
    const Rational inv = Rational(1) / v.rbegin()->second;
    for (auto& [k, c] : v) c *= inv;
    rows_.push_back({std::move(pivot), std::move(v)});
    return true;
  }

  bool contains(const Polynomial& f) const {
    auto v = to_row(f);
    reduce(v);
    return v.empty();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(Row& v) const {
    for (const auto& [pivot, row] : rows_) {
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      const Rational f = it->second;
      for (const auto& [k, c] : row) {
        auto& slot = v[k];
        slot -= f * c;
        if (slot == 0) v.erase(k);
      }
    }
  }

  std::vector<std::pair<std::vector<std::uint32_t>, Row>> rows_;
};

inline std::size_t oracle_rank(const std::vector<Polynomial>& polys) {
  OracleSpan s;
  for (const auto& p : polys) s.insert(p);
  return s.rank();
}

inline bool oracle_same_span(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  std::vector<Polynomial> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const auto r = oracle_rank(both);
  return r == oracle_rank(a) && r == oracle_rank(b);
}

/// Every product of generators (with repetition) of total degree exactly d.
inline std::vector<Polynomial> oracle_products(const VarSystemPtr& vs,
                                               const std::vector<Polynomial>& gens,
                                               std::uint32_t d) {
  std::vector<Polynomial> out;
  std::function<void(std::size_t, std::uint32_t, Polynomial)> rec =
      [&](std::size_t from, std::uint32_t left, Polynomial acc) {
        if (left == 0) {
          out.push_back(acc);
          return;
        }
        for (std::size_t i = from; i < gens.size(); ++i) {
          const auto gd = static_cast<std::uint32_t>(gens[i].degree());
          if (gd <= left) rec(i, left - gd, acc * gens[i]);
        }
      };
  rec(0, d, Polynomial(vs, Rational(1)));
  return out;
}

/// All monomials of degree d in the listed variables, by plain recursion.
inline std::vector<Monomial> oracle_monomials(std::size_t nvars, const std::vector<std::size_t>& vars,
                                              std::uint32_t d) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t k, std::uint32_t left) {
    if (k + 1 == vars.size()) {
      cur[vars[k]] = left;
      out.push_back(cur);
      cur[vars[k]] = 0;
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur[vars[k]] = e;
      rec(k + 1, left - e);
    }
    cur[vars[k]] = 0;
  };
  if (vars.empty()) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  rec(0, d);
  return out;
}

/// Hand-rolled generator for random polynomials and matrices.
class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    const int num = integer(-9, 9);
    const int den = integer(1, 4);
    return Rational(num) / Rational(den);
  }

  Monomial monomial(std::size_t nvars, const std::vector<std::size_t>& vars, std::uint32_t max_deg) {
    Monomial m(nvars);
    const auto d = static_cast<std::uint32_t>(integer(0, static_cast<int>(max_deg)));
    for (std::uint32_t k = 0; k < d; ++k) {
      m[vars[static_cast<std::size_t>(integer(0, static_cast<int>(vars.size()) - 1))]] += 1;
    }
    return m;
  }

  Polynomial poly(const VarSystemPtr& vs, std::uint32_t max_deg, int max_terms) {
    std::vector<std::size_t> vars(vs->size());
    for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
    Polynomial f(vs);
    const int terms = integer(0, max_terms);
    for (int t = 0; t < terms; ++t) f.add_term(monomial(vs->size(), vars, max_deg), rational());
    return f;
  }

  Polynomial homogeneous(const VarSystemPtr& vs, const std::vector<std::size_t>& vars,
                         std::uint32_t d, int max_terms) {
    Polynomial f(vs);
    const int terms = integer(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m(vs->size());
      for (std::uint32_t k = 0; k < d; ++k) {
        m[vars[static_cast<std::size_t>(integer(0, static_cast<int>(vars.size()) - 1))]] += 1;
      }
      f.add_term(m, rational());
    }
    return f;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace testsupport
