#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ikernel {

/// Exact rational scalar used everywhere in the library.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

class VarSystemMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VarRole { coordinate, parameter };

/// Ordered list of named variables. Immutable once built; shared by pointer.
class VarSystem {
 public:
  VarSystem(std::vector<std::string> names, std::vector<VarRole> roles);

  static std::shared_ptr<const VarSystem> make(std::vector<std::string> names,
                                               std::vector<VarRole> roles);
  /// All variables are coordinates.
  static std::shared_ptr<const VarSystem> coordinates(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  VarRole role(std::size_t i) const { return roles_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<VarRole>& roles() const { return roles_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;  // throws if absent
  std::vector<std::size_t> coordinate_indices() const;

  bool operator==(const VarSystem& other) const {
    return names_ == other.names_ && roles_ == other.roles_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VarRole> roles_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

using VarSystemPtr = std::shared_ptr<const VarSystem>;

bool same_system(const VarSystemPtr& a, const VarSystemPtr& b);

/// Exponent vector, one entry per variable of the owning VarSystem.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint32_t total_degree() const;
  bool is_one() const { return total_degree() == 0; }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const;

  bool operator==(const Monomial& other) const = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order: larger total degree first, then lex in the
/// declared variable order. `operator()` returns true when `a` precedes `b`.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Strict grlex comparison, true when a > b.
bool grlex_greater(const Monomial& a, const Monomial& b);

/// All monomials of total degree `d` in the variables `vars` (indices into a
/// system of `nvars` variables), leading monomial first.
std::vector<Monomial> monomials_of_degree(std::size_t nvars,
                                          const std::vector<std::size_t>& vars,
                                          std::uint32_t d);

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so term-map equality is polynomial equality.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  explicit Polynomial(VarSystemPtr vs);
  Polynomial(VarSystemPtr vs, const Rational& constant);
  Polynomial(VarSystemPtr vs, const Monomial& mono, const Rational& coeff = 1);

  static Polynomial variable(VarSystemPtr vs, std::string_view name);
  static Polynomial variable(VarSystemPtr vs, std::size_t index);

  const VarSystemPtr& varsys() const { return vs_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  Rational coefficient(const Monomial& m) const;
  /// Leading term under grlex. Precondition: nonzero.
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  /// Graded degree: coordinates count 1, parameters count 0. -1 for zero.
  int degree() const;
  /// Degree in a single variable. -1 for zero.
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  /// True iff no term involves any variable outside `vars`.
  bool only_involves(const std::vector<std::size_t>& vars) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  Polynomial& operator*=(const Polynomial& g);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(Polynomial f, const Rational& c) { return f *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial f) { return f *= c; }
  Polynomial operator-() const;

  Polynomial pow(std::uint32_t k) const;

  bool operator==(const Polynomial& g) const;

  std::string to_string() const;

 private:
  void check_same(const Polynomial& g) const;

  VarSystemPtr vs_;
  TermMap terms_;
};

Polynomial add(const Polynomial& f, const Polynomial& g);
Polynomial mul(const Polynomial& f, const Polynomial& g);

/// Variable name -> image. Unmapped variables map to the same-named variable
/// of the target system.
using SubstitutionMap = std::map<std::string, Polynomial>;

/// Ring-homomorphism evaluation of `f` into `target`.
Polynomial substitute(const Polynomial& f, const SubstitutionMap& images,
                      const VarSystemPtr& target);
/// Same, with the target system taken from `f`.
Polynomial substitute(const Polynomial& f, const SubstitutionMap& images);

/// Re-express `f` in another system that contains all variables it uses.
Polynomial embed(const Polynomial& f, const VarSystemPtr& target);

Polynomial homogeneous_component(const Polynomial& f, std::uint32_t d);
std::map<std::uint32_t, Polynomial> homogeneous_components(const Polynomial& f);

Polynomial partial_derivative(const Polynomial& f, std::size_t var);

/// Splits `f` by the monomials in the variables `split_vars`: returns, for
/// each such monomial occurring, its coefficient as a polynomial in `target`
/// (which must contain the remaining variables).
std::map<Monomial, Polynomial, GrlexDescending> coefficients_by(
    const Polynomial& f, const std::vector<std::size_t>& split_vars,
    const VarSystemPtr& target);

std::string to_string(const Monomial& m, const VarSystem& vs);

/// Parses `x1^2 + x1*z - 3/2*y1`. `*` is optional between factors;
/// parentheses are accepted; exponents are non-negative integers.
Polynomial parse_polynomial(std::string_view text, const VarSystemPtr& vs);

std::string to_string(const Rational& q);

}  // namespace ikernel
