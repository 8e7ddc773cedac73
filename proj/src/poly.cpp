#include "ikernel/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace ikernel {

// ---------------------------------------------------------------- VarSystem

VarSystem::VarSystem(std::vector<std::string> names, std::vector<VarRole> roles)
    : names_(std::move(names)), roles_(std::move(roles)) {
  if (names_.size() != roles_.size()) {
    throw std::invalid_argument("VarSystem: names and roles differ in length");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) {
      throw std::invalid_argument("VarSystem: invalid variable name '" + n + "'");
    }
    for (char c : n) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        throw std::invalid_argument("VarSystem: invalid variable name '" + n + "'");
      }
    }
    if (!lookup_.emplace(n, i).second) {
      throw std::invalid_argument("VarSystem: duplicate variable '" + n + "'");
    }
  }
}

VarSystemPtr VarSystem::make(std::vector<std::string> names, std::vector<VarRole> roles) {
  return std::make_shared<const VarSystem>(std::move(names), std::move(roles));
}

VarSystemPtr VarSystem::coordinates(std::vector<std::string> names) {
  std::vector<VarRole> roles(names.size(), VarRole::coordinate);
  return make(std::move(names), std::move(roles));
}

std::optional<std::size_t> VarSystem::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarSystem::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw VarSystemMismatch("unknown variable '" + std::string(name) + "'");
  return *i;
}

std::vector<std::size_t> VarSystem::coordinate_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    if (roles_[i] == VarRole::coordinate) out.push_back(i);
  }
  return out;
}

bool same_system(const VarSystemPtr& a, const VarSystemPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::uint32_t power) {
  Monomial m(nvars);
  m.exps_.at(i) = power;
  return m;
}

std::uint32_t Monomial::total_degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= other.exps_[i];
  return out;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da > db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  return grlex_greater(a, b);
}

namespace {

void enumerate_monomials(std::size_t nvars, const std::vector<std::size_t>& vars,
                         std::size_t pos, std::uint32_t remaining, Monomial& cur,
                         std::vector<Monomial>& out) {
  if (pos + 1 == vars.size()) {
    cur[vars[pos]] = remaining;
    out.push_back(cur);
    cur[vars[pos]] = 0;
    return;
  }
  for (std::uint32_t e = remaining + 1; e-- > 0;) {
    cur[vars[pos]] = e;
    enumerate_monomials(nvars, vars, pos + 1, remaining - e, cur, out);
  }
  cur[vars[pos]] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars,
                                          const std::vector<std::size_t>& vars,
                                          std::uint32_t d) {
  std::vector<Monomial> out;
  if (vars.empty()) {
    if (d == 0) out.emplace_back(nvars);
    return out;
  }
  std::vector<std::size_t> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  Monomial cur(nvars);
  enumerate_monomials(nvars, sorted, 0, d, cur, out);
  return out;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(VarSystemPtr vs) : vs_(std::move(vs)) {
  if (!vs_) throw std::invalid_argument("Polynomial: null variable system");
}

Polynomial::Polynomial(VarSystemPtr vs, const Rational& constant) : Polynomial(std::move(vs)) {
  add_term(Monomial(vs_->size()), constant);
}

Polynomial::Polynomial(VarSystemPtr vs, const Monomial& mono, const Rational& coeff)
    : Polynomial(std::move(vs)) {
  if (mono.size() != vs_->size()) {
    throw VarSystemMismatch("monomial length does not match variable system");
  }
  add_term(mono, coeff);
}

Polynomial Polynomial::variable(VarSystemPtr vs, std::string_view name) {
  const auto i = vs->index(name);
  return variable(std::move(vs), i);
}

Polynomial Polynomial::variable(VarSystemPtr vs, std::size_t index) {
  const auto n = vs->size();
  return Polynomial(std::move(vs), Monomial::variable(n, index));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading_monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading_coefficient of zero polynomial");
  return terms_.begin()->second;
}

namespace {

int graded_degree(const Monomial& m, const VarSystem& vs) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (vs.role(i) == VarRole::coordinate) d += static_cast<int>(m[i]);
  }
  return d;
}

}  // namespace

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, graded_degree(m, *vs_));
  return d;
}

int Polynomial::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = graded_degree(terms_.begin()->first, *vs_);
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return graded_degree(t.first, *vs_) == d; });
}

bool Polynomial::only_involves(const std::vector<std::size_t>& vars) const {
  std::vector<bool> allowed(vs_->size(), false);
  for (auto v : vars) allowed.at(v) = true;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0 && !allowed[i]) return false;
    }
  }
  return true;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_same(const Polynomial& g) const {
  if (!same_system(vs_, g.vs_)) {
    throw VarSystemMismatch("polynomials live in different variable systems");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  check_same(g);
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
  check_same(g);
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& g) {
  *this = *this * g;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  f.check_same(g);
  Polynomial out(f.vs_);
  for (const auto& [mf, cf] : f.terms_) {
    for (const auto& [mg, cg] : g.terms_) out.add_term(mf * mg, cf * cg);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
  Polynomial result(vs_, Rational(1));
  Polynomial base(*this);
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& g) const {
  return same_system(vs_, g.vs_) && terms_ == g.terms_;
}

Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }
Polynomial mul(const Polynomial& f, const Polynomial& g) { return f * g; }

// ------------------------------------------------------------ substitution

Polynomial substitute(const Polynomial& f, const SubstitutionMap& images,
                      const VarSystemPtr& target) {
  const VarSystem& src = *f.varsys();
  for (const auto& [name, img] : images) {
    if (!src.find(name)) {
      throw VarSystemMismatch("substitution maps unknown variable '" + name + "'");
    }
    if (!same_system(img.varsys(), target)) {
      throw VarSystemMismatch("image of '" + name + "' is not in the target system");
    }
  }

  // Image per source variable, resolved lazily: only variables f uses matter.
  std::vector<std::optional<Polynomial>> image(src.size());
  std::vector<std::vector<Polynomial>> powers(src.size());
  auto power_of = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    if (!image[v]) {
      auto it = images.find(src.name(v));
      if (it != images.end()) {
        image[v] = it->second;
      } else {
        auto ti = target->find(src.name(v));
        if (!ti) {
          throw VarSystemMismatch("variable '" + src.name(v) +
                                  "' has no image and is absent from the target system");
        }
        image[v] = Polynomial::variable(target, *ti);
      }
      powers[v].push_back(Polynomial(target, Rational(1)));
    }
    while (powers[v].size() <= e) powers[v].push_back(powers[v].back() * *image[v]);
    return powers[v][e];
  };

  Polynomial out(target);
  for (const auto& [m, c] : f.terms()) {
    Polynomial term(target, c);
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] != 0) term = term * power_of(v, m[v]);
    }
    out += term;
  }
  return out;
}

Polynomial substitute(const Polynomial& f, const SubstitutionMap& images) {
  return substitute(f, images, f.varsys());
}

Polynomial embed(const Polynomial& f, const VarSystemPtr& target) {
  if (same_system(f.varsys(), target)) return f;
  const VarSystem& src = *f.varsys();
  std::vector<std::optional<std::size_t>> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) where[i] = target->find(src.name(i));
  Polynomial out(target);
  for (const auto& [m, c] : f.terms()) {
    Monomial mt(target->size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!where[i]) {
        throw VarSystemMismatch("variable '" + src.name(i) + "' is absent from the target system");
      }
      mt[*where[i]] = m[i];
    }
    out.add_term(mt, c);
  }
  return out;
}

Polynomial homogeneous_component(const Polynomial& f, std::uint32_t d) {
  Polynomial out(f.varsys());
  for (const auto& [m, c] : f.terms()) {
    if (graded_degree(m, *f.varsys()) == static_cast<int>(d)) out.add_term(m, c);
  }
  return out;
}

std::map<std::uint32_t, Polynomial> homogeneous_components(const Polynomial& f) {
  std::map<std::uint32_t, Polynomial> out;
  for (const auto& [m, c] : f.terms()) {
    const auto d = static_cast<std::uint32_t>(graded_degree(m, *f.varsys()));
    out.try_emplace(d, f.varsys()).first->second.add_term(m, c);
  }
  return out;
}

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
  Polynomial out(f.varsys());
  for (const auto& [m, c] : f.terms()) {
    if (m[var] == 0) continue;
    Monomial dm(m);
    dm[var] -= 1;
    out.add_term(dm, c * m[var]);
  }
  return out;
}

std::map<Monomial, Polynomial, GrlexDescending> coefficients_by(
    const Polynomial& f, const std::vector<std::size_t>& split_vars,
    const VarSystemPtr& target) {
  const VarSystem& src = *f.varsys();
  std::vector<bool> is_split(src.size(), false);
  for (auto v : split_vars) is_split.at(v) = true;
  std::vector<std::optional<std::size_t>> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!is_split[i]) where[i] = target->find(src.name(i));
  }

  std::map<Monomial, Polynomial, GrlexDescending> out;
  for (const auto& [m, c] : f.terms()) {
    Monomial key(src.size());
    Monomial rest(target->size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (is_split[i]) {
        key[i] = m[i];
      } else if (where[i]) {
        rest[*where[i]] = m[i];
      } else {
        throw VarSystemMismatch("variable '" + src.name(i) + "' is absent from the target system");
      }
    }
    out.try_emplace(key, target).first->second.add_term(rest, c);
  }
  return out;
}

// ---------------------------------------------------------------- printing

std::string to_string(const Rational& q) {
  return q.str();
}

std::string to_string(const Monomial& m, const VarSystem& vs) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vs.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += ikernel::to_string(mag);
    } else if (mag == 1) {
      out += ikernel::to_string(m, *vs_);
    } else {
      out += ikernel::to_string(mag) + '*' + ikernel::to_string(m, *vs_);
    }
  }
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarSystemPtr& vs) : text_(text), vs_(vs) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty input");
    Polynomial p = expr();
    skip_space();
    if (!at_end()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what +
                     " in \"" + std::string(text_) + "\"");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool starts_factor() const {
    const char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = term();
      if (c == '+') {
        acc += t;
      } else {
        acc -= t;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_space();
      if (peek() == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const auto e = integer_literal();
      if (e > 1'000'000) fail("exponent too large");
      base = base.pow(static_cast<std::uint32_t>(e));
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      Integer den(1);
      skip_space();
      if (peek() == '/') {
        ++pos_;
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
        den = Integer(digits());
        if (den == 0) fail("zero denominator");
      }
      return Polynomial(vs_, Rational(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        ++pos_;
      }
      const auto name = text_.substr(start, pos_ - start);
      auto idx = vs_->find(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return Polynomial::variable(vs_, *idx);
    }
    fail(at_end() ? "unexpected end of input" : "unexpected character");
  }

  std::string digits() {
    const auto start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned long long integer_literal() {
    const auto s = digits();
    if (s.size() > 18) fail("exponent too large");
    return std::stoull(s);
  }

  std::string_view text_;
  VarSystemPtr vs_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarSystemPtr& vs) {
  return Parser(text, vs).parse();
}

}  // namespace ikernel
