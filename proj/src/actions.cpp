#include "ikernel/actions.hpp"

namespace ikernel {

ParametricSubstitution::ParametricSubstitution(VarSystemPtr coords, std::vector<std::string> params,
                                               std::map<std::string, Rational> identity_values,
                                               const std::map<std::string, std::string>& images)
    : coords_(std::move(coords)), params_(std::move(params)), identity_(std::move(identity_values)) {
  auto names = coords_->names();
  auto roles = coords_->roles();
  for (const auto& p : params_) {
    names.push_back(p);
    roles.push_back(VarRole::parameter);
    if (!identity_.count(p)) {
      throw std::invalid_argument("parameter '" + p + "' has no identity value");
    }
  }
  extended_ = VarSystem::make(std::move(names), std::move(roles));

  for (const auto& [name, text] : images) {
    coords_->index(name);  // throws on an unknown coordinate
    images_.emplace(name, parse_polynomial(text, extended_));
  }
  for (std::size_t i = 0; i < coords_->size(); ++i) {
    images_.try_emplace(coords_->name(i), Polynomial::variable(extended_, coords_->name(i)));
  }
}

Polynomial ParametricSubstitution::apply(const Polynomial& f) const {
  if (!same_system(f.varsys(), coords_)) {
    throw VarSystemMismatch("action applied to a polynomial of another system");
  }
  return substitute(f, images_, extended_);
}

bool is_invariant(const Polynomial& f, const ParametricSubstitution& s) {
  return s.apply(f) == s.lift(f);
}

VarSystemPtr composition_system(const ParametricSubstitution& s) {
  auto names = s.extended()->names();
  auto roles = s.extended()->roles();
  for (const auto& p : s.params()) {
    names.push_back(p + "_q");
    roles.push_back(VarRole::parameter);
  }
  return VarSystem::make(std::move(names), std::move(roles));
}

SubstitutionMap compose_with_itself(const ParametricSubstitution& s) {
  const auto comp = composition_system(s);
  SubstitutionMap left;   // σ_p
  SubstitutionMap to_q;
  for (const auto& p : s.params()) to_q.emplace(p, Polynomial::variable(comp, p + "_q"));
  for (const auto& [v, img] : s.images()) left.emplace(v, embed(img, comp));

  SubstitutionMap out;
  for (const auto& [v, img] : s.images()) {
    Polynomial right = substitute(img, to_q, comp);  // σ_q(v)
    out.emplace(v, substitute(right, left, comp));
  }
  return out;
}

bool check_group_law(const ParametricSubstitution& s, const CompositionRule& rule) {
  const auto comp = composition_system(s);
  SubstitutionMap composed_params;
  for (const auto& p : s.params()) {
    auto it = rule.find(p);
    if (it == rule.end()) throw std::invalid_argument("composition rule misses parameter '" + p + "'");
    composed_params.emplace(p, parse_polynomial(it->second, comp));
  }
  const auto composed = compose_with_itself(s);
  for (const auto& [v, img] : s.images()) {
    if (substitute(img, composed_params, comp) != composed.at(v)) return false;
  }
  return true;
}

Derivation infinitesimal(const ParametricSubstitution& s, const std::string& param) {
  const auto pi = s.extended()->index(param);
  if (s.extended()->role(pi) != VarRole::parameter) {
    throw std::invalid_argument("'" + param + "' is not a parameter of the action");
  }
  SubstitutionMap at_identity;
  for (const auto& [p, value] : s.identity_values()) {
    at_identity.emplace(p, Polynomial(s.coords(), value));
  }
  std::map<std::string, Polynomial> images;
  for (const auto& [v, img] : s.images()) {
    images.emplace(v, substitute(partial_derivative(img, pi), at_identity, s.coords()));
  }
  return Derivation(s.coords(), images);
}

StabilityReport check_stability(const ParametricSubstitution& s, const GradedBasis& a) {
  if (!same_system(a.varsys(), s.coords())) throw VarSystemMismatch("stability: system mismatch");
  std::vector<std::size_t> param_idx;
  for (const auto& p : s.params()) param_idx.push_back(s.extended()->index(p));

  StabilityReport report;
  for (const auto& g : a.spec().generators()) {
    for (auto& [pm, coeff] : coefficients_by(s.apply(g.poly), param_idx, s.coords())) {
      auto cert = membership(a, coeff);
      if (!cert) report.stable = false;
      report.entries.push_back({g.label, to_string(pm, *s.extended()), coeff, std::move(cert)});
    }
  }
  return report;
}

StandardInstance build_standard_instance(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("n and m must be positive");
  if (n > 8 || m > 8) throw std::invalid_argument("n and m above 8 are not supported");

  std::vector<std::string> names;
  std::vector<std::size_t> xs, ys;
  for (std::size_t i = 1; i <= n; ++i) {
    xs.push_back(names.size());
    names.push_back("x" + std::to_string(i));
  }
  for (std::size_t j = 1; j <= m; ++j) {
    ys.push_back(names.size());
    names.push_back("y" + std::to_string(j));
  }
  const std::size_t zi = names.size();
  names.emplace_back("z");
  const auto vs = VarSystem::coordinates(names);
  auto var = [&](const std::string& name) { return Polynomial::variable(vs, name); };

  std::vector<Generator> gens;
  for (std::size_t j = 1; j <= m; ++j) gens.push_back({"y" + std::to_string(j), var("y" + std::to_string(j))});
  gens.push_back({"z", var("z")});
  for (std::size_t i = 1; i <= n; ++i) {
    const auto x = var("x" + std::to_string(i));
    const auto z = var("z");
    gens.push_back({"t" + std::to_string(i), x * x + x * z});
    gens.push_back({"s" + std::to_string(i), x * x * x + x * x * z});
  }
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::string label;
      Polynomial mono = var("y" + std::to_string(j));
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) {
          label += "x" + std::to_string(i + 1);
          mono = mono * var("x" + std::to_string(i + 1));
        }
      }
      gens.push_back({label + "y" + std::to_string(j), mono});
    }
  }
  const std::size_t raw = gens.size();

  std::map<std::string, std::string> psi_images{{"z", "z + b*y1"}};
  std::map<std::string, Polynomial> d2_images;
  for (std::size_t j = 1; j <= m; ++j) {
    const auto y = "y" + std::to_string(j);
    psi_images.emplace(y, "a*" + y);
    d2_images.emplace(y, var(y));
  }

  return StandardInstance{
      n,
      m,
      vs,
      xs,
      ys,
      zi,
      raw,
      SubalgebraSpec(vs, deduplicate(std::move(gens))),
      ParametricSubstitution(vs, {"t"}, {{"t", Rational(0)}}, {{"z", "z + t*y1"}}),
      ParametricSubstitution(vs, {"a", "b"}, {{"a", Rational(1)}, {"b", Rational(0)}}, psi_images),
      {{"t", "t + t_q"}},
      {{"a", "a*a_q"}, {"b", "b + a*b_q"}},
      Derivation(vs, {{"z", var("y1")}}),
      Derivation(vs, d2_images),
      MonomialAlgebra{vs, xs, ys},
  };
}

const ParametricSubstitution& action_by_tag(const StandardInstance& inst, const std::string& tag) {
  if (tag == "ga") return inst.phi;
  if (tag == "aut") return inst.psi;
  throw std::invalid_argument("unknown action tag '" + tag + "' (expected ga or aut)");
}

}  // namespace ikernel
