#include "ikernel/harness.hpp"

// Certificate re-checking. Everything here goes through poly arithmetic only:
// derivations and substitutions are re-evaluated from their serialized images.

namespace ikernel {

namespace {

Polynomial apply_images(const std::map<std::string, Polynomial>& images, const Polynomial& f) {
  Polynomial out(f.varsys());
  for (const auto& [name, img] : images) {
    out += img * partial_derivative(f, f.varsys()->index(name));
  }
  return out;
}

VarSystemPtr with_parameters(const std::vector<std::string>& coords,
                             const std::vector<std::string>& params, bool with_q) {
  std::vector<std::string> names = coords;
  std::vector<VarRole> roles(coords.size(), VarRole::coordinate);
  for (const auto& p : params) {
    names.push_back(p);
    roles.push_back(VarRole::parameter);
  }
  if (with_q) {
    for (const auto& p : params) {
      names.push_back(p + "_q");
      roles.push_back(VarRole::parameter);
    }
  }
  return VarSystem::make(std::move(names), std::move(roles));
}

std::string check_membership(const json& cert, const json& algebras) {
  const auto spec = subalgebra_from_json(algebras.at(cert.at("algebra").get<std::string>()));
  const auto target = parse_polynomial(cert.at("target").get<std::string>(), spec.varsys());
  const auto c = certificate_from_json(cert.at("certificate"), spec);
  return c.verifies(spec, target) ? "" : "certificate does not evaluate to its target";
}

std::string check_relation(const json& cert, const json& algebras) {
  const auto spec = subalgebra_from_json(algebras.at(cert.at("algebra").get<std::string>()));
  const auto rel = relation_from_json(cert.at("relation"), spec);
  if (!rel.evaluate().is_zero()) return "relation does not vanish";
  return rel.verifies(spec) ? "" : "a relation coefficient certificate fails";
}

std::string check_annihilation(const json& cert) {
  const auto vs = variables_from_json(cert.at("variables"));
  std::vector<std::map<std::string, Polynomial>> derivations;
  for (const auto& d : cert.at("derivations")) {
    std::map<std::string, Polynomial> images;
    for (const auto& [name, text] : d.items()) {
      images.emplace(name, parse_polynomial(text.get<std::string>(), vs));
    }
    derivations.push_back(std::move(images));
  }
  for (const auto& p : cert.at("polynomials")) {
    const auto f = parse_polynomial(p.get<std::string>(), vs);
    for (const auto& d : derivations) {
      if (!apply_images(d, f).is_zero()) return "polynomial " + f.to_string() + " is not annihilated";
    }
  }
  return "";
}

std::string check_group_law(const json& cert) {
  const auto coords = cert.at("variables").get<std::vector<std::string>>();
  const auto params = cert.at("parameters").get<std::vector<std::string>>();
  const auto ext = with_parameters(coords, params, false);
  const auto comp = with_parameters(coords, params, true);

  SubstitutionMap left, to_q, rule;
  for (const auto& c : coords) {
    const auto it = cert.at("images").find(c);
    const auto img = it == cert.at("images").end()
                         ? Polynomial::variable(ext, c)
                         : parse_polynomial(it->get<std::string>(), ext);
    left.emplace(c, embed(img, comp));
  }
  for (const auto& p : params) {
    to_q.emplace(p, Polynomial::variable(comp, p + "_q"));
    rule.emplace(p, parse_polynomial(cert.at("rule").at(p).get<std::string>(), comp));
  }
  const bool expected = cert.value("expected", true);
  bool holds = true;
  for (const auto& [v, img] : left) {
    const auto composed = substitute(substitute(img, to_q), left);
    if (substitute(img, rule) != composed) holds = false;
  }
  return holds == expected ? "" : "group law outcome differs from the recorded one";
}

}  // namespace

VerifyResult verify_report(const json& report) {
  VerifyResult result;
  if (report.value("schema", 0) != 1) {
    result.failures.push_back("unsupported or missing schema version");
    return result;
  }
  const json algebras = report.value("algebras", json::object());
  std::size_t index = 0;
  for (const auto& cert : report.value("certificates", json::array())) {
    ++result.checked;
    std::string error;
    const auto kind = cert.value("kind", std::string());
    try {
      if (kind == "membership") {
        error = check_membership(cert, algebras);
      } else if (kind == "relation") {
        error = check_relation(cert, algebras);
      } else if (kind == "annihilation") {
        error = check_annihilation(cert);
      } else if (kind == "group_law") {
        error = check_group_law(cert);
      } else {
        error = "unknown certificate kind '" + kind + "'";
      }
    } catch (const std::exception& e) {
      error = std::string("malformed certificate: ") + e.what();
    }
    if (!error.empty()) {
      result.failures.push_back("certificate " + std::to_string(index) + " (" +
                                cert.value("label", kind) + "): " + error);
    }
    ++index;
  }
  return result;
}

}  // namespace ikernel
