#include "ikernel/serialize.hpp"

namespace ikernel {

json variables_to_json(const VarSystem& vs) {
  return json(vs.names());
}

VarSystemPtr variables_from_json(const json& j) {
  return VarSystem::coordinates(j.get<std::vector<std::string>>());
}

json derivation_to_json(const Derivation& d) {
  json out = json::object();
  for (const auto& [name, img] : d.images()) out[name] = img.to_string();
  return out;
}

Derivation derivation_from_json(const json& j, const VarSystemPtr& vs) {
  std::map<std::string, Polynomial> images;
  for (const auto& [name, text] : j.items()) {
    images.emplace(name, parse_polynomial(text.get<std::string>(), vs));
  }
  return Derivation(vs, images);
}

json subalgebra_to_json(const SubalgebraSpec& spec) {
  json gens = json::array();
  for (const auto& g : spec.generators()) {
    gens.push_back({{"label", g.label}, {"polynomial", g.poly.to_string()}});
  }
  json out{{"variables", variables_to_json(*spec.varsys())}, {"generators", gens}};
  if (spec.exact_through()) out["exact_through"] = *spec.exact_through();
  return out;
}

SubalgebraSpec subalgebra_from_json(const json& j) {
  const auto vs = variables_from_json(j.at("variables"));
  std::vector<Generator> gens;
  for (const auto& g : j.at("generators")) {
    gens.push_back({g.at("label").get<std::string>(),
                    parse_polynomial(g.at("polynomial").get<std::string>(), vs)});
  }
  std::optional<std::uint32_t> through;
  if (j.contains("exact_through")) through = j.at("exact_through").get<std::uint32_t>();
  return SubalgebraSpec(vs, std::move(gens), true, through);
}

json polynomials_to_json(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

json span_to_json(const SpanBasis& basis) {
  return polynomials_to_json(basis.elements());
}

json certificate_to_json(const MembershipCertificate& cert) {
  return {{"expression", cert.expression.to_string()}};
}

MembershipCertificate certificate_from_json(const json& j, const SubalgebraSpec& spec) {
  return {parse_polynomial(j.at("expression").get<std::string>(), spec.label_system())};
}

json relation_to_json(const RelationCertificate& rel) {
  json coeffs = json::array();
  for (const auto& c : rel.coefficients) {
    coeffs.push_back({{"i", c.index},
                      {"polynomial", c.value.to_string()},
                      {"certificate", certificate_to_json(c.certificate)}});
  }
  return {{"element", rel.element.to_string()},
          {"degree", rel.degree},
          {"monic", rel.monic},
          {"coefficients", coeffs}};
}

RelationCertificate relation_from_json(const json& j, const SubalgebraSpec& spec) {
  const auto& vs = spec.varsys();
  RelationCertificate rel{parse_polynomial(j.at("element").get<std::string>(), vs),
                          j.at("degree").get<std::size_t>(), j.at("monic").get<bool>(), {}};
  for (const auto& c : j.at("coefficients")) {
    rel.coefficients.push_back({c.at("i").get<std::size_t>(),
                                parse_polynomial(c.at("polynomial").get<std::string>(), vs),
                                certificate_from_json(c.at("certificate"), spec)});
  }
  return rel;
}

}  // namespace ikernel
