#pragma once

#include "ikernel/algebra.hpp"
#include "ikernel/derivation.hpp"
#include "ikernel/integrality.hpp"
#include "ikernel/poly.hpp"

#include "json.hpp"

namespace ikernel {

using json = nlohmann::json;

/// ["x1", "y1", "z"]; every entry is a coordinate.
json variables_to_json(const VarSystem& vs);
VarSystemPtr variables_from_json(const json& j);

/// {var: "polynomial"} for the nonzero images.
json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const json& j, const VarSystemPtr& vs);

/// {"variables": [...], "generators": [{"label", "polynomial"}], "exact_through"?}
json subalgebra_to_json(const SubalgebraSpec& spec);
SubalgebraSpec subalgebra_from_json(const json& j);

json polynomials_to_json(const std::vector<Polynomial>& polys);
json span_to_json(const SpanBasis& basis);

json certificate_to_json(const MembershipCertificate& cert);
MembershipCertificate certificate_from_json(const json& j, const SubalgebraSpec& spec);

/// {element, degree, monic, coefficients: [{i, polynomial, certificate}]}
json relation_to_json(const RelationCertificate& rel);
RelationCertificate relation_from_json(const json& j, const SubalgebraSpec& spec);

}  // namespace ikernel
