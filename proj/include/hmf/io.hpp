#pragma once

#include <json.hpp>

#include <string>

#include "hmf/cusps.hpp"
#include "hmf/qexp.hpp"
#include "hmf/toric.hpp"

namespace hmf {

using json = nlohmann::json;

// Literals. Malformed input raises SchemaError.
//   element: "3/2-1/2*w", "w", "-7"       (w = omega)
//   ideal:   "(g1, g2, ...)", "1", "p:ell:i" (i-th prime above ell)
//   level:   "u1", "u1:<ideal>", "full:<ideal>"
//   weight:  "k1,k2,m1,m2"
//   ring:    "exact", "torsion:ell:i:exponent"
Element parse_element(const Field* F, const std::string& s);
FracIdeal parse_ideal(const Field* F, const std::string& s);
PrimeIdeal parse_prime(const Field* F, const std::string& s);
Level parse_level(const Field* F, const std::string& s);
Weight parse_weight(const std::string& s);
CoeffRing parse_ring(const Field* F, const std::string& s, long zeta_order);

json to_json(const Rational& q);
json to_json(const Element& x);
json to_json(const FracIdeal& I);
json to_json(const Weight& w);
json to_json(const Level& l);
json to_json(const CoeffRing& R);
json to_json(const Coeff& c);
json to_json(const CharValue& v);

const Field* field_from_json(const json& j);
Rational rational_from_json(const json& j);
Element element_from_json(const Field* F, const json& j);
FracIdeal ideal_from_json(const Field* F, const json& j);
Weight weight_from_json(const json& j);
Level level_from_json(const Field* F, const json& j);
CoeffRing ring_from_json(const Field* F, const json& j);
Coeff coeff_from_json(const CoeffRing& R, const json& j);

// {field, level, weight, ring, p, character}
json context_to_json(const Context& ctx);
ContextPtr context_from_json(const json& j);

// {schema, context, B, entries: [{t_index, m, value}], constants}; an optional "meta" object is ignored on input
json family_to_json(const QExpFamily& f);
QExpFamily family_from_json(const json& j);

// {schema, field, M, unit, period, rays: [[x, y], ...]} with rays in HNF coordinates of M
json fan_to_json(const Fan& f);
Fan fan_from_json(const json& j);

json atlas_to_json(const CuspAtlas& A, const std::optional<FracIdeal>& P);

// Throws SchemaError naming the first key outside `allowed`.
void require_keys(const json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional = {});

}  // namespace hmf
