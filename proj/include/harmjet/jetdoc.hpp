#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "harmjet/jetflow.hpp"

namespace harmjet {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Jet document: {"m": 5, "terms": [{"i": 6, "j": 0, "c": "1/1"}, ...],
// "declared_order": 6}. Rationals travel as "p/q" strings, term degrees must
// exceed m, duplicate (i,j) pairs are rejected. Without declared_order the
// document denotes the polynomial itself (every higher coefficient zero).
Jet parse_jet_document(const nlohmann::json& doc);
Jet load_jet_file(const std::string& path);

nlohmann::json jet_to_json(const Jet& f);

// Monomial listing [{"i": x-exp, "j": y-exp, "c": "p/q"}], zeros omitted.
nlohmann::json hompoly_terms(const HomPoly& p);
// Array of {"n": degree, "terms": [...]} for the supported degrees.
nlohmann::json graded_terms(const GradedPoly& p);

nlohmann::json verdict_document(const Jet& f, const ObstructionReport& report);

}  // namespace harmjet
