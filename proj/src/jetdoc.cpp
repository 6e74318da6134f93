#include "harmjet/jetdoc.hpp"

#include <fstream>
#include <set>

#include "harmjet/analysis.hpp"

namespace harmjet {

namespace {

int require_int(const nlohmann::json& doc, const std::string& key) {
    if (!doc.contains(key)) throw ParseError("missing field '" + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw ParseError("field '" + key + "' must be an integer");
    return v.get<int>();
}

}  // namespace

Jet parse_jet_document(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("jet document must be a JSON object");
    const int m = require_int(doc, "m");
    if (m < 2) throw ParseError("m must be at least 2");

    GradedPoly tail;
    std::set<std::pair<int, int>> seen;
    int max_term_degree = m;
    if (doc.contains("terms")) {
        const auto& terms = doc.at("terms");
        if (!terms.is_array()) throw ParseError("'terms' must be an array");
        for (std::size_t idx = 0; idx < terms.size(); ++idx) {
            const std::string where = "terms[" + std::to_string(idx) + "]";
            const auto& term = terms[idx];
            if (!term.is_object()) throw ParseError(where + ": must be an object");
            const int i = require_int(term, "i");
            const int j = require_int(term, "j");
            if (i < 0 || j < 0) throw ParseError(where + ": negative exponent");
            if (i + j <= m)
                throw ParseError(where + ": degree " + std::to_string(i + j) +
                                 " not above m = " + std::to_string(m));
            if (!seen.insert({i, j}).second)
                throw ParseError(where + ": duplicate monomial (i=" + std::to_string(i) +
                                 ", j=" + std::to_string(j) + ")");
            if (!term.contains("c") || !term.at("c").is_string())
                throw ParseError(where + ": coefficient 'c' must be a \"p/q\" string");
            Rational c;
            try {
                c = rat_from_string(term.at("c").get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ParseError(where + ": " + e.what());
            }
            tail.add(HomPoly::monomial(i + j, j, c));
            max_term_degree = std::max(max_term_degree, i + j);
        }
    }

    int order = kExactOrder;
    if (doc.contains("declared_order") && !doc.at("declared_order").is_null()) {
        order = require_int(doc, "declared_order");
        if (order < max_term_degree)
            throw ParseError("declared_order below the highest term degree " +
                             std::to_string(max_term_degree));
    }
    try {
        return make_jet(m, std::move(tail), order);
    } catch (const std::domain_error& e) {
        throw ParseError(e.what());
    }
}

Jet load_jet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open jet file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_jet_document(doc);
}

nlohmann::json hompoly_terms(const HomPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (int j = 0; j <= p.degree(); ++j) {
        if (is_zero(p.coeff(j))) continue;
        terms.push_back({{"i", p.degree() - j}, {"j", j}, {"c", rat_to_string(p.coeff(j))}});
    }
    return terms;
}

nlohmann::json graded_terms(const GradedPoly& p) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& [n, c] : p.components())
        parts.push_back({{"n", n}, {"terms", hompoly_terms(c)}});
    return parts;
}

nlohmann::json jet_to_json(const Jet& f) {
    nlohmann::json doc{{"m", f.m}, {"terms", nlohmann::json::array()}};
    for (const auto& [n, c] : f.tail.components())
        for (const auto& term : hompoly_terms(c)) doc["terms"].push_back(term);
    if (f.order != kExactOrder) doc["declared_order"] = f.order;
    return doc;
}

nlohmann::json verdict_document(const Jet& f, const ObstructionReport& report) {
    nlohmann::json doc;
    doc["m"] = f.m;
    doc["order"] = f.order == kExactOrder ? nlohmann::json(nullptr) : nlohmann::json(f.order);
    doc["s_m"] = s_of_m(f.m);
    doc["verdict"] = report.verdict == ObstructionReport::Verdict::equivalent
                         ? "equivalent"
                         : "not_equivalent";
    doc["first_failure"] =
        report.first_failure ? nlohmann::json(*report.first_failure) : nlohmann::json(nullptr);
    nlohmann::json residuals = nlohmann::json::array();
    for (std::size_t i = 0; i < report.covered_S.size(); ++i)
        residuals.push_back(
            {{"k", report.covered_S[i]}, {"terms", hompoly_terms(report.residuals[i])}});
    doc["residuals"] = residuals;
    if (f.m >= 5) doc["codim"] = codim(f.m);
    return doc;
}

}  // namespace harmjet
