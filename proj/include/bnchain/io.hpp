#pragma once

// JSON documents.  Every document carries "format_version": 1 and readers
// reject anything else.  Keys are emitted in a fixed order so output is
// byte-stable.

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "bnchain/certify.hpp"
#include "bnchain/construct.hpp"
#include "bnchain/series.hpp"
#include "bnchain/tableau.hpp"

namespace bnchain::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline void require_version(const Json& doc, const char* what) {
    if (!doc.is_object()) throw MalformedInputError(std::string(what) + " document must be a JSON object");
    if (!doc.contains("format_version")) throw MalformedInputError(std::string(what) + " document lacks format_version");
    const auto& v = doc.at("format_version");
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
        throw MalformedInputError(std::string(what) + " document has unsupported format_version " + v.dump());
    }
}

template <class T>
T field(const Json& obj, const char* key, const char* what) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw MalformedInputError(std::string(what) + ": missing field '" + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw MalformedInputError(std::string(what) + ": field '" + key + "' has the wrong type");
    }
}

inline const Json& array_field(const Json& obj, const char* key, const char* what) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array()) {
        throw MalformedInputError(std::string(what) + ": field '" + key + "' must be an array");
    }
    return obj.at(key);
}

} // namespace detail

[[nodiscard]] inline Json params_json(const BnParams& p) { return Json{{"g", p.g}, {"r", p.r}, {"d", p.d}}; }

[[nodiscard]] inline Json cell_json(const Cell& c) { return Json::array({c.row, c.col}); }

// -- Filling ----------------------------------------------------------------

[[nodiscard]] inline Json to_json(const Filling& f) {
    Json cells = Json::array();
    for (int row = 1; row <= f.beta(); ++row) {
        for (int col = 1; col <= f.alpha(); ++col) cells.push_back({{"row", row}, {"col", col}, {"index", f.at(row, col)}});
    }
    return Json{{"format_version", kFormatVersion}, {"alpha", f.alpha()}, {"beta", f.beta()}, {"g", f.g()}, {"cells", cells}};
}

[[nodiscard]] inline Filling filling_from_json(const Json& doc) {
    detail::require_version(doc, "filling");
    const int alpha = detail::field<int>(doc, "alpha", "filling");
    const int beta = detail::field<int>(doc, "beta", "filling");
    const int g = detail::field<int>(doc, "g", "filling");
    if (alpha < 1 || beta < 1 || alpha > 1000 || beta > 1000) throw MalformedInputError("filling: bad rectangle size");
    std::vector<int> cells(static_cast<std::size_t>(alpha * beta), 0);
    std::vector<bool> seen(cells.size(), false);
    for (const auto& c : detail::array_field(doc, "cells", "filling")) {
        const int row = detail::field<int>(c, "row", "filling cell");
        const int col = detail::field<int>(c, "col", "filling cell");
        const int index = detail::field<int>(c, "index", "filling cell");
        if (row < 1 || row > beta || col < 1 || col > alpha) {
            throw MalformedInputError("filling: cell " + to_string(Cell{row, col}) + " outside the rectangle");
        }
        const auto pos = static_cast<std::size_t>((row - 1) * alpha + (col - 1));
        if (seen[pos]) throw MalformedInputError("filling: cell " + to_string(Cell{row, col}) + " given twice");
        seen[pos] = true;
        cells[pos] = index;
    }
    for (std::size_t pos = 0; pos < seen.size(); ++pos) {
        if (!seen[pos]) {
            throw MalformedInputError("filling: cell " +
                                      to_string(Cell{static_cast<int>(pos) / alpha + 1, static_cast<int>(pos) % alpha + 1}) +
                                      " is missing");
        }
    }
    return Filling(alpha, beta, g, std::move(cells));
}

// -- WeightedFilling ----------------------------------------------------------

[[nodiscard]] inline Json to_json(const WeightedFilling& w) {
    Json entries = Json::array();
    for (const auto& [cell, box] : w.boxes()) {
        for (const auto& e : box) {
            entries.push_back({{"row", cell.row}, {"col", cell.col}, {"index", e.index}, {"weight", e.weight}});
        }
    }
    return Json{{"format_version", kFormatVersion}, {"alpha", w.alpha()}, {"beta", w.beta()}, {"g", w.g()}, {"entries", entries}};
}

[[nodiscard]] inline WeightedFilling weighted_from_json(const Json& doc) {
    detail::require_version(doc, "weighted filling");
    WeightedFilling w(detail::field<int>(doc, "alpha", "weighted filling"), detail::field<int>(doc, "beta", "weighted filling"),
                      detail::field<int>(doc, "g", "weighted filling"));
    for (const auto& e : detail::array_field(doc, "entries", "weighted filling")) {
        w.add(detail::field<int>(e, "row", "weighted entry"), detail::field<int>(e, "col", "weighted entry"),
              detail::field<int>(e, "index", "weighted entry"), detail::field<int>(e, "weight", "weighted entry"));
    }
    return w;
}

// -- ChainSpec ----------------------------------------------------------------

[[nodiscard]] inline Json to_json(const ChainSpec& chain) {
    Json special = Json::array();
    for (const auto& [component, order] : chain.special()) special.push_back({{"component", component}, {"order", order}});
    return Json{{"format_version", kFormatVersion}, {"g", chain.g()}, {"special", special}};
}

[[nodiscard]] inline ChainSpec chain_from_json(const Json& doc) {
    detail::require_version(doc, "chain");
    const int g = detail::field<int>(doc, "g", "chain");
    std::map<int, int> special;
    for (const auto& s : detail::array_field(doc, "special", "chain")) {
        const int component = detail::field<int>(s, "component", "chain entry");
        if (!special.emplace(component, detail::field<int>(s, "order", "chain entry")).second) {
            throw MalformedInputError("chain: component " + std::to_string(component) + " listed twice");
        }
    }
    return ChainSpec(g, std::move(special));
}

// -- Reports --------------------------------------------------------------

[[nodiscard]] inline Json to_json(const ValidationReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json cells = Json::array();
        for (const auto& c : v.cells) cells.push_back(cell_json(c));
        violations.push_back({{"kind", kind_name(v.kind)}, {"message", v.message}, {"cells", cells}});
    }
    return Json{{"format_version", kFormatVersion}, {"valid", report.valid()}, {"violations", violations}};
}

[[nodiscard]] inline Json checks_json(const std::vector<CheckRecord>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) {
        out.push_back({{"label", c.label}, {"lhs", c.lhs}, {"relation", c.relation}, {"rhs", c.rhs}, {"holds", c.holds}});
    }
    return out;
}

// -- LimitSeriesTable -----------------------------------------------------------

[[nodiscard]] inline Json to_json(const LineBundleDescriptor& L) {
    if (!L.is_special()) return Json{{"kind", "generic"}};
    return Json{{"kind", "special"}, {"a", L.a}, {"b", L.b}};
}

[[nodiscard]] inline Json to_json(const LimitSeriesTable& t) {
    Json bundles = Json::array();
    for (const auto& L : t.bundles) bundles.push_back(to_json(L));
    return Json{{"format_version", kFormatVersion},
                {"g", t.p.g},
                {"r", t.p.r},
                {"d", t.p.d},
                {"chain", to_json(t.chain)},
                {"u", t.u},
                {"v", t.v},
                {"bundles", bundles}};
}

[[nodiscard]] inline LimitSeriesTable series_from_json(const Json& doc) {
    detail::require_version(doc, "series table");
    const BnParams p = BnParams::make(detail::field<Int>(doc, "g", "series table"), detail::field<Int>(doc, "r", "series table"),
                                      detail::field<Int>(doc, "d", "series table"));
    if (!doc.contains("chain")) throw MalformedInputError("series table: missing field 'chain'");
    LimitSeriesTable t{p, chain_from_json(doc.at("chain")), {}, {}, {}};
    t.u = detail::field<std::vector<std::vector<Int>>>(doc, "u", "series table");
    t.v = detail::field<std::vector<std::vector<Int>>>(doc, "v", "series table");
    for (const auto& L : detail::array_field(doc, "bundles", "series table")) {
        const auto kind = detail::field<std::string>(L, "kind", "bundle");
        if (kind == "generic") {
            t.bundles.push_back(LineBundleDescriptor::generic(p.d));
        } else if (kind == "special") {
            t.bundles.push_back(LineBundleDescriptor::special(detail::field<Int>(L, "a", "bundle"), detail::field<Int>(L, "b", "bundle")));
        } else {
            throw MalformedInputError("bundle kind must be 'generic' or 'special', got '" + kind + "'");
        }
    }
    const auto g = static_cast<std::size_t>(p.g);
    if (t.u.size() != g || t.v.size() != g || t.bundles.size() != g) {
        throw MalformedInputError("series table: u, v and bundles need g entries");
    }
    for (std::size_t i = 0; i < g; ++i) {
        if (t.u[i].size() != static_cast<std::size_t>(p.alpha()) || t.v[i].size() != static_cast<std::size_t>(p.alpha())) {
            throw MalformedInputError("series table: component " + std::to_string(i + 1) + " needs r+1 slots");
        }
    }
    if (t.chain.g() != p.g) throw MalformedInputError("series table: chain g differs from table g");
    return t;
}

// -- Layouts and certificates ------------------------------------------------------

[[nodiscard]] inline Json to_json(const SpotLayout& s) {
    return Json{{"format_version", kFormatVersion},
                {"source", s.source == LayoutSource::Separation ? "separation" : "staircase"},
                {"alpha", s.alpha},
                {"beta", s.beta},
                {"e", s.e},
                {"t", s.t},
                {"l", s.l},
                {"eps", s.eps},
                {"a", s.a},
                {"b", s.b}};
}

[[nodiscard]] inline Json to_json(const PetriCertificate& c) {
    Json products = Json::array();
    for (const auto& p : c.products) products.push_back({{"i", p.i}, {"j", p.j}, {"k", p.k}});
    return Json{{"format_version", kFormatVersion},
                {"certificate", "petri"},
                {"params", params_json(c.p)},
                {"filling", to_json(c.f)},
                {"chain", to_json(c.chain)},
                {"products", products},
                {"dual_checked", c.dual_checked},
                {"checks", checks_json(c.checks)}};
}

[[nodiscard]] inline Json to_json(const MaxRankCertificate& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        Json rejected = Json::array();
        for (const auto& p : s.rejected) {
            rejected.push_back({{"i", p.i}, {"j", p.j}, {"ord_p", p.ord_p}, {"ord_q", p.ord_q}});
        }
        steps.push_back({{"k", s.k},
                         {"a", s.a},
                         {"t", s.t},
                         {"eliminated", Json::array({s.eliminated.first, s.eliminated.second})},
                         {"ord_p", s.ord_p},
                         {"ord_q", s.ord_q},
                         {"p_threshold", s.p_threshold},
                         {"q_threshold", s.q_threshold},
                         {"rejected", rejected}});
    }
    return Json{{"format_version", kFormatVersion},
                {"certificate", "maxrank_m2"},
                {"r", c.r},
                {"g", c.g},
                {"d", c.d},
                {"filling", to_json(c.f)},
                {"degree_distribution", c.degree_distribution},
                {"steps", steps},
                {"table_divergences", c.table_divergences},
                {"extensions", c.extensions_note},
                {"checks", checks_json(c.checks)}};
}

[[nodiscard]] inline Json to_json(const HypothesisReport& h) {
    return Json{{"input", params_json(h.input)},
                {"oriented", params_json(h.oriented)},
                {"dualized", h.dualized},
                {"alpha", h.alpha},
                {"beta", h.beta},
                {"e", h.e},
                {"case", h.square ? "square" : "strict"},
                {"theorem_limit", h.theorem_limit},
                {"lemma_limit", h.lemma_limit},
                {"holds", h.holds},
                {"limits_disagree", h.limits_disagree}};
}

[[nodiscard]] inline Json to_json(const DistinctnessVerdict& v) {
    Json hyps = Json::array();
    for (const auto& h : v.hypotheses) hyps.push_back(to_json(h));
    return Json{{"format_version", kFormatVersion},
                {"verdict", verdict_name(v.verdict)},
                {"A1", v.A1 ? Json(*v.A1) : Json(nullptr)},
                {"bound2", v.bound2 ? Json(*v.bound2) : Json(nullptr)},
                {"reason", v.reason},
                {"hypotheses", hyps},
                {"note", v.note},
                {"checks", checks_json(v.checks)}};
}

[[nodiscard]] inline Json to_json(const InclusionCandidate& c) {
    return Json{{"family", c.family},
                {"alpha1", c.alpha1},
                {"smaller", params_json(c.smaller)},
                {"larger", params_json(c.larger)},
                {"larger_oriented", params_json(c.larger_oriented)},
                {"status", status_name(c.status)},
                {"checks", checks_json(c.checks)}};
}

[[nodiscard]] inline Json to_json(const std::vector<InclusionCandidate>& cs) {
    Json list = Json::array();
    for (const auto& c : cs) list.push_back(to_json(c));
    return Json{{"format_version", kFormatVersion}, {"candidates", list}};
}

[[nodiscard]] inline Json parse(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

} // namespace bnchain::io
