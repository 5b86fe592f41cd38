/*
 * json_io.hpp
 * -----------
 * JSON serialization for the file formats and reports:
 *   B-matrix          {"n": int, "B": [[int,...],...]}          (row-major)
 *   Laurent           {"n": int, "terms": [{"e": [...], "c": "decimal"}...]}
 *   property report   {"property", "B0", "path", "k", "holds", "lhs", "rhs"}
 *   exploration       {"closed", "num_seeds", "num_vars", "depth_reached",
 *                      "witness_paths": {digest: [path...]}, ...}
 * Matrices serialize as row-major arrays of rows; coefficients as decimal
 * strings. ordered_json keeps field order (and therefore bytes) stable.
 */
#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>

#include "clusterbox/laurent.hpp"
#include "clusterbox/matrices.hpp"
#include "clusterbox/oracles.hpp"
#include "clusterbox/properties.hpp"
#include "clusterbox/seeds.hpp"

namespace clusterbox {

using ordered_json = nlohmann::ordered_json;

inline ordered_json int_matrix_to_json(const IntMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix int_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be a non-empty array of rows");
    IntMatrix m(static_cast<int>(j.size()), static_cast<int>(j.at(0).size()));
    for (int i = 0; i < m.rows(); ++i) {
        const auto& row = j.at(static_cast<size_t>(i));
        if (static_cast<int>(row.size()) != m.cols()) throw std::invalid_argument("ragged matrix JSON");
        for (int jj = 0; jj < m.cols(); ++jj) m.at(i, jj) = row.at(static_cast<size_t>(jj)).get<std::int64_t>();
    }
    return m;
}

inline ordered_json b_matrix_to_json(const ExchangeMatrix& b) {
    ordered_json j;
    j["n"] = b.n();
    j["B"] = int_matrix_to_json(b.matrix());
    return j;
}

// Accepts the {"n","B"} schema or a bare array of rows.
inline ExchangeMatrix b_matrix_from_json(const nlohmann::json& j) {
    if (j.is_array()) return ExchangeMatrix(int_matrix_from_json(j));
    if (!j.contains("B")) throw std::invalid_argument("B-matrix JSON needs a \"B\" field");
    IntMatrix m = int_matrix_from_json(j.at("B"));
    if (j.contains("n") && j.at("n").get<int>() != m.rows()) {
        throw std::invalid_argument("B-matrix JSON: \"n\" does not match the matrix shape");
    }
    return ExchangeMatrix(std::move(m));
}

inline ordered_json laurent_to_json(const LaurentPolynomial& p) {
    ordered_json j;
    j["n"] = p.var_count();
    ordered_json terms = ordered_json::array();
    for (const auto& t : p.terms()) {
        ordered_json term;
        term["e"] = t.e;
        term["c"] = t.c.get_str();
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline LaurentPolynomial laurent_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    std::vector<LaurentTerm> terms;
    for (const auto& term : j.at("terms")) {
        LaurentTerm t;
        t.e = term.at("e").get<ExponentVector>();
        t.c = mpz_class(term.at("c").get<std::string>());
        terms.push_back(std::move(t));
    }
    return LaurentPolynomial::from_terms(n, std::move(terms));
}

inline ordered_json tree_path_to_json(const TreePath& p) {
    ordered_json j = ordered_json::array();
    for (int k : p.word()) j.push_back(k);
    return j;
}

inline std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline ordered_json property_report_to_json(const PropertyReport& r, const ExchangeMatrix& B0) {
    ordered_json j;
    j["property"] = r.property;
    j["B0"] = b_matrix_to_json(B0);
    j["root_path"] = tree_path_to_json(r.root_path);
    j["path"] = tree_path_to_json(r.path);
    if (r.k > 0) {
        j["k"] = r.k;
    } else {
        j["k"] = nullptr;
    }
    j["holds"] = r.holds;
    j["lhs"] = int_matrix_to_json(r.lhs);
    j["rhs"] = int_matrix_to_json(r.rhs);
    return j;
}

inline ordered_json source_sink_report_to_json(const SourceSinkReport& r, const ExchangeMatrix& B0) {
    ordered_json j = property_report_to_json(r.absolute_form, B0);
    j["rhs_sigma"] = int_matrix_to_json(r.sigma_form.rhs);
    j["sigma_holds"] = r.sigma_form.holds;
    j["holds"] = r.holds();
    j["signed_columns"] = r.signed_columns;
    j["forms_agree"] = r.forms_agree;
    return j;
}

inline ordered_json exploration_to_json(const ExplorationResult& r, bool include_variables = false) {
    ordered_json j;
    j["closed"] = r.closed;
    j["num_seeds"] = r.num_seeds();
    j["num_vars"] = r.num_vars();
    j["depth_reached"] = r.depth_reached;
    ordered_json witness = ordered_json::object();
    for (size_t i = 0; i < r.seeds.size(); ++i) {
        witness[fnv1a64_hex(r.seeds[i].repr())] = tree_path_to_json(r.witness_paths[i]);
    }
    j["witness_paths"] = std::move(witness);
    j["num_edges"] = r.edges.size();
    j["positivity_ok"] = r.positivity_ok;
    if (include_variables) {
        ordered_json vars = ordered_json::array();
        for (const auto& v : r.variables) vars.push_back(v.to_string());
        j["variables"] = std::move(vars);
    }
    return j;
}

inline ordered_json drm_summary_to_json(const DrmSummary& s, const ExchangeMatrix& B0) {
    const auto sweep = [&](const PropertySweep& p) {
        ordered_json j;
        j["checked"] = p.checked;
        j["violations"] = p.violations;
        if (p.first_violation) {
            j["first_violation"] = property_report_to_json(*p.first_violation, B0);
        } else {
            j["first_violation"] = nullptr;
        }
        return j;
    };
    ordered_json j;
    j["D"] = sweep(s.d);
    j["R"] = sweep(s.r);
    j["M"] = sweep(s.m);
    j["r_iff_m_exceptions"] = s.r_iff_m_exceptions;
    j["all_total"] = s.all_total();
    j["all_violated"] = s.all_violated();
    j["consistent"] = s.consistent();
    return j;
}

inline ordered_json search_outcome_to_json(const SearchOutcome& o, const ExchangeMatrix& B0) {
    ordered_json j;
    j["found"] = o.witness.has_value();
    j["paths_examined"] = o.paths_examined;
    j["budget_exhausted"] = o.budget_exhausted;
    if (o.witness) {
        j["witness"] = property_report_to_json(*o.witness, B0);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline ordered_json rank2_report_to_json(const Rank2VerifyReport& r) {
    ordered_json j;
    j["b"] = r.b;
    j["c"] = r.c;
    j["k_max"] = r.k_max;
    j["all_match"] = r.all_match;
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.entries) {
        ordered_json ej;
        ej["k"] = e.k;
        ej["closed_form"] = int_matrix_to_json(e.closed_form);
        ej["bfs"] = int_matrix_to_json(e.bfs);
        ej["match"] = e.match;
        entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline ordered_json finite_type_report_to_json(const FiniteTypeReport& r) {
    ordered_json j;
    j["closed"] = r.closed;
    j["num_seeds"] = r.num_seeds;
    j["num_vars"] = r.num_vars;
    j["depth_reached"] = r.depth_reached;
    j["pairs_checked"] = r.pairs_checked;
    j["d_violations"] = r.d_violations;
    j["r_violations"] = r.r_violations;
    j["m_violations"] = r.m_violations;
    j["properties_total"] = r.properties_total();
    if (r.expected_var_count) {
        j["expected_var_count"] = *r.expected_var_count;
        j["var_count_matches"] = r.var_count_matches;
    }
    return j;
}

}  // namespace clusterbox
