/*
 * properties.hpp
 * --------------
 * Checkers for the three d-vector identities and their relatives:
 *
 *   D  (duality)             (D_t from (B0,t0))^T == D_{t0} from ((-B_t)^T, t)
 *   R  (initial-seed move)   D_t from (B1,t1) == J_k D_t + max([B0^{k.}]_+ D_t, [-B0^{k.}]_+ D_t)
 *   M  (box top from D)      M_t == -D_t + max([B0]_+ D_t, [-B0]_+ D_t)
 *   MDinit                   row k of D_t flips to row k of M_t under an initial move
 *   source-sink forms        J_k D_t + [ |B0^{k.}| D_t ]_+   and   sigma_k D_t
 *
 * All matrices are produced by the final-seed recursion (cross-checked against
 * Laurent expansions in the vectors tests), which keeps sweeps integer-only.
 * The left side of R, MDinit and the source-sink forms is recomputed from the
 * mutated initial seed along the reduced walk k.path.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterbox/matrices.hpp"
#include "clusterbox/parallel.hpp"
#include "clusterbox/seeds.hpp"
#include "clusterbox/vectors.hpp"

namespace clusterbox {

using RootVector = std::vector<std::int64_t>;

struct PropertyReport {
    std::string property;
    bool holds = false;
    TreePath root_path;  // initial vertex of the instance, as a walk from the preset root
    TreePath path;
    int k = 0;  // 0 when the property has no direction argument
    IntMatrix lhs, rhs;
};

inline ExchangeMatrix exchange_matrix_at(const ExchangeMatrix& B0, const TreePath& path) {
    ExchangeMatrix b = B0;
    for (int k : path.word()) b = mutate(b, k);
    return b;
}

inline PropertyReport check_property_D(const ExchangeMatrix& B0, const TreePath& path) {
    PropertyReport r;
    r.property = "D";
    r.path = path;
    r.lhs = transpose(d_matrix_recursive(B0, path));
    const ExchangeMatrix b_t = exchange_matrix_at(B0, path);
    r.rhs = d_matrix_recursive(ExchangeMatrix(transpose(-b_t.matrix())), path.reversed());
    r.holds = r.lhs == r.rhs;
    return r;
}

// Duality instance with the initial vertex moved to the end of `root_path`.
// Duality quantifies over ordered pairs of tree vertices; sweeping only
// root-based instances can miss violations (they do on annulus quivers).
inline PropertyReport check_property_D_at(const ExchangeMatrix& B0, const TreePath& root_path,
                                          const TreePath& path) {
    PropertyReport r = check_property_D(exchange_matrix_at(B0, root_path), path);
    r.root_path = root_path;
    return r;
}

inline PropertyReport check_property_R(const ExchangeMatrix& B0, const TreePath& path, int k) {
    require_direction(B0, k);
    PropertyReport r;
    r.property = "R";
    r.path = path;
    r.k = k;
    r.lhs = d_matrix_recursive(mutate(B0, k), path.prepended_reduced(k));
    const DMatrix d = d_matrix_recursive(B0, path);
    const IntMatrix bk = row_mask(B0.matrix(), k);
    r.rhs = j_matrix(B0.n(), k) * d + entrywise_max(positive_part(bk) * d, positive_part(-bk) * d);
    r.holds = r.lhs == r.rhs;
    return r;
}

inline PropertyReport check_property_M(const ExchangeMatrix& B0, const TreePath& path) {
    PropertyReport r;
    r.property = "M";
    r.path = path;
    r.lhs = m_matrix_recursive(B0, path);
    const DMatrix d = d_matrix_recursive(B0, path);
    r.rhs = -d + entrywise_max(positive_part(B0.matrix()) * d, positive_part(-B0.matrix()) * d);
    r.holds = r.lhs == r.rhs;
    return r;
}

inline bool rows_equal(const IntMatrix& a, const IntMatrix& b, int k) {
    for (int j = 0; j < a.cols(); ++j) {
        if (a.at(k - 1, j) != b.at(k - 1, j)) return false;
    }
    return true;
}

// Row-replacement law for an initial-seed move: formula on the left, direct
// recomputation from the mutated initial seed on the right.
inline PropertyReport check_md_init(const ExchangeMatrix& B0, int k, const TreePath& path) {
    require_direction(B0, k);
    PropertyReport r;
    r.property = "MDinit";
    r.path = path;
    r.k = k;
    r.lhs = d_after_initial_mutation(B0, k, path);
    r.rhs = d_matrix_recursive(mutate(B0, k), path.prepended_reduced(k));
    r.holds = r.lhs == r.rhs;
    return r;
}

// Piecewise linear modification of the simple reflection s_k on simple-root
// coordinates: coordinate k maps to -v_k + sum_l |b_kl| [v_l]_+.
inline RootVector sigma_k(const ExchangeMatrix& B0, int k, const RootVector& v) {
    require_direction(B0, k);
    if (static_cast<int>(v.size()) != B0.n()) throw std::invalid_argument("root vector length mismatch");
    RootVector r = v;
    std::int64_t acc = 0;
    for (int l = 0; l < B0.n(); ++l) {
        const std::int64_t w = std::abs(B0.at(k - 1, l));
        acc = checked_add(acc, checked_mul(w, std::max<std::int64_t>(v[static_cast<size_t>(l)], 0)));
    }
    r[static_cast<size_t>(k) - 1] = checked_add(-v[static_cast<size_t>(k) - 1], acc);
    return r;
}

inline IntMatrix sigma_k_columns(const ExchangeMatrix& B0, int k, const IntMatrix& m) {
    IntMatrix r = m;
    RootVector col(static_cast<size_t>(m.rows()));
    for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < m.rows(); ++i) col[static_cast<size_t>(i)] = m.at(i, j);
        const RootVector s = sigma_k(B0, k, col);
        for (int i = 0; i < m.rows(); ++i) r.at(i, j) = s[static_cast<size_t>(i)];
    }
    return r;
}

inline bool has_signed_columns(const IntMatrix& m) {
    for (int j = 0; j < m.cols(); ++j) {
        bool pos = false, neg = false;
        for (int i = 0; i < m.rows(); ++i) {
            pos |= m.at(i, j) > 0;
            neg |= m.at(i, j) < 0;
        }
        if (pos && neg) return false;
    }
    return true;
}

inline bool has_signed_rows(const IntMatrix& m) { return has_signed_columns(transpose(m)); }

struct SourceSinkReport {
    PropertyReport absolute_form;  // J_k D + [ |B0^{k.}| D ]_+
    PropertyReport sigma_form;     // sigma_k applied column-wise to D
    bool signed_columns = false;   // has_signed_columns(D_t)
    bool forms_agree = false;      // the two right-hand sides coincide

    bool holds() const { return absolute_form.holds && sigma_form.holds; }
};

// Both source-sink right-hand sides against direct recomputation. When D_t
// has signed columns the two right-hand sides must coincide.
inline SourceSinkReport check_source_sink(const ExchangeMatrix& B0, int k, const TreePath& path) {
    require_direction(B0, k);
    if (!is_source_sink(B0, k)) {
        throw std::invalid_argument("direction is not a source-sink move for this exchange matrix");
    }
    SourceSinkReport r;
    const DMatrix d = d_matrix_recursive(B0, path);
    const DMatrix lhs = d_matrix_recursive(mutate(B0, k), path.prepended_reduced(k));

    r.absolute_form.property = "source-sink";
    r.absolute_form.path = path;
    r.absolute_form.k = k;
    r.absolute_form.lhs = lhs;
    r.absolute_form.rhs = j_matrix(B0.n(), k) * d + positive_part(abs(row_mask(B0.matrix(), k)) * d);
    r.absolute_form.holds = r.absolute_form.lhs == r.absolute_form.rhs;

    r.sigma_form.property = "sigma";
    r.sigma_form.path = path;
    r.sigma_form.k = k;
    r.sigma_form.lhs = lhs;
    r.sigma_form.rhs = sigma_k_columns(B0, k, d);
    r.sigma_form.holds = r.sigma_form.lhs == r.sigma_form.rhs;

    r.signed_columns = has_signed_columns(d);
    r.forms_agree = r.absolute_form.rhs == r.sigma_form.rhs;
    return r;
}

struct PropertySweep {
    size_t checked = 0;
    size_t violations = 0;
    std::optional<PropertyReport> first_violation;

    void record(const PropertyReport& report) {
        ++checked;
        if (!report.holds) {
            ++violations;
            if (!first_violation) first_violation = report;
        }
    }
    bool total() const { return violations == 0; }
};

struct DrmSummary {
    PropertySweep d, r, m;
    size_t r_iff_m_exceptions = 0;  // instances where R at (t,k) and row k of M disagree

    bool all_total() const { return d.total() && r.total() && m.total(); }
    bool all_violated() const { return !d.total() && !r.total() && !m.total(); }
    bool consistent() const { return all_total() || all_violated(); }
};

// Sweeps the R and M identities over every root-based path of length <=
// depth (and every direction k for R), and the duality over every ordered
// pair of vertices with |root walk| + |target walk| <= depth. Records the
// three per-property pass sets plus the per-instance equivalence "R at (t,k)
// holds iff the M identity holds in row k of t" (which holds unconditionally).
inline DrmSummary check_drm_equivalence(const ExchangeMatrix& B0, int depth, unsigned threads = 1) {
    const auto paths = enumerate_paths(B0.n(), depth);

    struct PathResult {
        PropertyReport m;
        std::vector<PropertyReport> r;       // per direction
        std::vector<bool> m_row_holds;       // per direction
        std::vector<PropertyReport> d;       // duality instances rooted at this vertex
    };
    const auto results = parallel_map<PathResult>(paths.size(), threads, [&](size_t i) {
        const TreePath root{paths[i]};
        PathResult pr;
        pr.m = check_property_M(B0, root);
        pr.r.reserve(static_cast<size_t>(B0.n()));
        pr.m_row_holds.reserve(static_cast<size_t>(B0.n()));
        for (int k = 1; k <= B0.n(); ++k) {
            pr.r.push_back(check_property_R(B0, root, k));
            pr.m_row_holds.push_back(rows_equal(pr.m.lhs, pr.m.rhs, k));
        }
        const ExchangeMatrix b_root = exchange_matrix_at(B0, root);
        for (const auto& word : enumerate_paths(B0.n(), depth - static_cast<int>(root.length()))) {
            PropertyReport d = check_property_D(b_root, TreePath{word});
            d.root_path = root;
            pr.d.push_back(std::move(d));
        }
        return pr;
    });

    DrmSummary summary;
    for (const auto& pr : results) {
        summary.m.record(pr.m);
        for (size_t ki = 0; ki < pr.r.size(); ++ki) {
            summary.r.record(pr.r[ki]);
            if (pr.r[ki].holds != pr.m_row_holds[ki]) ++summary.r_iff_m_exceptions;
        }
        for (const auto& d : pr.d) summary.d.record(d);
    }
    return summary;
}

struct SearchOutcome {
    std::optional<PropertyReport> witness;
    size_t paths_examined = 0;
    bool budget_exhausted = false;  // stopped because the seed budget was hit
};

namespace properties_detail {

inline std::vector<std::vector<int>> enumerate_paths_capped(int n, int max_depth, size_t cap, bool& hit_cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> word;
    hit_cap = false;
    std::function<bool()> rec = [&]() {
        if (out.size() == cap) {
            hit_cap = true;
            return false;
        }
        out.push_back(word);
        if (static_cast<int>(word.size()) == max_depth) return true;
        for (int k = 1; k <= n; ++k) {
            if (!word.empty() && word.back() == k) continue;
            word.push_back(k);
            const bool go_on = rec();
            word.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    rec();
    return out;
}

inline std::vector<std::vector<int>> paths_of_exact_length(int n, int len, size_t cap, bool& hit_cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> word;
    hit_cap = false;
    std::function<bool()> rec = [&]() {
        if (static_cast<int>(word.size()) == len) {
            if (out.size() == cap) {
                hit_cap = true;
                return false;
            }
            out.push_back(word);
            return true;
        }
        for (int k = 1; k <= n; ++k) {
            if (!word.empty() && word.back() == k) continue;
            word.push_back(k);
            const bool go_on = rec();
            word.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    rec();
    return out;
}

// First duality violation over ordered vertex pairs, swept by increasing
// total walk length |root| + |target|, then root length, then lexicographic.
// The budget caps the number of instances examined.
inline SearchOutcome search_duality_pairs(const ExchangeMatrix& B0, int depth, size_t budget,
                                          unsigned threads) {
    SearchOutcome outcome;
    for (int shell = 0; shell <= depth; ++shell) {
        for (int a = 0; a <= shell; ++a) {
            size_t remaining = budget - outcome.paths_examined;
            if (remaining == 0) {
                outcome.budget_exhausted = true;
                return outcome;
            }
            bool cap_hit = false;
            const auto roots = paths_of_exact_length(B0.n(), a, remaining + 1, cap_hit);
            const bool more_roots = cap_hit;
            const auto walks = paths_of_exact_length(B0.n(), shell - a, remaining + 1, cap_hit);
            for (const auto& u : roots) {
                remaining = budget - outcome.paths_examined;
                const TreePath root{u};
                const ExchangeMatrix b_root = exchange_matrix_at(B0, root);
                const size_t examined = std::min(walks.size(), remaining);
                const auto hits = parallel_map<bool>(examined, examined >= 256 ? threads : 1, [&](size_t i) {
                    return check_property_D(b_root, TreePath{walks[i]}).holds;
                });
                for (size_t i = 0; i < hits.size(); ++i) {
                    ++outcome.paths_examined;
                    if (!hits[i]) {
                        outcome.witness = check_property_D_at(B0, root, TreePath{walks[i]});
                        return outcome;
                    }
                }
                if (examined < walks.size()) {
                    outcome.budget_exhausted = true;
                    return outcome;
                }
            }
            if (more_roots) {
                outcome.budget_exhausted = true;
                return outcome;
            }
        }
    }
    return outcome;
}

}  // namespace properties_detail

// Deterministic first-violation search. For the direction-parameterized
// identities (R, MDinit, source-sink) and for M the sweep is over root-based
// paths in lexicographic word order, directions ascending; the budget caps
// the number of tree vertices examined. The duality is a statement about an
// ordered pair of vertices, so its sweep covers pairs by increasing total
// walk length (the root-based instances are the root-walk-empty slice).
// Exhausting the budget is a reported status, not an error.
inline SearchOutcome search_counterexample(const ExchangeMatrix& B0, const std::string& property, int depth,
                                           size_t budget, unsigned threads = 1) {
    if (depth < 0 || budget == 0) throw std::invalid_argument("search bounds must be positive");
    if (property == "D") return properties_detail::search_duality_pairs(B0, depth, budget, threads);

    std::vector<int> directions;  // directions swept per path; empty = path-only property
    if (property == "R" || property == "MDinit") {
        for (int k = 1; k <= B0.n(); ++k) directions.push_back(k);
    } else if (property == "source-sink") {
        for (int k = 1; k <= B0.n(); ++k) {
            if (is_source_sink(B0, k)) directions.push_back(k);
        }
    } else if (property != "M") {
        throw std::invalid_argument("unknown property id: " + property);
    }

    SearchOutcome outcome;
    auto paths = properties_detail::enumerate_paths_capped(B0.n(), depth, budget, outcome.budget_exhausted);

    const auto check_path = [&](const std::vector<int>& word) -> std::optional<PropertyReport> {
        const TreePath path{word};
        if (property == "M") {
            if (auto r = check_property_M(B0, path); !r.holds) return r;
        } else {
            for (int k : directions) {
                if (property == "R") {
                    if (auto r = check_property_R(B0, path, k); !r.holds) return r;
                } else if (property == "MDinit") {
                    if (auto r = check_md_init(B0, k, path); !r.holds) return r;
                } else {
                    const SourceSinkReport ss = check_source_sink(B0, k, path);
                    if (!ss.absolute_form.holds) return ss.absolute_form;
                    if (!ss.sigma_form.holds) return ss.sigma_form;
                }
            }
        }
        return std::nullopt;
    };

    const size_t chunk = 1024;
    for (size_t begin = 0; begin < paths.size(); begin += chunk) {
        const size_t end = std::min(begin + chunk, paths.size());
        const auto hits = parallel_map<std::optional<PropertyReport>>(end - begin, threads, [&](size_t i) {
            return check_path(paths[begin + i]);
        });
        for (size_t i = 0; i < hits.size(); ++i) {
            if (hits[i]) {
                outcome.witness = *hits[i];
                outcome.paths_examined = begin + i + 1;
                outcome.budget_exhausted = false;
                return outcome;
            }
        }
    }
    outcome.paths_examined = paths.size();
    return outcome;
}

}  // namespace clusterbox
