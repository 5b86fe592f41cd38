/*
 * oracles.hpp
 * -----------
 * Independent verification oracles:
 *
 *   - rank-2 closed forms: along the alternating walk 1,2,1,2,... from
 *     B0 = [[0,b],[-c,0]] with bc >= 4, the D-matrix at step k is given by
 *     Chebyshev polynomials of the second kind evaluated at u = bc - 2;
 *   - finite-type verification: exhaust the exchange graph, then check the
 *     duality and recursion identities over every ordered pair of discovered
 *     seeds.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clusterbox/matrices.hpp"
#include "clusterbox/properties.hpp"
#include "clusterbox/seeds.hpp"
#include "clusterbox/vectors.hpp"

namespace clusterbox {

// Chebyshev polynomial of the second kind at an integer argument, with
// S_{-1} = 0, S_0 = 1, S_{p+1} = u S_p - S_{p-1}.
inline std::int64_t chebyshev_S(std::int64_t p, std::int64_t u) {
    if (p < -1) throw std::invalid_argument("chebyshev_S requires p >= -1");
    std::int64_t prev = 0, cur = 1;  // S_{-1}, S_0
    if (p == -1) return 0;
    for (std::int64_t i = 0; i < p; ++i) {
        const std::int64_t next = checked_add(checked_mul(u, cur), -prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Closed-form D-matrix at step k of the alternating walk, labeled as the
// walk labels it (position 1 holds the newer variable at odd k). Requires
// bc >= 4; finite-type rank-2 patterns are handled by plain exploration.
inline DMatrix rank2_d_matrix(std::int64_t b, std::int64_t c, std::int64_t k) {
    if (b < 0 || c < 0) throw std::invalid_argument("rank-2 parameters must be nonnegative");
    if (checked_mul(b, c) < 4) throw std::invalid_argument("closed form requires bc >= 4");
    if (k < 0) throw std::invalid_argument("step index must be nonnegative");
    if (k == 0) return IntMatrix::neg_identity(2);
    if (k == 1) return IntMatrix{{1, 0}, {0, -1}};
    const std::int64_t u = b * c - 2;
    if (k % 2 == 0) {
        const std::int64_t s1 = chebyshev_S((k - 2) / 2, u);
        const std::int64_t s2 = chebyshev_S((k - 4) / 2, u);
        return IntMatrix{{checked_add(s1, s2), checked_mul(b, s1)},
                         {checked_mul(c, s2), checked_add(s1, s2)}};
    }
    const std::int64_t s1 = chebyshev_S((k - 1) / 2, u);
    const std::int64_t s2 = chebyshev_S((k - 3) / 2, u);
    const std::int64_t s3 = chebyshev_S((k - 5) / 2, u);
    return IntMatrix{{checked_add(s1, s2), checked_mul(b, s2)},
                     {checked_mul(c, s2), checked_add(s2, s3)}};
}

struct Rank2Comparison {
    std::int64_t k = 0;
    DMatrix closed_form, bfs;
    bool match = false;
};

struct Rank2VerifyReport {
    std::int64_t b = 0, c = 0, k_max = 0;
    bool all_match = false;
    std::vector<Rank2Comparison> entries;
};

// Walks 1,2,1,2,... computing cluster variables exactly, and compares the
// directly extracted D-matrix against the closed form at every step.
inline Rank2VerifyReport verify_rank2_against_bfs(std::int64_t b, std::int64_t c, std::int64_t k_max) {
    Rank2VerifyReport report;
    report.b = b;
    report.c = c;
    report.k_max = k_max;
    report.all_match = true;
    const ExchangeMatrix B0{{0, b}, {-c, 0}};
    Seed s = initial_seed(B0);
    for (std::int64_t k = 0; k <= k_max; ++k) {
        if (k > 0) s = mutate_seed(s, k % 2 == 1 ? 1 : 2);
        Rank2Comparison cmp;
        cmp.k = k;
        cmp.closed_form = rank2_d_matrix(b, c, k);
        cmp.bfs = d_matrix_direct(s);
        cmp.match = cmp.closed_form == cmp.bfs;
        report.all_match = report.all_match && cmp.match;
        report.entries.push_back(std::move(cmp));
    }
    return report;
}

struct FiniteTypeReport {
    bool closed = false;  // false means inconclusive: no closure within bounds
    size_t num_seeds = 0;
    size_t num_vars = 0;
    int depth_reached = 0;
    size_t pairs_checked = 0;
    size_t d_violations = 0;
    size_t r_violations = 0;
    size_t m_violations = 0;
    std::optional<size_t> expected_var_count;
    bool var_count_matches = true;

    bool properties_total() const {
        return closed && d_violations == 0 && r_violations == 0 && m_violations == 0;
    }
};

// Closure discovery plus duality/recursion checks over every ordered pair of
// discovered seeds: the seed at witness path w1 is taken as initial vertex
// and the walk to w2 is reverse(w1) followed by w2, reduced.
inline FiniteTypeReport verify_finite_type(const ExchangeMatrix& B0,
                                           std::optional<size_t> expected_var_count = std::nullopt,
                                           int max_depth = 16, size_t max_seeds = 100000,
                                           unsigned threads = 1) {
    FiniteTypeReport report;
    report.expected_var_count = expected_var_count;
    const ExplorationResult exploration = explore(B0, max_depth, max_seeds, threads);
    report.closed = exploration.closed;
    report.num_seeds = exploration.num_seeds();
    report.num_vars = exploration.num_vars();
    report.depth_reached = exploration.depth_reached;
    if (expected_var_count) report.var_count_matches = *expected_var_count == report.num_vars;
    if (!report.closed) return report;

    const auto& witnesses = exploration.witness_paths;
    struct PairCounts {
        size_t d = 0, r = 0, m = 0;
    };
    const auto counts = parallel_map<PairCounts>(witnesses.size() * witnesses.size(), threads, [&](size_t idx) {
        const TreePath& w1 = witnesses[idx / witnesses.size()];
        const TreePath& w2 = witnesses[idx % witnesses.size()];
        const ExchangeMatrix b_root = exchange_matrix_at(B0, w1);
        const TreePath walk = w1.reversed().concatenated(w2);
        PairCounts pc;
        if (!check_property_D(b_root, walk).holds) ++pc.d;
        if (!check_property_M(b_root, walk).holds) ++pc.m;
        for (int k = 1; k <= B0.n(); ++k) {
            if (!check_property_R(b_root, walk, k).holds) ++pc.r;
        }
        return pc;
    });
    for (const auto& pc : counts) {
        ++report.pairs_checked;
        report.d_violations += pc.d;
        report.r_violations += pc.r;
        report.m_violations += pc.m;
    }
    return report;
}

}  // namespace clusterbox
