#include <catch2/catch_amalgamated.hpp>

#include "clusterbox/oracles.hpp"
#include "clusterbox/presets.hpp"

using namespace clusterbox;

TEST_CASE("Chebyshev values", "[oracles]") {
    for (std::int64_t u = -3; u <= 5; ++u) {
        REQUIRE(chebyshev_S(-1, u) == 0);
        REQUIRE(chebyshev_S(0, u) == 1);
    }
    for (std::int64_t p = 0; p <= 5; ++p) REQUIRE(chebyshev_S(p, 2) == p + 1);
    REQUIRE(chebyshev_S(2, 3) == 8);
    for (std::int64_t u = 2; u <= 7; ++u) {
        for (std::int64_t p = 1; p <= 8; ++p) {
            REQUIRE(chebyshev_S(p + 1, u) == u * chebyshev_S(p, u) - chebyshev_S(p - 1, u));
        }
    }
    REQUIRE_THROWS_AS(chebyshev_S(-2, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(chebyshev_S(40, 1000000), std::overflow_error);
}

TEST_CASE("rank-2 closed forms at small steps", "[oracles]") {
    REQUIRE(rank2_d_matrix(2, 2, 0) == IntMatrix::neg_identity(2));
    REQUIRE(rank2_d_matrix(2, 2, 1) == IntMatrix{{1, 0}, {0, -1}});
    REQUIRE(rank2_d_matrix(2, 2, 4) == IntMatrix{{3, 4}, {2, 3}});
    REQUIRE(rank2_d_matrix(2, 2, 5) == IntMatrix{{5, 4}, {4, 3}});
    REQUIRE(rank2_d_matrix(1, 4, 4) == IntMatrix{{3, 2}, {4, 3}});
    REQUIRE_THROWS_AS(rank2_d_matrix(1, 3, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(rank2_d_matrix(2, 2, -1), std::invalid_argument);
}

TEST_CASE("closed forms match exact computation", "[oracles]") {
    for (const auto [b, c] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {1, 4}}) {
        const auto report = verify_rank2_against_bfs(b, c, 8);
        REQUIRE(report.all_match);
        REQUIRE(report.entries.size() == 9);
    }
    REQUIRE(verify_rank2_against_bfs(3, 3, 6).all_match);
}

TEST_CASE("closed-form entries grow strictly along each parity", "[oracles]") {
    for (const auto [b, c] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {1, 4}, {3, 3}}) {
        for (std::int64_t k = 2; k + 2 <= 10; ++k) {
            const auto now = rank2_d_matrix(b, c, k);
            const auto later = rank2_d_matrix(b, c, k + 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) REQUIRE(later.at(i, j) > now.at(i, j));
        }
    }
}

TEST_CASE("closed-form transpose duality under walk reversal", "[oracles]") {
    // transpose of the step-k matrix = D-matrix computed from ((-B_k)^T, t_k)
    // walking back to the start; for even k this evaluates the closed form
    // with b and c swapped in the reversed direction
    for (const auto [b, c] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {1, 4}, {3, 3}}) {
        const ExchangeMatrix B0{{0, b}, {-c, 0}};
        std::vector<int> word;
        for (std::int64_t k = 0; k <= 8; ++k) {
            const TreePath path{word};
            const ExchangeMatrix bk = exchange_matrix_at(B0, path);
            REQUIRE(transpose(rank2_d_matrix(b, c, k)) ==
                    d_matrix_recursive(ExchangeMatrix(transpose(-bk.matrix())), path.reversed()));
            word.push_back(k % 2 == 0 ? 1 : 2);
        }
    }
}

TEST_CASE("finite-type verification", "[oracles]") {
    const auto a2 = verify_finite_type(preset_b_matrix("a2"), 5, 16, 1000, 2);
    REQUIRE(a2.closed);
    REQUIRE(a2.num_seeds == 5);
    REQUIRE(a2.properties_total());
    REQUIRE(a2.var_count_matches);

    const auto b2 = verify_finite_type(preset_b_matrix("b2"), 6, 16, 1000, 2);
    REQUIRE(b2.closed);
    REQUIRE(b2.num_seeds == 6);
    REQUIRE(b2.properties_total());

    const auto a3 = verify_finite_type(preset_b_matrix("a3"), 9, 16, 1000, 2);
    REQUIRE(a3.closed);
    REQUIRE(a3.num_seeds == 14);
    REQUIRE(a3.properties_total());
    REQUIRE(a3.pairs_checked == 14 * 14);
}

TEST_CASE("no closure within bounds is inconclusive", "[oracles]") {
    const auto r = verify_finite_type(preset_b_matrix("markov"), std::nullopt, 4, 1000);
    REQUIRE_FALSE(r.closed);
    REQUIRE_FALSE(r.properties_total());
    REQUIRE(r.pairs_checked == 0);
}
