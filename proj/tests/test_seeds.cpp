#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "clusterbox/presets.hpp"
#include "clusterbox/seeds.hpp"
#include "test_support.hpp"

using namespace clusterbox;
using testsup::poly;

TEST_CASE("tree paths reject immediate repetition", "[seeds]") {
    REQUIRE_THROWS_AS(TreePath(std::vector<int>{1, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(TreePath::parse("2,2"), std::invalid_argument);
    REQUIRE(TreePath::parse("1, 2 ,1").word() == std::vector<int>{1, 2, 1});
}

TEST_CASE("tree path walking", "[seeds]") {
    const TreePath p{std::vector<int>{1, 2}};
    REQUIRE(p.extended(3).word() == std::vector<int>{1, 2, 3});
    REQUIRE(p.extended(2).word() == std::vector<int>{1});
    REQUIRE(p.reversed().word() == std::vector<int>{2, 1});
    REQUIRE(p.prepended_reduced(1).word() == std::vector<int>{2});
    REQUIRE(p.prepended_reduced(3).word() == std::vector<int>{3, 1, 2});
    REQUIRE(TreePath{}.prepended_reduced(2).word() == std::vector<int>{2});
    REQUIRE(p.reversed().concatenated(p).empty());
}

TEST_CASE("initial seed is the monomial cluster", "[seeds]") {
    const auto s = initial_seed(preset_b_matrix("a2"));
    REQUIRE(s.cluster[0] == LaurentPolynomial::variable(2, 1));
    REQUIRE(s.cluster[1] == LaurentPolynomial::variable(2, 2));
    REQUIRE(s.path.empty());
}

TEST_CASE("the exchange relation on the A2 quiver", "[seeds]") {
    const auto B = preset_b_matrix("a2");
    const auto s = mutate_seed(initial_seed(B), 1);
    REQUIRE(s.cluster[0] == poly(2, {{{-1, 1}, "1"}, {{-1, 0}, "1"}}));
    REQUIRE(s.cluster[1] == LaurentPolynomial::variable(2, 2));
    REQUIRE(s.path.word() == std::vector<int>{1});
}

TEST_CASE("seed mutation is an involution", "[seeds]") {
    for (const auto& name : {"a2", "a3", "markov", "atilde21"}) {
        const auto B = preset_b_matrix(name);
        const auto s = seed_at(B, B.n() >= 2 ? TreePath::parse("1,2") : TreePath{});
        for (int k = 1; k <= B.n(); ++k) {
            const auto twice = mutate_seed(mutate_seed(s, k), k);
            REQUIRE(same_labeled_seed(twice, s));
            REQUIRE(twice.path == s.path);
        }
    }
}

TEST_CASE("seeds along a path", "[seeds]") {
    const auto B = preset_b_matrix("a2");
    REQUIRE(same_labeled_seed(seed_at(B, TreePath{}), initial_seed(B)));

    const auto s1 = seed_at(B, TreePath::parse("1"));
    REQUIRE(s1.cluster[0] == poly(2, {{{-1, 1}, "1"}, {{-1, 0}, "1"}}));

    const auto s12 = seed_at(B, TreePath::parse("1,2"));
    REQUIRE(s12.cluster[1] == poly(2, {{{0, -1}, "1"}, {{-1, 0}, "1"}, {{-1, -1}, "1"}}));
}

TEST_CASE("canonical keys identify relabeled seeds", "[seeds]") {
    const auto B = preset_b_matrix("a3");
    const auto s = seed_at(B, TreePath::parse("1,2"));

    // relabel positions by the cycle (1 2 3)
    const std::vector<int> perm{1, 2, 0};
    IntMatrix pb(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pb.at(i, j) = s.B.at(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
    Seed relabeled{ExchangeMatrix(pb),
                   {s.cluster[static_cast<size_t>(perm[0])], s.cluster[static_cast<size_t>(perm[1])],
                    s.cluster[static_cast<size_t>(perm[2])]},
                   TreePath{}};
    REQUIRE(canonical_seed_key(s) == canonical_seed_key(relabeled));
    REQUIRE(canonical_seed_key(s) != canonical_seed_key(initial_seed(B)));

    // equal keys have matching neighborhoods of unlabeled seeds
    std::set<CanonicalSeedKey> n1, n2;
    for (int k = 1; k <= 3; ++k) {
        n1.insert(canonical_seed_key(mutate_seed(s, k)));
        n2.insert(canonical_seed_key(mutate_seed(relabeled, k)));
    }
    REQUIRE(n1 == n2);
}

TEST_CASE("canonical keys tolerate equal cluster entries", "[seeds]") {
    // degenerate by construction; exercises the tie-group permutation search
    const ExchangeMatrix zero{{0, 0}, {0, 0}};
    const auto x1 = LaurentPolynomial::variable(2, 1);
    const Seed twin{zero, {x1, x1}, TreePath{}};
    const Seed swapped{zero, {x1, x1}, TreePath{}};
    REQUIRE(canonical_seed_key(twin) == canonical_seed_key(swapped));

    const ExchangeMatrix skew{{0, 1}, {-1, 0}};
    const Seed a{skew, {x1, x1}, TreePath{}};
    const Seed b{ExchangeMatrix{{0, -1}, {1, 0}}, {x1, x1}, TreePath{}};
    REQUIRE(canonical_seed_key(a) == canonical_seed_key(b));  // swap flips the sign back
}

TEST_CASE("five alternating mutations close the A2 pentagon", "[seeds]") {
    const auto B = preset_b_matrix("a2");
    const auto around = seed_at(B, TreePath::parse("1,2,1,2,1"));
    REQUIRE(canonical_seed_key(around) == canonical_seed_key(initial_seed(B)));
    REQUIRE_FALSE(same_labeled_seed(around, initial_seed(B)));  // positions come back swapped
}

TEST_CASE("pentagon closure of the A2 pattern", "[seeds]") {
    const auto r = explore(preset_b_matrix("a2"), 16, 1000);
    REQUIRE(r.closed);
    REQUIRE(r.num_seeds() == 5);
    REQUIRE(r.num_vars() == 5);
    REQUIRE(r.positivity_ok);

    const auto x1 = LaurentPolynomial::variable(2, 1);
    const auto x2 = LaurentPolynomial::variable(2, 2);
    const std::set<LaurentPolynomial, PolyLess> expected{
        x1, x2,
        poly(2, {{{-1, 1}, "1"}, {{-1, 0}, "1"}}),                    // (1+x2)/x1
        poly(2, {{{0, -1}, "1"}, {{-1, 0}, "1"}, {{-1, -1}, "1"}}),   // (1+x1+x2)/(x1 x2)
        poly(2, {{{1, -1}, "1"}, {{0, -1}, "1"}}),                    // (1+x1)/x2
    };
    const std::set<LaurentPolynomial, PolyLess> got(r.variables.begin(), r.variables.end());
    REQUIRE(got == expected);
}

TEST_CASE("exploration counts on small types", "[seeds]") {
    const auto a3 = explore(preset_b_matrix("a3"), 16, 1000);
    REQUIRE(a3.closed);
    REQUIRE(a3.num_seeds() == 14);
    REQUIRE(a3.num_vars() == 9);

    const auto b2 = explore(preset_b_matrix("b2"), 16, 1000);
    REQUIRE(b2.closed);
    REQUIRE(b2.num_seeds() == 6);
    REQUIRE(b2.num_vars() == 6);
}

TEST_CASE("rank-1 pattern closes with two seeds", "[seeds]") {
    const auto r = explore(ExchangeMatrix{{0}}, 10, 100);
    REQUIRE(r.closed);
    REQUIRE(r.num_seeds() == 2);
    const std::set<LaurentPolynomial, PolyLess> got(r.variables.begin(), r.variables.end());
    const std::set<LaurentPolynomial, PolyLess> expected{LaurentPolynomial::variable(1, 1),
                                                         poly(1, {{{-1}, "2"}})};
    REQUIRE(got == expected);
}

TEST_CASE("infinite rank-2 pattern hits the depth bound", "[seeds]") {
    const auto r = explore(ExchangeMatrix{{0, 2}, {-2, 0}}, 10, 100000);
    REQUIRE_FALSE(r.closed);
    REQUIRE(r.depth_reached == 10);
}

TEST_CASE("affine annulus pattern does not close", "[seeds]") {
    const auto r = explore(preset_b_matrix("atilde21"), 6, 100000);
    REQUIRE_FALSE(r.closed);
    REQUIRE(r.positivity_ok);
}

TEST_CASE("seed budget exhaustion is reported, not thrown", "[seeds]") {
    const auto r = explore(preset_b_matrix("markov"), 6, 5);
    REQUIRE_FALSE(r.closed);
    REQUIRE(r.num_seeds() <= 5);
}

TEST_CASE("witness paths replay to their seeds", "[seeds]") {
    const auto B = preset_b_matrix("a3");
    const auto r = explore(B, 16, 1000);
    for (size_t i = 0; i < r.seeds.size(); ++i) {
        REQUIRE(canonical_seed_key(seed_at(B, r.witness_paths[i])) == r.seeds[i]);
    }
}

TEST_CASE("exploration is schedule-independent", "[seeds]") {
    const auto serial = explore(preset_b_matrix("a3"), 16, 1000, 1);
    const auto parallel = explore(preset_b_matrix("a3"), 16, 1000, 4);
    REQUIRE(serial.seeds == parallel.seeds);
    REQUIRE(serial.edges == parallel.edges);
    REQUIRE(serial.variables == parallel.variables);
    for (size_t i = 0; i < serial.witness_paths.size(); ++i)
        REQUIRE(serial.witness_paths[i] == parallel.witness_paths[i]);
}

TEST_CASE("path enumeration order", "[seeds]") {
    const auto paths = enumerate_paths(2, 3);
    const std::vector<std::vector<int>> expected{
        {}, {1}, {1, 2}, {1, 2, 1}, {2}, {2, 1}, {2, 1, 2}};
    REQUIRE(paths == expected);
}
