/*
 * seeds.hpp
 * ---------
 * Labeled seeds (exchange matrix + ordered cluster of Laurent polynomials in
 * the initial variables), seed mutation through the exchange relation, walks
 * in the n-regular tree, and deduplicated exchange-graph exploration.
 *
 * Tree-path letters and mutation directions are 1-based. A path never
 * contains two equal consecutive letters; appending the last letter again
 * backtracks and shortens the path instead.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterbox/laurent.hpp"
#include "clusterbox/matrices.hpp"
#include "clusterbox/parallel.hpp"

namespace clusterbox {

// A reduced walk in the n-regular tree: a word in {1..n} with no two equal
// consecutive letters.
class TreePath {
public:
    TreePath() = default;

    explicit TreePath(std::vector<int> word) : word_(std::move(word)) {
        for (size_t i = 0; i < word_.size(); ++i) {
            if (word_[i] < 1) throw std::invalid_argument("tree-path letters must be >= 1");
            if (i > 0 && word_[i] == word_[i - 1]) {
                throw std::invalid_argument("tree path may not repeat a letter consecutively");
            }
        }
    }

    static TreePath parse(const std::string& csv) {
        std::vector<int> word;
        std::stringstream ss(csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto first = item.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            word.push_back(std::stoi(item.substr(first)));
        }
        return TreePath(std::move(word));
    }

    const std::vector<int>& word() const { return word_; }
    size_t length() const { return word_.size(); }
    bool empty() const { return word_.empty(); }
    int max_letter() const {
        int m = 0;
        for (int k : word_) m = std::max(m, k);
        return m;
    }

    // Walks one more edge: appends k, cancelling a backtrack.
    TreePath extended(int k) const {
        TreePath r = *this;
        if (!r.word_.empty() && r.word_.back() == k) {
            r.word_.pop_back();
        } else {
            r.word_.push_back(k);
        }
        return r;
    }

    // The walk from the far endpoint back to the start.
    TreePath reversed() const {
        TreePath r;
        r.word_.assign(word_.rbegin(), word_.rend());
        return r;
    }

    // The reduced walk k followed by this path: the path seen from the
    // neighbor across edge k of the starting vertex.
    TreePath prepended_reduced(int k) const {
        if (!word_.empty() && word_.front() == k) {
            TreePath r;
            r.word_.assign(word_.begin() + 1, word_.end());
            return r;
        }
        TreePath r;
        r.word_.reserve(word_.size() + 1);
        r.word_.push_back(k);
        r.word_.insert(r.word_.end(), word_.begin(), word_.end());
        return r;
    }

    // Reduced concatenation: this path followed by `tail`.
    TreePath concatenated(const TreePath& tail) const {
        TreePath r = *this;
        for (int k : tail.word_) r = r.extended(k);
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < word_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(word_[i]);
        }
        return s;
    }

    friend bool operator==(const TreePath& a, const TreePath& b) { return a.word_ == b.word_; }
    friend bool operator!=(const TreePath& a, const TreePath& b) { return !(a == b); }

private:
    std::vector<int> word_;
};

struct Seed {
    ExchangeMatrix B;
    std::vector<LaurentPolynomial> cluster;  // entries are Laurent polynomials in x_1..x_n
    TreePath path;                           // provenance from the initial vertex

    int n() const { return B.n(); }
};

inline bool same_labeled_seed(const Seed& a, const Seed& b) {
    return a.B == b.B && a.cluster == b.cluster;
}

inline Seed initial_seed(const ExchangeMatrix& B0) {
    std::vector<LaurentPolynomial> cluster;
    cluster.reserve(static_cast<size_t>(B0.n()));
    for (int j = 1; j <= B0.n(); ++j) cluster.push_back(LaurentPolynomial::variable(B0.n(), j));
    return Seed{B0, std::move(cluster), TreePath{}};
}

// The exchange relation: with B the pre-mutation matrix, entry k of the
// cluster becomes
//   ( prod_l cluster_l^{[B_lk]_+} + prod_l cluster_l^{[-B_lk]_+} ) / cluster_k,
// all other entries are unchanged, and B mutates in direction k. Division is
// exact by the Laurent phenomenon; an inexact division inside a genuine seed
// signals internal corruption and propagates as InexactDivisionError.
inline Seed mutate_seed(const Seed& s, int k) {
    require_direction(s.B, k);
    const int n = s.n();
    LaurentPolynomial plus = LaurentPolynomial::constant(n, 1);
    LaurentPolynomial minus = LaurentPolynomial::constant(n, 1);
    for (int l = 0; l < n; ++l) {
        const std::int64_t b = s.B.at(l, k - 1);
        if (b > 0) {
            plus = mul(plus, pow(s.cluster[static_cast<size_t>(l)], static_cast<unsigned long>(b)));
        } else if (b < 0) {
            minus = mul(minus, pow(s.cluster[static_cast<size_t>(l)], static_cast<unsigned long>(-b)));
        }
    }
    Seed r{mutate(s.B, k), s.cluster, s.path.extended(k)};
    r.cluster[static_cast<size_t>(k) - 1] = exact_div(add(plus, minus), s.cluster[static_cast<size_t>(k) - 1]);
    return r;
}

inline Seed seed_at(const ExchangeMatrix& B0, const TreePath& path) {
    if (path.max_letter() > B0.n()) throw std::out_of_range("tree-path letter exceeds rank");
    Seed s = initial_seed(B0);
    for (int k : path.word()) s = mutate_seed(s, k);
    return s;
}

// Canonical form of a seed under simultaneous permutation of cluster
// positions and matrix indices: positions are sorted by the cluster entry's
// total order; among positions with equal entries every permutation is tried
// and the least (cluster, B) pair wins. Equal keys iff equal unlabeled seeds.
class CanonicalSeedKey {
public:
    CanonicalSeedKey() = default;
    explicit CanonicalSeedKey(std::string repr) : repr_(std::move(repr)) {}

    const std::string& repr() const { return repr_; }

    friend bool operator==(const CanonicalSeedKey& a, const CanonicalSeedKey& b) { return a.repr_ == b.repr_; }
    friend bool operator!=(const CanonicalSeedKey& a, const CanonicalSeedKey& b) { return !(a == b); }
    friend bool operator<(const CanonicalSeedKey& a, const CanonicalSeedKey& b) { return a.repr_ < b.repr_; }

private:
    std::string repr_;
};

namespace seeds_detail {

inline std::string serialize_poly(const LaurentPolynomial& p) {
    std::string s;
    for (const auto& t : p.terms()) {
        for (auto e : t.e) {
            s += std::to_string(e);
            s += ' ';
        }
        s += t.c.get_str();
        s += ';';
    }
    s += '|';
    return s;
}

inline std::string serialize_seed(const IntMatrix& b, const std::vector<const LaurentPolynomial*>& cluster) {
    std::string s = std::to_string(b.rows());
    s += ':';
    for (const auto* p : cluster) s += serialize_poly(*p);
    s += '#';
    for (auto v : b.entries()) {
        s += std::to_string(v);
        s += ',';
    }
    return s;
}

inline IntMatrix permuted(const IntMatrix& b, const std::vector<int>& perm) {
    const int n = b.rows();
    IntMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = b.at(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
    return r;
}

}  // namespace seeds_detail

inline CanonicalSeedKey canonical_seed_key(const Seed& s) {
    const int n = s.n();
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return LaurentPolynomial::compare(s.cluster[static_cast<size_t>(a)], s.cluster[static_cast<size_t>(b)]) < 0;
    });

    // Tie groups of equal cluster entries; usually every group is a singleton.
    bool any_tie = false;
    for (int i = 0; i + 1 < n; ++i) {
        if (s.cluster[static_cast<size_t>(order[static_cast<size_t>(i)])] ==
            s.cluster[static_cast<size_t>(order[static_cast<size_t>(i + 1)])]) {
            any_tie = true;
            break;
        }
    }

    std::vector<const LaurentPolynomial*> cluster(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) cluster[static_cast<size_t>(i)] = &s.cluster[static_cast<size_t>(order[static_cast<size_t>(i)])];
    if (!any_tie) {
        return CanonicalSeedKey(seeds_detail::serialize_seed(seeds_detail::permuted(s.B.matrix(), order), cluster));
    }

    // Minimize the permuted matrix over permutations within each tie group.
    std::vector<std::pair<size_t, size_t>> groups;
    size_t start = 0;
    for (size_t i = 1; i <= static_cast<size_t>(n); ++i) {
        if (i == static_cast<size_t>(n) ||
            s.cluster[static_cast<size_t>(order[i])] != s.cluster[static_cast<size_t>(order[start])]) {
            groups.emplace_back(start, i);
            start = i;
        }
    }
    std::optional<IntMatrix> best;
    std::vector<int> perm = order;
    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == groups.size()) {
            IntMatrix cand = seeds_detail::permuted(s.B.matrix(), perm);
            if (!best || cand.entries() < best->entries()) best = std::move(cand);
            return;
        }
        auto [lo, hi] = groups[gi];
        std::vector<int> block(perm.begin() + static_cast<std::ptrdiff_t>(lo), perm.begin() + static_cast<std::ptrdiff_t>(hi));
        std::sort(block.begin(), block.end());
        do {
            std::copy(block.begin(), block.end(), perm.begin() + static_cast<std::ptrdiff_t>(lo));
            rec(gi + 1);
        } while (std::next_permutation(block.begin(), block.end()));
    };
    rec(0);
    return CanonicalSeedKey(seeds_detail::serialize_seed(*best, cluster));
}

struct PolyLess {
    bool operator()(const LaurentPolynomial& a, const LaurentPolynomial& b) const {
        return LaurentPolynomial::compare(a, b) < 0;
    }
};

struct ExplorationResult {
    bool closed = false;
    int depth_reached = 0;
    std::vector<CanonicalSeedKey> seeds;                  // sorted
    std::vector<TreePath> witness_paths;                  // aligned with seeds
    std::vector<std::pair<size_t, size_t>> edges;         // index pairs into seeds, a < b
    std::vector<LaurentPolynomial> variables;             // distinct cluster variables, canonical order
    bool positivity_ok = true;                            // monitored, never fatal

    size_t num_seeds() const { return seeds.size(); }
    size_t num_vars() const { return variables.size(); }
};

// Breadth-first exploration over non-backtracking mutations with canonical
// deduplication of unlabeled seeds. Labeled seeds are kept only on the
// frontier. Deterministic: the frontier is expanded in discovery order and
// the final listing is sorted by key, so the output is schedule-independent.
inline ExplorationResult explore(const ExchangeMatrix& B0, int max_depth, size_t max_seeds,
                                 unsigned threads = 1) {
    if (max_depth < 0 || max_seeds == 0) throw std::invalid_argument("exploration bounds must be positive");
    ExplorationResult result;

    struct Discovered {
        size_t index;
    };
    std::map<std::string, Discovered> seen;
    std::vector<TreePath> witness_by_discovery;
    std::set<std::pair<size_t, size_t>> edge_set;
    std::set<LaurentPolynomial, PolyLess> variables;

    struct FrontierItem {
        Seed seed;
        size_t discovery;
    };

    Seed root = initial_seed(B0);
    seen.emplace(canonical_seed_key(root).repr(), Discovered{0});
    witness_by_discovery.push_back(root.path);
    for (const auto& x : root.cluster) variables.insert(x);

    std::vector<FrontierItem> frontier;
    frontier.push_back({std::move(root), 0});
    bool budget_hit = false;

    for (int depth = 0; depth < max_depth && !frontier.empty() && !budget_hit; ++depth) {
        // All (frontier seed, direction) expansions of this level, in order.
        struct Child {
            size_t parent_discovery;
            Seed seed;
            std::string key;
        };
        std::vector<std::pair<size_t, int>> tasks;
        for (size_t i = 0; i < frontier.size(); ++i) {
            const auto& word = frontier[i].seed.path.word();
            for (int k = 1; k <= B0.n(); ++k) {
                if (!word.empty() && word.back() == k) continue;
                tasks.emplace_back(i, k);
            }
        }
        std::vector<Child> children = parallel_map<Child>(tasks.size(), threads, [&](size_t idx) {
            const auto [fi, k] = tasks[idx];
            Seed child = mutate_seed(frontier[fi].seed, k);
            std::string key = canonical_seed_key(child).repr();
            return Child{frontier[fi].discovery, std::move(child), std::move(key)};
        });

        std::vector<FrontierItem> next;
        for (auto& ch : children) {
            auto it = seen.find(ch.key);
            if (it == seen.end()) {
                if (seen.size() >= max_seeds) {
                    budget_hit = true;
                    continue;
                }
                const size_t index = seen.size();
                seen.emplace(std::move(ch.key), Discovered{index});
                witness_by_discovery.push_back(ch.seed.path);
                for (const auto& x : ch.seed.cluster) {
                    if (!x.all_coefficients_positive()) result.positivity_ok = false;
                    variables.insert(x);
                }
                edge_set.emplace(std::min(ch.parent_discovery, index), std::max(ch.parent_discovery, index));
                next.push_back({std::move(ch.seed), index});
            } else {
                if (it->second.index != ch.parent_discovery) {
                    edge_set.emplace(std::min(ch.parent_discovery, it->second.index),
                                     std::max(ch.parent_discovery, it->second.index));
                }
            }
        }
        frontier = std::move(next);
        result.depth_reached = depth + 1;
    }
    result.closed = frontier.empty() && !budget_hit;
    if (result.closed && result.depth_reached > 0) --result.depth_reached;  // last level added nothing new

    // Re-index from discovery order to sorted-key order.
    std::vector<std::pair<std::string, size_t>> keyed;
    keyed.reserve(seen.size());
    for (const auto& [key, info] : seen) keyed.emplace_back(key, info.index);
    // std::map iteration is already sorted by key
    std::vector<size_t> sorted_of_discovery(keyed.size());
    result.seeds.reserve(keyed.size());
    result.witness_paths.reserve(keyed.size());
    for (size_t pos = 0; pos < keyed.size(); ++pos) {
        sorted_of_discovery[keyed[pos].second] = pos;
        result.seeds.emplace_back(keyed[pos].first);
        result.witness_paths.push_back(witness_by_discovery[keyed[pos].second]);
    }
    for (const auto& [a, b] : edge_set) {
        const size_t sa = sorted_of_discovery[a], sb = sorted_of_discovery[b];
        result.edges.emplace_back(std::min(sa, sb), std::max(sa, sb));
    }
    std::sort(result.edges.begin(), result.edges.end());
    result.edges.erase(std::unique(result.edges.begin(), result.edges.end()), result.edges.end());
    result.variables.assign(variables.begin(), variables.end());
    return result;
}

inline const std::vector<LaurentPolynomial>& distinct_cluster_variables(const ExplorationResult& r) {
    return r.variables;
}

// All reduced words over {1..n} of length <= max_depth, in lexicographic
// order (a word precedes its extensions). Includes the empty word.
inline std::vector<std::vector<int>> enumerate_paths(int n, int max_depth) {
    std::vector<std::vector<int>> out;
    std::vector<int> word;
    std::function<void()> rec = [&]() {
        out.push_back(word);
        if (static_cast<int>(word.size()) == max_depth) return;
        for (int k = 1; k <= n; ++k) {
            if (!word.empty() && word.back() == k) continue;
            word.push_back(k);
            rec();
            word.pop_back();
        }
    };
    rec();
    return out;
}

// Depth-first traversal of all seeds at distance <= max_depth from the
// initial seed, visiting each tree vertex once and reusing ancestor seeds.
inline void for_each_seed(const ExchangeMatrix& B0, int max_depth,
                          const std::function<void(const Seed&)>& fn) {
    std::function<void(const Seed&, int)> rec = [&](const Seed& s, int depth) {
        fn(s);
        if (depth == max_depth) return;
        const auto& word = s.path.word();
        for (int k = 1; k <= B0.n(); ++k) {
            if (!word.empty() && word.back() == k) continue;
            rec(mutate_seed(s, k), depth + 1);
        }
    };
    rec(initial_seed(B0), 0);
}

}  // namespace clusterbox
