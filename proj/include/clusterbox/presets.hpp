/*
 * presets.hpp
 * -----------
 * Named exchange matrices used throughout the test suites and the CLI.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clusterbox/matrices.hpp"

namespace clusterbox {

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"a2", "a3", "b2", "g2", "markov", "atilde21", "atilde31", "dtilde4"};
    return names;
}

// a2/a3/b2/g2: finite types. markov: once-punctured torus. atilde21/atilde31:
// annulus quivers (cycle with p arrows one way, q the other). dtilde4: four
// leaves pointing into a central vertex.
inline ExchangeMatrix preset_b_matrix(const std::string& name) {
    if (name == "a2") return ExchangeMatrix{{0, 1}, {-1, 0}};
    if (name == "a3") return ExchangeMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};
    if (name == "b2") return ExchangeMatrix{{0, 1}, {-2, 0}};
    if (name == "g2") return ExchangeMatrix{{0, 1}, {-3, 0}};
    if (name == "markov") return ExchangeMatrix{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};
    if (name == "atilde21") return ExchangeMatrix{{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}};
    if (name == "atilde31") {
        return ExchangeMatrix{{0, 1, 0, 1}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {-1, 0, -1, 0}};
    }
    if (name == "dtilde4") {
        return ExchangeMatrix{{0, 0, 0, 0, 1},
                              {0, 0, 0, 0, 1},
                              {0, 0, 0, 0, 1},
                              {0, 0, 0, 0, 1},
                              {-1, -1, -1, -1, 0}};
    }
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace clusterbox
