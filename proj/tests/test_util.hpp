#pragma once

#include <random>
#include <string>
#include <vector>

#include "rsdkit/assignment.hpp"
#include "rsdkit/core.hpp"

namespace rsdkit::testutil {

inline std::vector<std::string> letters(int m) {
    std::vector<std::string> out;
    for (int i = 0; i < m; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

inline std::vector<std::string> house_labels(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("h" + std::to_string(i + 1));
    return out;
}

// Random weak order: shuffle the alternatives, then cut into consecutive
// indifference classes with fair coin breaks. Reaches every weak order.
inline PreferenceRelation random_relation(std::mt19937_64& g, int m) {
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = m - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, i)(g))]);
    std::vector<std::vector<int>> classes;
    classes.emplace_back();
    for (int i = 0; i < m; ++i) {
        if (!classes.back().empty() && std::uniform_int_distribution<int>(0, 1)(g)) classes.emplace_back();
        classes.back().push_back(order[static_cast<std::size_t>(i)]);
    }
    return PreferenceRelation(m, std::move(classes));
}

// Retries until the profile separates every pair of alternatives.
inline Profile random_profile(std::mt19937_64& g, int n, int m) {
    for (;;) {
        std::vector<PreferenceRelation> relations;
        relations.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) relations.push_back(random_relation(g, m));
        try {
            return Profile(letters(m), {}, std::move(relations));
        } catch (const ValidationError&) {
            // universally indifferent pair; draw again
        }
    }
}

inline AssignmentProblem random_assignment(std::mt19937_64& g, int n) {
    std::vector<std::vector<int>> rankings;
    rankings.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> r(static_cast<std::size_t>(n));
        for (int h = 0; h < n; ++h) r[static_cast<std::size_t>(h)] = h;
        for (int h = n - 1; h > 0; --h)
            std::swap(r[static_cast<std::size_t>(h)],
                      r[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, h)(g))]);
        rankings.push_back(std::move(r));
    }
    return AssignmentProblem(house_labels(n), {}, std::move(rankings));
}

}  // namespace rsdkit::testutil
