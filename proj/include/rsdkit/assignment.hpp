#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsdkit/core.hpp"

namespace rsdkit {

// House allocation instance: n agents, exactly n houses, strict rankings.
class AssignmentProblem {
public:
    AssignmentProblem(std::vector<std::string> houses,
                      std::vector<std::string> agent_names,
                      std::vector<std::vector<int>> rankings);

    int num_agents() const { return static_cast<int>(rankings_.size()); }
    int num_houses() const { return static_cast<int>(houses_.size()); }

    const std::vector<std::string>& houses() const { return houses_; }
    const std::vector<std::string>& agent_names() const { return agent_names_; }

    // rankings()[i] lists house indices, best first; each is a permutation
    // of {0..n-1}.
    const std::vector<std::vector<int>>& rankings() const { return rankings_; }
    const std::vector<int>& ranking(int agent) const { return rankings_[static_cast<std::size_t>(agent)]; }

    int house_index(const std::string& label) const;

private:
    std::vector<std::string> houses_;
    std::vector<std::string> agent_names_;
    std::vector<std::vector<int>> rankings_;
};

// house index per agent; a bijection when produced by sd_assign.
using DeterministicAssignment = std::vector<int>;

// matrix[i][h] = probability agent i receives house h.
using FractionalMatrix = std::vector<std::vector<Rational>>;

// Serial dictatorship for houses: each agent in perm order takes his most
// preferred house still available.
DeterministicAssignment sd_assign(const AssignmentProblem& ap, const Permutation& perm);

// Exact random-serial-dictatorship assignment by full enumeration of n!.
FractionalMatrix rsd_assign_exact_enum(const AssignmentProblem& ap, int guard_n = kDefaultEnumGuard);

// Same matrix via forward dynamic programming over (remaining agents,
// remaining houses) states with exact reach probabilities; agrees with the
// enumeration cell for cell.
FractionalMatrix rsd_assign_exact(const AssignmentProblem& ap, int guard_n = kDefaultEnumGuard);

struct AssignmentSampleReport {
    std::vector<std::vector<std::uint64_t>> counts;  // [agent][house]
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
    std::string generator;

    FractionalMatrix estimates() const;
};

AssignmentSampleReport rsd_assign_sample(const AssignmentProblem& ap,
                                         std::uint64_t total,
                                         std::uint64_t seed);

// Support membership for a deterministic assignment sigma (a bijection):
// greedily seat the smallest-index unplaced agent whose sigma-house is his
// favourite among the remaining houses. Returns a realizing permutation iff
// some permutation makes serial dictatorship produce sigma.
std::optional<Permutation> assignment_support_member(const AssignmentProblem& ap,
                                                     const DeterministicAssignment& sigma);

}  // namespace rsdkit
