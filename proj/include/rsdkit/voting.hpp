#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsdkit/core.hpp"

namespace rsdkit {

// Serial dictatorship: agents in perm order successively restrict the
// surviving set to their most preferred members. Returns the unique
// survivor (profile validity guarantees a singleton for full permutations).
int sd(const Profile& p, const Permutation& perm);

// Surviving set after only the given (distinct) agents have refined.
IndexSet sd_prefix(const Profile& p, const std::vector<int>& prefix);

// Random serial dictatorship lottery, exactly: probability of each
// alternative is (#permutations selecting it) / n!.
Lottery rsd_exact_enum(const Profile& p, int guard_n = kDefaultEnumGuard);

// Same lottery via the backward recursion
//   L(A', N') = (1/|N'|) * sum_i L(max(R_i, A'), N' \ {i})
// memoized on the (surviving alternatives, remaining agents) pair, so
// permutations sharing a state are counted once. The state space is still
// worst-case exponential, so the agent guard applies here too.
Lottery rsd_exact_memo(const Profile& p, int guard_n = kDefaultEnumGuard);

struct SampleReport {
    std::vector<std::uint64_t> counts;  // per alternative
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
    std::string generator;  // RNG family + shuffle recipe the counts are pinned to

    std::vector<Rational> estimates() const;
};

// Monte Carlo estimate: `total` uniform permutations via an unbiased
// Fisher-Yates shuffle over a deterministically seeded mt19937_64.
// Same (profile, total, seed) always reproduces the same counts.
SampleReport rsd_sample(const Profile& p, std::uint64_t total, std::uint64_t seed);

struct SupportWitness {
    // Starts with the greedy choices; once the surviving set collapses to
    // the queried alternative the remaining agents follow in ascending
    // index order (they all qualify, and the smallest is always taken).
    Permutation permutation;
    // (agent, surviving set after that agent refines), one entry per step.
    std::vector<std::pair<int, IndexSet>> trace;
};

// Polynomial-time support membership: greedily hand the dictatorship to the
// smallest-index remaining agent whose maximal set keeps alt alive. Returns
// a witness permutation iff rsd assigns alt positive probability.
std::optional<SupportWitness> support_member(const Profile& p, int alt);

// Alternatives with positive rsd probability, ascending index order.
std::vector<int> support(const Profile& p);

// Splices the agent at position j in directly behind position k; positions
// are 1-based and 1 <= k < j <= n is required. Moving an agent forward to a
// point where the queried alternative is still maximal for him preserves a
// dictatorship outcome, which is what makes the greedy witness search sound.
Permutation move_forward(const Permutation& perm, int k, int j);

// Threshold query "rsd probability of alt >= q" for q in the open unit
// interval; answered exactly via the memoized lottery.
bool probability_at_least(const Profile& p, int alt, const Rational& q,
                          int guard_n = kDefaultEnumGuard);

struct ThresholdSearchResult {
    Rational probability;
    int queries = 0;
};

// Recovers the exact probability c/n! from a yes/no threshold oracle by
// binary search over c in [0, n!]; thresholds are midpoints (2c-1)/(2*n!),
// so they stay inside (0,1). Uses at most ceil(log2(n!+1)) oracle calls.
// With verify=true, two bracketing re-queries confirm the answer afterwards
// and a contradiction raises OracleError (the extra calls are counted).
ThresholdSearchResult binary_search_probability(
    const std::function<bool(const Rational&)>& at_least, int n, bool verify = false);

}  // namespace rsdkit
