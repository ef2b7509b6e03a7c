#pragma once

#include <string>
#include <vector>

#include "rsdkit/assignment.hpp"
#include "rsdkit/core.hpp"
#include "rsdkit/linalg.hpp"

namespace rsdkit {

// Brute-force counters refuse instances with more than this many subsets /
// agents unless the caller raises the guard (2^n enumeration).
inline constexpr int kDefaultBruteForceGuard = 20;

struct SetCoverInstance {
    std::vector<std::string> universe;
    std::vector<IndexSet> subsets;  // over universe indices
};

// m[i][j] = (i+j-2)! for 1-based i,j. Nonsingular for every n; the recovery
// systems below are column rescalings of it, so they inherit nonsingularity.
IntMatrix pascal_matrix(int n);

// Dichotomous voting instance whose lottery encodes set-cover counts:
// alternatives are the universe plus one fresh distinguished alternative
// (always last); subset-agent i ranks (U \ S_i) together with the
// distinguished alternative above S_i; k padding agents rank all of U above
// it. Requires a non-empty universe and 1 <= k <= #subsets.
Profile build_voting_reduction(const SetCoverInstance& sc, int k);

// Number of j-subset selections of `subsets` whose union is the universe.
Int count_set_covers_bruteforce(const SetCoverInstance& sc, int j,
                                int guard = kDefaultBruteForceGuard);

struct FactorialSystem {
    IntMatrix matrix;
    std::vector<Rational> rhs;
    std::vector<std::string> unknowns;  // column order of `matrix`
};

// Linear system tying the distinguished alternative's probabilities under
// k = 1..n padding agents to the cover counts: row k has entries
// j! * (n-j+k-1)! for unknown x_j (columns ordered x_n..x_1), and rhs
// p_k * (n+k)! / k. probs[k-1] must be the k-padded lottery value.
FactorialSystem voting_system_rhs(const SetCoverInstance& sc, const std::vector<Rational>& probs);

// Solves a factorial system and validates that every unknown comes out a
// non-negative integer; result is reordered to x_1..x_n (ascending subset
// count). Throws IntegrityError on singular systems or non-count solutions.
std::vector<Int> recover_cover_counts(const FactorialSystem& system);

struct CoverRecovery {
    std::vector<Rational> probs;  // distinguished alternative's probability, k = 1..n
    FactorialSystem system;
    std::vector<Int> counts;  // x_1..x_n
};

// End to end: build the k-padded profiles, compute their exact lotteries,
// assemble the system, solve for all cover counts. guard_n bounds the padded
// profile sizes (the k = n profile has 2n agents).
CoverRecovery recover_cover_counts_pipeline(const SetCoverInstance& sc,
                                            int guard_n = kDefaultEnumGuard);

// Padded assignment instance G_k: k clones of `agent` (same ranking) and k
// dummy houses every agent ranks below all original houses, in label order.
AssignmentProblem build_assignment_reduction(const AssignmentProblem& ap, int agent, int k);

// s_j for the fixed agent: the number of j-subsets B of the other agents
// such that B can be matched into houses each member strictly prefers to
// `agent`'s top house. Matchability decides whether SOME draw order of B
// leaves the top house available, but not whether every order does: who
// takes what depends on the order, so distinct orders of one matchable
// coalition can differ on whether the top house survives.
Int count_feasible_subsets_bruteforce(const AssignmentProblem& ap, int agent, int j,
                                      int guard = kDefaultBruteForceGuard);

// All s_0..s_{n-1} in one sweep.
std::vector<Int> feasible_subset_counts(const AssignmentProblem& ap, int agent,
                                        int guard = kDefaultBruteForceGuard);

// q_j for the fixed agent: the number of ordered j-sequences of distinct
// other agents that leave his top house unclaimed when each takes their
// favourite remaining house in turn. This, not s_j, is the statistic the
// clone-padded probabilities determine: s_j <= q_j <= j! * s_j, with both
// bounds strict on instances where survival is order-dependent.
Int count_preserving_prefixes_bruteforce(const AssignmentProblem& ap, int agent, int j,
                                         int guard = kDefaultBruteForceGuard);

// All q_0..q_{n-1} in one sweep (q_0 = 1 always: the empty prefix).
std::vector<Int> preserving_prefix_counts(const AssignmentProblem& ap, int agent,
                                          int guard = kDefaultBruteForceGuard);

struct BipartiteInstance {
    std::vector<std::string> left;
    std::vector<std::string> right;
    std::vector<std::pair<int, int>> edges;  // (left index, right index)
};

// Assignment-problem fragment encoding a bipartite graph: agents are the
// left vertices; houses are the right vertices plus one fresh distinguished
// house (always last); each agent ranks his neighbours (label order) above
// the distinguished house and non-neighbours (label order) below it.
struct AssignmentFragment {
    std::vector<std::string> agent_names;
    std::vector<std::string> houses;
    std::vector<std::vector<int>> rankings;
    int distinguished_house = -1;
};

AssignmentFragment bipartite_to_assignment(const BipartiteInstance& g);

// s_j of the fragment: j-subsets of agents matchable into houses they rank
// above the distinguished one. Summing j >= 1 counts the non-empty left
// subsets with a perfect matching into the right side.
std::vector<Int> fragment_feasible_counts(const AssignmentFragment& frag,
                                          int guard = kDefaultBruteForceGuard);

// Non-empty matchable left subsets of g, counted directly on the graph.
Int bipartite_matchable_subsets(const BipartiteInstance& g,
                                int guard = kDefaultBruteForceGuard);

// System tying the fixed agent's top-house probabilities under k = 0..n-1
// clones to the q_j: the agent gets his top house exactly when some
// preserving prefix of j others precedes him and everyone else (including
// all clones) follows, so p_k * (n+k)! = sum_j q_j * (n-1-j+k)!. Row k has
// entry (n-1-j+k)! for unknown q_j (columns ordered q_{n-1}..q_0) -- the
// matrix is pascal_matrix(n) -- and rhs p_k * (n+k)!.
FactorialSystem assignment_system(const std::vector<Rational>& probs);

// Solve for q_0..q_{n-1} from the clone-padded probabilities; counts are
// validated as non-negative integers.
std::vector<Int> recover_prefix_counts(const std::vector<Rational>& probs);

struct PrefixRecovery {
    std::vector<Rational> probs;  // p(agent gets his top house) in G_k, k = 0..n-1
    FactorialSystem system;
    std::vector<Int> counts;  // q_0..q_{n-1}
};

// End to end: build every G_k, compute the exact assignment matrices,
// read off the fixed agent's top-house probability, solve for the q_j.
// guard_n bounds the padded instance sizes (G_{n-1} has 2n-1 agents).
PrefixRecovery recover_prefix_counts_pipeline(const AssignmentProblem& ap, int agent,
                                              int guard_n = kDefaultEnumGuard);

}  // namespace rsdkit
