#include "rsdkit/assignment.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "sampling.hpp"

namespace rsdkit {

AssignmentProblem::AssignmentProblem(std::vector<std::string> houses,
                                     std::vector<std::string> agent_names,
                                     std::vector<std::vector<int>> rankings)
    : houses_(std::move(houses)), agent_names_(std::move(agent_names)), rankings_(std::move(rankings)) {
    const int n = static_cast<int>(rankings_.size());
    if (n == 0) throw ValidationError("an assignment problem needs at least one agent");
    if (static_cast<int>(houses_.size()) != n)
        throw ValidationError("house count " + std::to_string(houses_.size()) + " does not match agent count " +
                              std::to_string(n));
    {
        std::unordered_set<std::string> seen;
        for (const auto& h : houses_) {
            if (h.empty()) throw ValidationError("empty house label");
            if (!seen.insert(h).second) throw ValidationError("duplicate house label \"" + h + "\"");
        }
    }
    if (agent_names_.empty()) {
        agent_names_.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) agent_names_.push_back(std::to_string(i + 1));
    }
    if (static_cast<int>(agent_names_.size()) != n)
        throw ValidationError("agent name count does not match agent count");
    for (const auto& r : rankings_) check_permutation(r, n);
}

int AssignmentProblem::house_index(const std::string& label) const {
    for (std::size_t i = 0; i < houses_.size(); ++i)
        if (houses_[i] == label) return static_cast<int>(i);
    throw ValidationError("unknown house label \"" + label + "\"");
}

namespace {

int top_available(const std::vector<int>& ranking, const IndexSet& available) {
    for (int h : ranking)
        if (available.test(h)) return h;
    throw IntegrityError("agent found no available house");
}

DeterministicAssignment sd_assign_unchecked(const AssignmentProblem& ap, const Permutation& perm) {
    DeterministicAssignment out(static_cast<std::size_t>(ap.num_agents()), -1);
    IndexSet available = IndexSet::full(ap.num_houses());
    for (int i : perm) {
        const int h = top_available(ap.ranking(i), available);
        out[static_cast<std::size_t>(i)] = h;
        available.reset(h);
    }
    return out;
}

void check_enum_guard(int n, int guard_n) {
    if (n > guard_n)
        throw GuardExceeded("enumeration over " + std::to_string(n) + "! permutations refused (guard " +
                            std::to_string(guard_n) + "; raise it explicitly for larger instances)");
}

struct StateKey {
    IndexSet agents;
    IndexSet houses;
    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        return k.agents.hash() * 0x9e3779b97f4a7c15ull ^ k.houses.hash();
    }
};

}  // namespace

DeterministicAssignment sd_assign(const AssignmentProblem& ap, const Permutation& perm) {
    check_permutation(perm, ap.num_agents());
    return sd_assign_unchecked(ap, perm);
}

FractionalMatrix rsd_assign_exact_enum(const AssignmentProblem& ap, int guard_n) {
    const int n = ap.num_agents();
    check_enum_guard(n, guard_n);
    std::vector<std::vector<std::uint64_t>> counts(
        static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
    Permutation perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const DeterministicAssignment a = sd_assign_unchecked(ap, perm);
        for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(a[static_cast<std::size_t>(i)])];
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Int nf = factorial(n);
    FractionalMatrix m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)] =
                ratio(Int(counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)]), nf);
    return m;
}

FractionalMatrix rsd_assign_exact(const AssignmentProblem& ap, int guard_n) {
    const int n = ap.num_agents();
    check_enum_guard(n, guard_n);
    FractionalMatrix m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    // Forward sweep: states at level t hold the probability of reaching
    // (remaining agents, remaining houses) after t picks; each remaining
    // agent is equally likely to pick next.
    std::unordered_map<StateKey, Rational, StateKeyHash> level;
    level.emplace(StateKey{IndexSet::full(n), IndexSet::full(n)}, Rational(1));
    for (int t = 0; t < n; ++t) {
        std::unordered_map<StateKey, Rational, StateKeyHash> next;
        for (const auto& [state, reach] : level) {
            const std::vector<int> remaining = state.agents.elements();
            const Rational share = reach / static_cast<int>(remaining.size());
            for (int i : remaining) {
                const int h = top_available(ap.ranking(i), state.houses);
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)] += share;
                const StateKey succ{state.agents.without(i), state.houses.without(h)};
                auto [it, inserted] = next.emplace(succ, share);
                if (!inserted) it->second += share;
            }
        }
        level = std::move(next);
    }
    return m;
}

FractionalMatrix AssignmentSampleReport::estimates() const {
    FractionalMatrix m(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        m[i].resize(counts[i].size());
        for (std::size_t h = 0; h < counts[i].size(); ++h) m[i][h] = ratio(Int(counts[i][h]), Int(total));
    }
    return m;
}

AssignmentSampleReport rsd_assign_sample(const AssignmentProblem& ap, std::uint64_t total,
                                         std::uint64_t seed) {
    if (total == 0) throw ValidationError("sample size must be positive");
    const int n = ap.num_agents();
    AssignmentSampleReport rep;
    rep.counts.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
    rep.total = total;
    rep.seed = seed;
    rep.generator = detail::kGeneratorTag;
    std::mt19937_64 gen(seed);
    Permutation perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        detail::shuffle_permutation(gen, perm);
        const DeterministicAssignment a = sd_assign_unchecked(ap, perm);
        for (int i = 0; i < n; ++i) ++rep.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(a[static_cast<std::size_t>(i)])];
    }
    return rep;
}

std::optional<Permutation> assignment_support_member(const AssignmentProblem& ap,
                                                     const DeterministicAssignment& sigma) {
    const int n = ap.num_agents();
    check_permutation(sigma, n);  // sigma must be a bijection agents -> houses
    IndexSet available = IndexSet::full(n);
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    Permutation perm;
    perm.reserve(static_cast<std::size_t>(n));
    for (int round = 0; round < n; ++round) {
        int pick = -1;
        for (int i = 0; i < n; ++i) {
            if (placed[static_cast<std::size_t>(i)]) continue;
            if (top_available(ap.ranking(i), available) == sigma[static_cast<std::size_t>(i)]) {
                pick = i;
                break;
            }
        }
        // No unplaced agent can be served his sigma-house next, and waiting
        // only shrinks the house pool, so sigma is unreachable.
        if (pick == -1) return std::nullopt;
        placed[static_cast<std::size_t>(pick)] = 1;
        available.reset(sigma[static_cast<std::size_t>(pick)]);
        perm.push_back(pick);
    }
    return perm;
}

}  // namespace rsdkit
