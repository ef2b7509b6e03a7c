#include "rsdkit/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace rsdkit {

PreferenceRelation::PreferenceRelation(int num_alternatives, std::vector<std::vector<int>> classes)
    : classes_(std::move(classes)) {
    if (num_alternatives < 1) throw ValidationError("a preference relation needs at least one alternative");
    rank_.assign(static_cast<std::size_t>(num_alternatives), -1);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (classes_[c].empty()) throw ValidationError("empty indifference class in ranking");
        for (int alt : classes_[c]) {
            if (alt < 0 || alt >= num_alternatives)
                throw ValidationError("alternative index " + std::to_string(alt) + " out of range in ranking");
            if (rank_[static_cast<std::size_t>(alt)] != -1)
                throw ValidationError("alternative index " + std::to_string(alt) + " listed twice in ranking");
            rank_[static_cast<std::size_t>(alt)] = static_cast<int>(c);
        }
    }
    for (std::size_t a = 0; a < rank_.size(); ++a)
        if (rank_[a] == -1)
            throw ValidationError("ranking is not a partition: alternative index " + std::to_string(a) +
                                  " is missing");
}

bool PreferenceRelation::is_linear() const { return num_classes() == num_alternatives(); }

namespace {

void check_unique_labels(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw ValidationError(std::string("empty ") + what + " label");
        if (!seen.insert(l).second) throw ValidationError(std::string("duplicate ") + what + " label \"" + l + "\"");
    }
}

}  // namespace

Profile::Profile(std::vector<std::string> alternatives,
                 std::vector<std::string> agent_names,
                 std::vector<PreferenceRelation> relations)
    : alternatives_(std::move(alternatives)),
      agent_names_(std::move(agent_names)),
      relations_(std::move(relations)) {
    if (alternatives_.empty()) throw ValidationError("a profile needs at least one alternative");
    check_unique_labels(alternatives_, "alternative");
    if (agent_names_.empty() && !relations_.empty()) {
        agent_names_.reserve(relations_.size());
        for (std::size_t i = 0; i < relations_.size(); ++i) agent_names_.push_back(std::to_string(i + 1));
    }
    if (agent_names_.size() != relations_.size())
        throw ValidationError("agent name count does not match relation count");
    const int m = num_alternatives();
    for (const auto& r : relations_)
        if (r.num_alternatives() != m)
            throw ValidationError("ranking arity does not match the alternative set");
    // Every pair must be separated by someone, otherwise some dictatorship
    // order ends on a set instead of a single alternative.
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            bool separated = false;
            for (const auto& r : relations_)
                if (r.rank_of(a) != r.rank_of(b)) {
                    separated = true;
                    break;
                }
            if (!separated)
                throw ValidationError("universal indifference between \"" + alternatives_[static_cast<std::size_t>(a)] +
                                      "\" and \"" + alternatives_[static_cast<std::size_t>(b)] + "\"");
        }
    }
}

int Profile::alternative_index(const std::string& label) const {
    for (std::size_t i = 0; i < alternatives_.size(); ++i)
        if (alternatives_[i] == label) return static_cast<int>(i);
    throw ValidationError("unknown alternative label \"" + label + "\"");
}

IndexSet max_set(const PreferenceRelation& r, const IndexSet& b) {
    if (b.universe_size() != r.num_alternatives())
        throw ValidationError("max_set: set universe does not match the relation");
    if (b.empty()) throw ValidationError("max_set of an empty set");
    int best = -1;
    for (int alt : b.elements()) {
        const int rk = r.rank_of(alt);
        if (best == -1 || rk < best) best = rk;
    }
    IndexSet out(b.universe_size());
    for (int alt : r.classes()[static_cast<std::size_t>(best)])
        if (b.test(alt)) out.set(alt);
    return out;
}

bool pareto_dominated(const Profile& p, int alt) {
    const int m = p.num_alternatives();
    if (alt < 0 || alt >= m) throw ValidationError("alternative index out of range");
    for (int b = 0; b < m; ++b) {
        if (b == alt) continue;
        bool weakly_everywhere = true;
        bool strict_somewhere = false;
        for (int i = 0; i < p.num_agents(); ++i) {
            const auto& r = p.relation(i);
            if (!r.weakly_prefers(b, alt)) {
                weakly_everywhere = false;
                break;
            }
            if (r.strictly_prefers(b, alt)) strict_somewhere = true;
        }
        if (weakly_everywhere && strict_somewhere) return true;
    }
    return false;
}

Rational lottery_sum(const Lottery& l) {
    Rational s = 0;
    for (const auto& q : l) s += q;
    return s;
}

std::vector<int> lottery_support(const Lottery& l) {
    std::vector<int> out;
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] > 0) out.push_back(static_cast<int>(i));
    return out;
}

void check_permutation(const Permutation& perm, int n) {
    if (static_cast<int>(perm.size()) != n)
        throw ValidationError("permutation length " + std::to_string(perm.size()) + " does not match " +
                              std::to_string(n) + " agents");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : perm) {
        if (v < 0 || v >= n) throw ValidationError("permutation entry out of range");
        if (seen[static_cast<std::size_t>(v)]) throw ValidationError("permutation entry repeated");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

}  // namespace rsdkit
