#pragma once

#include <string>
#include <vector>

#include "rsdkit/errors.hpp"
#include "rsdkit/index_set.hpp"
#include "rsdkit/rational.hpp"

namespace rsdkit {

// Agent order for serial dictatorship; entries are 0-based agent indices.
using Permutation = std::vector<int>;

// Probability per alternative, indexed like Profile::alternatives().
using Lottery = std::vector<Rational>;

// Exhaustive enumeration over agent permutations refuses instances beyond
// this many agents unless the caller raises the guard explicitly.
inline constexpr int kDefaultEnumGuard = 10;

// Complete weak order stored as indifference classes, most preferred first.
// Completeness and transitivity are facts of the representation; the
// constructor enforces that the classes partition {0..m-1}.
class PreferenceRelation {
public:
    PreferenceRelation(int num_alternatives, std::vector<std::vector<int>> classes);

    int num_alternatives() const { return static_cast<int>(rank_.size()); }
    int num_classes() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<int>>& classes() const { return classes_; }

    // 0 = most preferred class.
    int rank_of(int alt) const { return rank_[static_cast<std::size_t>(alt)]; }

    bool weakly_prefers(int a, int b) const { return rank_of(a) <= rank_of(b); }
    bool strictly_prefers(int a, int b) const { return rank_of(a) < rank_of(b); }

    bool is_linear() const;
    bool is_dichotomous() const { return num_classes() <= 2; }

    bool operator==(const PreferenceRelation& o) const { return classes_ == o.classes_; }

private:
    std::vector<std::vector<int>> classes_;
    std::vector<int> rank_;
};

// Validated profile; immutable once built. Construction rejects label
// duplicates, arity mismatches, and profiles where some pair of alternatives
// is universally indifferent (every dictatorship outcome must be a single
// alternative, which that assumption guarantees).
class Profile {
public:
    Profile(std::vector<std::string> alternatives,
            std::vector<std::string> agent_names,
            std::vector<PreferenceRelation> relations);

    int num_agents() const { return static_cast<int>(relations_.size()); }
    int num_alternatives() const { return static_cast<int>(alternatives_.size()); }

    const std::vector<std::string>& alternatives() const { return alternatives_; }
    const std::vector<std::string>& agent_names() const { return agent_names_; }
    const PreferenceRelation& relation(int agent) const { return relations_[static_cast<std::size_t>(agent)]; }
    const std::vector<PreferenceRelation>& relations() const { return relations_; }

    // Throws ValidationError on unknown labels.
    int alternative_index(const std::string& label) const;

    bool operator==(const Profile& o) const {
        return alternatives_ == o.alternatives_ && relations_ == o.relations_;
    }

private:
    std::vector<std::string> alternatives_;
    std::vector<std::string> agent_names_;
    std::vector<PreferenceRelation> relations_;
};

// Most preferred members of b under r; b must be non-empty and match r's
// universe. Never empty on valid input.
IndexSet max_set(const PreferenceRelation& r, const IndexSet& b);

// True iff some other alternative is weakly better for every agent and
// strictly better for at least one.
bool pareto_dominated(const Profile& p, int alt);

Rational lottery_sum(const Lottery& l);
std::vector<int> lottery_support(const Lottery& l);

// Throws ValidationError unless perm is a permutation of {0..n-1}.
void check_permutation(const Permutation& perm, int n);

}  // namespace rsdkit
