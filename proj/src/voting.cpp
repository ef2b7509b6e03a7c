#include "rsdkit/voting.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "sampling.hpp"

namespace rsdkit {

namespace {

// Refinement loop shared by the checked entry points. Stops early once the
// surviving set is a singleton (further dictators cannot change it).
IndexSet refine(const Profile& p, const int* agents, int count) {
    IndexSet alive = IndexSet::full(p.num_alternatives());
    for (int t = 0; t < count; ++t) {
        if (alive.is_singleton()) break;
        alive = max_set(p.relation(agents[t]), alive);
    }
    return alive;
}

int sd_unchecked(const Profile& p, const Permutation& perm) {
    const IndexSet alive = refine(p, perm.data(), static_cast<int>(perm.size()));
    if (!alive.is_singleton())
        throw IntegrityError("serial dictatorship ended on a non-singleton set");
    return alive.first();
}

void check_agent_indices(const std::vector<int>& agents, int n) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int a : agents) {
        if (a < 0 || a >= n) throw ValidationError("agent index " + std::to_string(a) + " out of range");
        if (seen[static_cast<std::size_t>(a)])
            throw ValidationError("agent index " + std::to_string(a) + " repeated");
        seen[static_cast<std::size_t>(a)] = 1;
    }
}

void check_enum_guard(int n, int guard_n) {
    if (n > guard_n)
        throw GuardExceeded("enumeration over " + std::to_string(n) + "! permutations refused (guard " +
                            std::to_string(guard_n) + "; raise it explicitly for larger instances)");
}

struct StateKey {
    IndexSet alts;
    IndexSet agents;
    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const { return k.alts.hash() * 0x9e3779b97f4a7c15ull ^ k.agents.hash(); }
};

}  // namespace

int sd(const Profile& p, const Permutation& perm) {
    check_permutation(perm, p.num_agents());
    return sd_unchecked(p, perm);
}

IndexSet sd_prefix(const Profile& p, const std::vector<int>& prefix) {
    check_agent_indices(prefix, p.num_agents());
    return refine(p, prefix.data(), static_cast<int>(prefix.size()));
}

Lottery rsd_exact_enum(const Profile& p, int guard_n) {
    const int n = p.num_agents();
    check_enum_guard(n, guard_n);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(p.num_alternatives()), 0);
    Permutation perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t total = 0;
    do {
        ++counts[static_cast<std::size_t>(sd_unchecked(p, perm))];
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Lottery l(counts.size());
    const Int nf = factorial(n);
    for (std::size_t a = 0; a < counts.size(); ++a) l[a] = ratio(Int(counts[a]), nf);
    (void)total;
    return l;
}

namespace {

const Lottery& memo_lottery(const Profile& p, const IndexSet& alts, const IndexSet& agents,
                            std::unordered_map<StateKey, Lottery, StateKeyHash>& memo) {
    const StateKey key{alts, agents};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const std::size_t m = static_cast<std::size_t>(p.num_alternatives());
    Lottery result(m, Rational(0));
    if (alts.is_singleton() || agents.empty()) {
        // A singleton can no longer change; an exhausted agent set leaves the
        // surviving set as the outcome (singleton for valid full profiles).
        if (!alts.is_singleton())
            throw IntegrityError("serial dictatorship ended on a non-singleton set");
        result[static_cast<std::size_t>(alts.first())] = 1;
    } else {
        const std::vector<int> remaining = agents.elements();
        const Rational share = ratio(1, Int(static_cast<int>(remaining.size())));
        for (int i : remaining) {
            const Lottery& sub = memo_lottery(p, max_set(p.relation(i), alts), agents.without(i), memo);
            for (std::size_t a = 0; a < m; ++a)
                if (sub[a] != 0) result[a] += share * sub[a];
        }
    }
    return memo.emplace(key, std::move(result)).first->second;
}

}  // namespace

Lottery rsd_exact_memo(const Profile& p, int guard_n) {
    check_enum_guard(p.num_agents(), guard_n);
    std::unordered_map<StateKey, Lottery, StateKeyHash> memo;
    return memo_lottery(p, IndexSet::full(p.num_alternatives()), IndexSet::full(p.num_agents()), memo);
}

std::vector<Rational> SampleReport::estimates() const {
    std::vector<Rational> out(counts.size());
    for (std::size_t a = 0; a < counts.size(); ++a) out[a] = ratio(Int(counts[a]), Int(total));
    return out;
}

SampleReport rsd_sample(const Profile& p, std::uint64_t total, std::uint64_t seed) {
    if (total == 0) throw ValidationError("sample size must be positive");
    SampleReport rep;
    rep.counts.assign(static_cast<std::size_t>(p.num_alternatives()), 0);
    rep.total = total;
    rep.seed = seed;
    rep.generator = detail::kGeneratorTag;
    std::mt19937_64 gen(seed);
    Permutation perm(static_cast<std::size_t>(p.num_agents()));
    std::iota(perm.begin(), perm.end(), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        detail::shuffle_permutation(gen, perm);
        ++rep.counts[static_cast<std::size_t>(sd_unchecked(p, perm))];
    }
    return rep;
}

std::optional<SupportWitness> support_member(const Profile& p, int alt) {
    const int m = p.num_alternatives();
    const int n = p.num_agents();
    if (alt < 0 || alt >= m) throw ValidationError("alternative index out of range");
    IndexSet alive = IndexSet::full(m);
    IndexSet remaining = IndexSet::full(n);
    SupportWitness w;
    w.permutation.reserve(static_cast<std::size_t>(n));
    while (!remaining.empty()) {
        int chosen = -1;
        IndexSet refined;
        for (int i : remaining.elements()) {
            IndexSet cand = max_set(p.relation(i), alive);
            if (cand.test(alt)) {
                chosen = i;
                refined = std::move(cand);
                break;  // elements() ascends, so this is the smallest index
            }
        }
        if (chosen == -1) return std::nullopt;
        alive = std::move(refined);
        remaining.reset(chosen);
        w.permutation.push_back(chosen);
        w.trace.emplace_back(chosen, alive);
    }
    if (!(alive.is_singleton() && alive.first() == alt))
        throw IntegrityError("support witness did not end on the queried alternative");
    return w;
}

std::vector<int> support(const Profile& p) {
    std::vector<int> out;
    for (int a = 0; a < p.num_alternatives(); ++a)
        if (support_member(p, a)) out.push_back(a);
    return out;
}

Permutation move_forward(const Permutation& perm, int k, int j) {
    const int n = static_cast<int>(perm.size());
    if (!(1 <= k && k < j && j <= n))
        throw ValidationError("move_forward needs 1 <= k < j <= n (got k=" + std::to_string(k) +
                              ", j=" + std::to_string(j) + ", n=" + std::to_string(n) + ")");
    Permutation out;
    out.reserve(perm.size());
    for (int t = 0; t < k; ++t) out.push_back(perm[static_cast<std::size_t>(t)]);
    out.push_back(perm[static_cast<std::size_t>(j - 1)]);
    for (int t = k; t < n; ++t)
        if (t != j - 1) out.push_back(perm[static_cast<std::size_t>(t)]);
    return out;
}

bool probability_at_least(const Profile& p, int alt, const Rational& q, int guard_n) {
    if (alt < 0 || alt >= p.num_alternatives()) throw ValidationError("alternative index out of range");
    if (!(q > 0 && q < 1)) throw ValidationError("threshold must lie strictly between 0 and 1");
    return rsd_exact_memo(p, guard_n)[static_cast<std::size_t>(alt)] >= q;
}

ThresholdSearchResult binary_search_probability(
    const std::function<bool(const Rational&)>& at_least, int n, bool verify) {
    if (n < 0) throw ValidationError("agent count must be non-negative");
    const Int nf = factorial(n);
    const Int two_nf = 2 * nf;
    ThresholdSearchResult res;
    auto threshold = [&](const Int& c) { return ratio(2 * c - 1, two_nf); };
    auto ask = [&](const Int& c) {
        ++res.queries;
        return at_least(threshold(c));
    };
    Int lo = 0, hi = nf;
    while (lo < hi) {
        const Int mid = (lo + hi + 1) / 2;
        if (ask(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    res.probability = ratio(lo, nf);
    if (verify) {
        if (lo > 0 && !ask(lo))
            throw OracleError("threshold oracle rejected a bound it must accept at " +
                              rational_to_string(threshold(lo)));
        if (lo < nf && ask(lo + 1))
            throw OracleError("threshold oracle accepted a bound it must reject at " +
                              rational_to_string(threshold(lo + 1)));
    }
    return res;
}

}  // namespace rsdkit
