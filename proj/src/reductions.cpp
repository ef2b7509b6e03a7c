#include "rsdkit/reductions.hpp"

#include <algorithm>
#include <unordered_set>

#include "rsdkit/voting.hpp"

namespace rsdkit {

namespace {

void check_brute_guard(int n, int guard) {
    // 62 is a hard ceiling: subset masks live in one 64-bit word.
    if (n > guard || n > 62)
        throw GuardExceeded("brute force over 2^" + std::to_string(n) + " subsets refused (guard " +
                            std::to_string(std::min(guard, 62)) +
                            "; raise it explicitly for larger instances)");
}

// All factorial operands in the recovery systems stay at or below 2n for an
// n-unknown system; anything larger means the assembly is wrong.
Int bounded_factorial(int v, int max_arg) {
    if (v < 0 || v > max_arg)
        throw IntegrityError("factorial operand " + std::to_string(v) + " outside [0, " +
                             std::to_string(max_arg) + "]");
    return factorial(v);
}

std::string fresh_label(std::string base, const std::vector<std::string>& taken) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base.insert(base.begin(), '_');
    return base;
}

// Dummy labels share one prefix so their lexicographic order matches their
// numeric order (indices are zero-padded to a common width).
std::vector<std::string> fresh_label_batch(const std::string& stem, int count,
                                           const std::vector<std::string>& taken) {
    const std::size_t width = std::to_string(count).size();
    std::string prefix = stem;
    for (;;) {
        bool clash = false;
        for (int t = 1; t <= count && !clash; ++t) {
            std::string idx = std::to_string(t);
            idx.insert(idx.begin(), width - idx.size(), '0');
            clash = std::find(taken.begin(), taken.end(), prefix + idx) != taken.end();
        }
        if (!clash) break;
        prefix.insert(prefix.begin(), '_');
    }
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int t = 1; t <= count; ++t) {
        std::string idx = std::to_string(t);
        idx.insert(idx.begin(), width - idx.size(), '0');
        out.push_back(prefix + idx);
    }
    return out;
}

void check_set_cover(const SetCoverInstance& sc) {
    const int u = static_cast<int>(sc.universe.size());
    std::unordered_set<std::string> seen;
    for (const auto& l : sc.universe) {
        if (l.empty()) throw ValidationError("empty universe label");
        if (!seen.insert(l).second) throw ValidationError("duplicate universe label \"" + l + "\"");
    }
    for (const auto& s : sc.subsets)
        if (s.universe_size() != u)
            throw ValidationError("subset universe size does not match the instance");
}

// Kuhn augmenting paths; adj[u] lists the columns u may occupy.
bool augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& match_col,
             std::vector<char>& visited) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
        if (visited[static_cast<std::size_t>(v)]) continue;
        visited[static_cast<std::size_t>(v)] = 1;
        if (match_col[static_cast<std::size_t>(v)] < 0 ||
            augment(match_col[static_cast<std::size_t>(v)], adj, match_col, visited)) {
            match_col[static_cast<std::size_t>(v)] = u;
            return true;
        }
    }
    return false;
}

// counts[j] = number of j-subsets of the rows that can be perfectly matched
// into their allowed columns. counts[0] is always 1.
std::vector<Int> matchable_subset_counts(const std::vector<IndexSet>& allowed, int num_cols) {
    const int K = static_cast<int>(allowed.size());
    std::vector<std::vector<int>> adj;
    adj.reserve(allowed.size());
    for (const auto& s : allowed) adj.push_back(s.elements());
    std::vector<Int> counts(static_cast<std::size_t>(K) + 1, Int(0));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << K); ++mask) {
        std::vector<int> match_col(static_cast<std::size_t>(num_cols), -1);
        std::vector<char> visited;
        bool ok = true;
        int size = 0;
        for (int u = 0; u < K && ok; ++u) {
            if (!((mask >> u) & 1)) continue;
            ++size;
            visited.assign(static_cast<std::size_t>(num_cols), 0);
            ok = augment(u, adj, match_col, visited);
        }
        if (ok) ++counts[static_cast<std::size_t>(size)];
    }
    return counts;
}

// Solve and insist on counting-valid values; result stays in column order.
std::vector<Int> solve_counts(const FactorialSystem& system) {
    auto sol = solve_linear_system(system.matrix, system.rhs);
    if (!sol) throw IntegrityError("recovery system is singular");
    std::vector<Int> out;
    out.reserve(sol->size());
    for (std::size_t c = 0; c < sol->size(); ++c) {
        const Rational& v = (*sol)[c];
        if (!is_integer(v) || v < 0)
            throw IntegrityError("recovered value for " + system.unknowns[c] +
                                 " is not a non-negative integer: " + rational_to_string(v));
        out.push_back(numerator(v));
    }
    return out;
}

}  // namespace

IntMatrix pascal_matrix(int n) {
    if (n < 1) throw ValidationError("pascal matrix needs n >= 1");
    IntMatrix m(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = factorial(i + j);
    return m;
}

Profile build_voting_reduction(const SetCoverInstance& sc, int k) {
    check_set_cover(sc);
    const int u = static_cast<int>(sc.universe.size());
    const int n = static_cast<int>(sc.subsets.size());
    if (u == 0) throw ValidationError("the universe must be non-empty");
    if (!(1 <= k && k <= n))
        throw ValidationError("padding count k must satisfy 1 <= k <= " + std::to_string(n) +
                              " (got " + std::to_string(k) + ")");

    std::vector<std::string> alternatives = sc.universe;
    alternatives.push_back(fresh_label("a", sc.universe));
    const int dist = u;  // distinguished alternative, always last

    std::vector<PreferenceRelation> relations;
    std::vector<std::string> names;
    relations.reserve(static_cast<std::size_t>(n + k));
    for (int i = 0; i < n; ++i) {
        // (U \ S_i) together with the distinguished alternative on top, S_i below.
        std::vector<int> top, bottom;
        for (int e = 0; e < u; ++e)
            (sc.subsets[static_cast<std::size_t>(i)].test(e) ? bottom : top).push_back(e);
        top.push_back(dist);
        std::vector<std::vector<int>> classes{std::move(top)};
        if (!bottom.empty()) classes.push_back(std::move(bottom));
        relations.emplace_back(u + 1, std::move(classes));
        names.push_back(std::to_string(i + 1));
    }
    for (int t = 0; t < k; ++t) {
        // Padding agents want any universe element over the distinguished one.
        std::vector<int> top(static_cast<std::size_t>(u));
        for (int e = 0; e < u; ++e) top[static_cast<std::size_t>(e)] = e;
        relations.emplace_back(u + 1, std::vector<std::vector<int>>{std::move(top), {dist}});
        names.push_back(std::to_string(n + t + 1));
    }
    return Profile(std::move(alternatives), std::move(names), std::move(relations));
}

Int count_set_covers_bruteforce(const SetCoverInstance& sc, int j, int guard) {
    check_set_cover(sc);
    const int n = static_cast<int>(sc.subsets.size());
    check_brute_guard(n, guard);
    if (j < 0 || j > n) return 0;
    const IndexSet full = IndexSet::full(static_cast<int>(sc.universe.size()));
    Int count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (__builtin_popcountll(mask) != j) continue;
        IndexSet covered(full.universe_size());
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) covered = covered.unite(sc.subsets[static_cast<std::size_t>(i)]);
        if (covered == full) ++count;
    }
    return count;
}

FactorialSystem voting_system_rhs(const SetCoverInstance& sc, const std::vector<Rational>& probs) {
    check_set_cover(sc);
    const int n = static_cast<int>(sc.subsets.size());
    if (n == 0) throw ValidationError("at least one subset is required");
    if (static_cast<int>(probs.size()) != n)
        throw ValidationError("need exactly one probability per padding count k = 1.." + std::to_string(n));
    FactorialSystem sys;
    sys.matrix.assign(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n)));
    sys.rhs.resize(static_cast<std::size_t>(n));
    sys.unknowns.resize(static_cast<std::size_t>(n));
    for (int col = 0; col < n; ++col) sys.unknowns[static_cast<std::size_t>(col)] = "x_" + std::to_string(n - col);
    for (int k = 1; k <= n; ++k) {
        for (int col = 0; col < n; ++col) {
            const int j = n - col;
            sys.matrix[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(col)] =
                bounded_factorial(j, 2 * n) * bounded_factorial(n - j + k - 1, 2 * n);
        }
        sys.rhs[static_cast<std::size_t>(k - 1)] =
            probs[static_cast<std::size_t>(k - 1)] * Rational(bounded_factorial(n + k, 2 * n)) / k;
    }
    if (!det_nonzero(sys.matrix).nonzero)
        throw IntegrityError("cover recovery system is unexpectedly singular");
    return sys;
}

std::vector<Int> recover_cover_counts(const FactorialSystem& system) {
    // Columns run x_n..x_1; report x_1..x_n.
    std::vector<Int> by_col = solve_counts(system);
    std::reverse(by_col.begin(), by_col.end());
    return by_col;
}

CoverRecovery recover_cover_counts_pipeline(const SetCoverInstance& sc, int guard_n) {
    CoverRecovery out;
    const int n = static_cast<int>(sc.subsets.size());
    if (2 * n > guard_n)
        throw GuardExceeded("recovery over " + std::to_string(n) + " subsets builds profiles with up to " +
                            std::to_string(2 * n) + " agents (guard " + std::to_string(guard_n) +
                            "; raise it explicitly for larger instances)");
    out.probs.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const Profile p = build_voting_reduction(sc, k);
        const Lottery l = rsd_exact_memo(p, guard_n);
        out.probs.push_back(l[static_cast<std::size_t>(p.num_alternatives() - 1)]);
    }
    out.system = voting_system_rhs(sc, out.probs);
    out.counts = recover_cover_counts(out.system);
    return out;
}

AssignmentProblem build_assignment_reduction(const AssignmentProblem& ap, int agent, int k) {
    const int n = ap.num_agents();
    if (agent < 0 || agent >= n) throw ValidationError("agent index out of range");
    if (k < 0) throw ValidationError("clone count k must be non-negative");

    std::vector<std::string> houses = ap.houses();
    const std::vector<std::string> dummies =
        k > 0 ? fresh_label_batch("d", k, houses) : std::vector<std::string>{};
    houses.insert(houses.end(), dummies.begin(), dummies.end());

    std::vector<std::vector<int>> rankings;
    std::vector<std::string> names;
    rankings.reserve(static_cast<std::size_t>(n + k));
    auto extend = [&](const std::vector<int>& base) {
        std::vector<int> r = base;
        for (int t = 0; t < k; ++t) r.push_back(n + t);  // dummies last, label order
        return r;
    };
    for (int i = 0; i < n; ++i) {
        rankings.push_back(extend(ap.ranking(i)));
        names.push_back(ap.agent_names()[static_cast<std::size_t>(i)]);
    }
    for (int t = 0; t < k; ++t) {
        rankings.push_back(extend(ap.ranking(agent)));  // clones mirror the fixed agent
        names.push_back(std::to_string(n + t + 1));
    }
    return AssignmentProblem(std::move(houses), std::move(names), std::move(rankings));
}

namespace {

// Houses each other agent strictly prefers to the fixed agent's top house.
std::vector<IndexSet> better_than_top_sets(const AssignmentProblem& ap, int agent) {
    const int n = ap.num_agents();
    const int top = ap.ranking(agent)[0];
    std::vector<IndexSet> allowed;
    allowed.reserve(static_cast<std::size_t>(n - 1));
    for (int o = 0; o < n; ++o) {
        if (o == agent) continue;
        IndexSet s(n);
        for (int h : ap.ranking(o)) {
            if (h == top) break;
            s.set(h);
        }
        allowed.push_back(std::move(s));
    }
    return allowed;
}

}  // namespace

Int count_feasible_subsets_bruteforce(const AssignmentProblem& ap, int agent, int j, int guard) {
    const std::vector<Int> all = feasible_subset_counts(ap, agent, guard);
    if (j < 0 || j >= static_cast<int>(all.size())) return 0;
    return all[static_cast<std::size_t>(j)];
}

std::vector<Int> feasible_subset_counts(const AssignmentProblem& ap, int agent, int guard) {
    const int n = ap.num_agents();
    if (agent < 0 || agent >= n) throw ValidationError("agent index out of range");
    check_brute_guard(n - 1, guard);
    return matchable_subset_counts(better_than_top_sets(ap, agent), n);
}

Int count_preserving_prefixes_bruteforce(const AssignmentProblem& ap, int agent, int j, int guard) {
    const std::vector<Int> all = preserving_prefix_counts(ap, agent, guard);
    if (j < 0 || j >= static_cast<int>(all.size())) return 0;
    return all[static_cast<std::size_t>(j)];
}

std::vector<Int> preserving_prefix_counts(const AssignmentProblem& ap, int agent, int guard) {
    const int n = ap.num_agents();
    if (agent < 0 || agent >= n) throw ValidationError("agent index out of range");
    check_brute_guard(n - 1, guard);
    const int top = ap.ranking(agent)[0];
    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(n - 1));
    for (int o = 0; o < n; ++o)
        if (o != agent) others.push_back(o);

    std::vector<Int> counts(static_cast<std::size_t>(n), Int(0));
    counts[0] = 1;  // the empty prefix leaves every house unclaimed
    std::vector<char> taken(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
        std::vector<int> members;
        for (std::size_t u = 0; u < others.size(); ++u)
            if ((mask >> u) & 1) members.push_back(others[u]);
        do {
            taken.assign(static_cast<std::size_t>(n), 0);
            bool preserved = true;
            for (int m : members) {
                int pick = -1;
                for (int h : ap.ranking(m))
                    if (!taken[static_cast<std::size_t>(h)]) {
                        pick = h;
                        break;
                    }
                if (pick == top) {
                    preserved = false;
                    break;
                }
                taken[static_cast<std::size_t>(pick)] = 1;
            }
            if (preserved) ++counts[members.size()];
        } while (std::next_permutation(members.begin(), members.end()));
    }
    return counts;
}

AssignmentFragment bipartite_to_assignment(const BipartiteInstance& g) {
    const int ls = static_cast<int>(g.left.size());
    const int rs = static_cast<int>(g.right.size());
    {
        std::unordered_set<std::string> seen;
        for (const auto& l : g.left) {
            if (l.empty()) throw ValidationError("empty left vertex label");
            if (!seen.insert(l).second) throw ValidationError("duplicate left vertex label \"" + l + "\"");
        }
        seen.clear();
        for (const auto& r : g.right) {
            if (r.empty()) throw ValidationError("empty right vertex label");
            if (!seen.insert(r).second) throw ValidationError("duplicate right vertex label \"" + r + "\"");
        }
    }
    std::vector<IndexSet> neighbours(static_cast<std::size_t>(ls), IndexSet(rs));
    for (const auto& [l, r] : g.edges) {
        if (l < 0 || l >= ls || r < 0 || r >= rs) throw ValidationError("edge endpoint out of range");
        neighbours[static_cast<std::size_t>(l)].set(r);
    }

    AssignmentFragment frag;
    frag.agent_names = g.left;
    frag.houses = g.right;
    frag.houses.push_back(fresh_label("h", g.right));
    frag.distinguished_house = rs;

    std::vector<int> by_label(static_cast<std::size_t>(rs));
    for (int r = 0; r < rs; ++r) by_label[static_cast<std::size_t>(r)] = r;
    std::sort(by_label.begin(), by_label.end(),
              [&](int x, int y) { return g.right[static_cast<std::size_t>(x)] < g.right[static_cast<std::size_t>(y)]; });

    frag.rankings.reserve(static_cast<std::size_t>(ls));
    for (int l = 0; l < ls; ++l) {
        std::vector<int> ranking;
        ranking.reserve(static_cast<std::size_t>(rs) + 1);
        for (int r : by_label)
            if (neighbours[static_cast<std::size_t>(l)].test(r)) ranking.push_back(r);
        ranking.push_back(frag.distinguished_house);
        for (int r : by_label)
            if (!neighbours[static_cast<std::size_t>(l)].test(r)) ranking.push_back(r);
        frag.rankings.push_back(std::move(ranking));
    }
    return frag;
}

std::vector<Int> fragment_feasible_counts(const AssignmentFragment& frag, int guard) {
    const int K = static_cast<int>(frag.rankings.size());
    check_brute_guard(K, guard);
    const int num_houses = static_cast<int>(frag.houses.size());
    std::vector<IndexSet> allowed;
    allowed.reserve(static_cast<std::size_t>(K));
    for (const auto& ranking : frag.rankings) {
        IndexSet s(num_houses);
        for (int h : ranking) {
            if (h == frag.distinguished_house) break;
            s.set(h);
        }
        allowed.push_back(std::move(s));
    }
    return matchable_subset_counts(allowed, num_houses);
}

Int bipartite_matchable_subsets(const BipartiteInstance& g, int guard) {
    const AssignmentFragment frag = bipartite_to_assignment(g);
    const std::vector<Int> counts = fragment_feasible_counts(frag, guard);
    Int total = 0;
    for (std::size_t j = 1; j < counts.size(); ++j) total += counts[j];
    return total;
}

FactorialSystem assignment_system(const std::vector<Rational>& probs) {
    const int n = static_cast<int>(probs.size());
    if (n == 0) throw ValidationError("at least one probability is required");
    FactorialSystem sys;
    sys.matrix.assign(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n)));
    sys.rhs.resize(static_cast<std::size_t>(n));
    sys.unknowns.resize(static_cast<std::size_t>(n));
    for (int col = 0; col < n; ++col) sys.unknowns[static_cast<std::size_t>(col)] = "q_" + std::to_string(n - 1 - col);
    for (int k = 0; k < n; ++k) {
        for (int col = 0; col < n; ++col) {
            const int j = n - 1 - col;
            sys.matrix[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)] =
                bounded_factorial(n - 1 - j + k, 2 * n);
        }
        sys.rhs[static_cast<std::size_t>(k)] = probs[static_cast<std::size_t>(k)] * Rational(bounded_factorial(n + k, 2 * n));
    }
    if (!det_nonzero(sys.matrix).nonzero)
        throw IntegrityError("prefix-count recovery system is unexpectedly singular");
    return sys;
}

std::vector<Int> recover_prefix_counts(const std::vector<Rational>& probs) {
    // Columns run q_{n-1}..q_0; report q_0..q_{n-1}.
    std::vector<Int> by_col = solve_counts(assignment_system(probs));
    std::reverse(by_col.begin(), by_col.end());
    return by_col;
}

PrefixRecovery recover_prefix_counts_pipeline(const AssignmentProblem& ap, int agent, int guard_n) {
    const int n = ap.num_agents();
    if (agent < 0 || agent >= n) throw ValidationError("agent index out of range");
    PrefixRecovery out;
    out.probs.reserve(static_cast<std::size_t>(n));
    const int top = ap.ranking(agent)[0];
    for (int k = 0; k < n; ++k) {
        const AssignmentProblem gk = build_assignment_reduction(ap, agent, k);
        const FractionalMatrix m = rsd_assign_exact(gk, guard_n);
        out.probs.push_back(m[static_cast<std::size_t>(agent)][static_cast<std::size_t>(top)]);
    }
    out.system = assignment_system(out.probs);
    out.counts = recover_prefix_counts(out.probs);
    return out;
}

}  // namespace rsdkit
