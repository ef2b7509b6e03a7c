#include <doctest.h>

#include <random>

#include "rsdkit/json_io.hpp"
#include "rsdkit/reductions.hpp"
#include "rsdkit/voting.hpp"
#include "test_util.hpp"

using namespace rsdkit;
using testutil::random_assignment;

namespace {

SetCoverInstance singleton_instance() {
    SetCoverInstance sc;
    sc.universe = {"u1"};
    IndexSet s(1);
    s.set(0);
    sc.subsets = {s};
    return sc;
}

SetCoverInstance two_singletons() {
    SetCoverInstance sc;
    sc.universe = {"u1", "u2"};
    IndexSet s1(2), s2(2);
    s1.set(0);
    s2.set(1);
    sc.subsets = {s1, s2};
    return sc;
}

SetCoverInstance random_cover_instance(std::mt19937_64& g, int max_u, int max_n) {
    SetCoverInstance sc;
    const int u = 1 + static_cast<int>(g() % max_u);
    const int n = 1 + static_cast<int>(g() % max_n);
    for (int e = 0; e < u; ++e) sc.universe.push_back("u" + std::to_string(e + 1));
    for (int i = 0; i < n; ++i) {
        IndexSet s(u);
        for (int e = 0; e < u; ++e)
            if (g() & 1) s.set(e);
        sc.subsets.push_back(std::move(s));
    }
    return sc;
}

}  // namespace

TEST_CASE("factorial matrix") {
    CHECK(pascal_matrix(2) == IntMatrix{{1, 1}, {1, 2}});
    CHECK(pascal_matrix(3) == IntMatrix{{1, 1, 2}, {1, 2, 6}, {2, 6, 24}});
    CHECK_THROWS_AS(pascal_matrix(0), ValidationError);
}

TEST_CASE("determinants") {
    CHECK(determinant({{5}}) == 5);
    CHECK(determinant({{1, 2}, {2, 4}}) == 0);
    CHECK(determinant({{0, 1}, {1, 0}}) == -1);
    CHECK(determinant({{0, 0}, {0, 1}}) == 0);
    CHECK_THROWS_AS(determinant({{1, 2}}), ValidationError);

    // det of the factorial matrix is the squared product of 0!..(n-1)!
    for (int n = 1; n <= 8; ++n) {
        Int super = 1;
        for (int k = 0; k < n; ++k) super *= factorial(k);
        CHECK(determinant(pascal_matrix(n)) == super * super);
    }
    CHECK(det_nonzero(pascal_matrix(12)).nonzero);
    CHECK(!det_nonzero({{1, 2}, {2, 4}}).nonzero);
}

TEST_CASE("linear solves") {
    const auto x = solve_linear_system({{2, 1}, {2, 2}}, {Rational(2), Rational(2)});
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(!solve_linear_system({{1, 2}, {2, 4}}, {Rational(1), Rational(1)}).has_value());
    // needs a row swap
    const auto y = solve_linear_system({{0, 1}, {1, 0}}, {Rational(3), Rational(4)});
    REQUIRE(y.has_value());
    CHECK(*y == std::vector<Rational>{Rational(4), Rational(3)});
    CHECK_THROWS_AS(solve_linear_system({{1, 0}, {0, 1}}, {Rational(1)}), ValidationError);
}

TEST_CASE("voting reduction structure") {
    const Profile p = build_voting_reduction(singleton_instance(), 1);
    CHECK(p.alternatives() == std::vector<std::string>{"u1", "a"});
    CHECK(p.num_agents() == 2);
    // subset agent: distinguished alternative on top (S_1 = U leaves no other)
    CHECK(p.relation(0).classes() == std::vector<std::vector<int>>{{1}, {0}});
    // padding agent: all of U above the distinguished alternative
    CHECK(p.relation(1).classes() == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(p.agent_names() == std::vector<std::string>{"1", "2"});

    // distinguished label is freshened when "a" is taken
    SetCoverInstance clash;
    clash.universe = {"a"};
    IndexSet s(1);
    s.set(0);
    clash.subsets = {s};
    CHECK(build_voting_reduction(clash, 1).alternatives() == std::vector<std::string>{"a", "_a"});

    SetCoverInstance empty_universe;
    empty_universe.subsets = {};
    CHECK_THROWS_AS(build_voting_reduction(empty_universe, 1), ValidationError);
    CHECK_THROWS_AS(build_voting_reduction(singleton_instance(), 0), ValidationError);
    CHECK_THROWS_AS(build_voting_reduction(singleton_instance(), 2), ValidationError);

    // an instance whose profile cannot separate u1 from u2 is rejected loudly
    SetCoverInstance degenerate;
    degenerate.universe = {"u1", "u2"};
    degenerate.subsets = {IndexSet(2)};  // one empty subset
    try {
        build_voting_reduction(degenerate, 1);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("u1") != std::string::npos);
        CHECK(msg.find("u2") != std::string::npos);
    }
}

TEST_CASE("set cover brute force") {
    SetCoverInstance sc;
    sc.universe = {"u1", "u2"};
    IndexSet s1(2), s2(2), s12(2);
    s1.set(0);
    s2.set(1);
    s12.set(0);
    s12.set(1);
    sc.subsets = {s1, s2, s12};
    CHECK(count_set_covers_bruteforce(sc, 0) == 0);
    CHECK(count_set_covers_bruteforce(sc, 1) == 1);
    CHECK(count_set_covers_bruteforce(sc, 2) == 3);
    CHECK(count_set_covers_bruteforce(sc, 3) == 1);
    CHECK(count_set_covers_bruteforce(sc, 4) == 0);
    CHECK_THROWS_AS(count_set_covers_bruteforce(sc, 1, 2), GuardExceeded);
}

TEST_CASE("voting recovery system") {
    const std::vector<Rational> probs{Rational(1, 3), Rational(1, 6)};
    const FactorialSystem sys = voting_system_rhs(two_singletons(), probs);
    CHECK(sys.matrix == IntMatrix{{2, 1}, {2, 2}});
    CHECK(sys.rhs == std::vector<Rational>{Rational(2), Rational(2)});
    CHECK(sys.unknowns == std::vector<std::string>{"x_2", "x_1"});
    CHECK(recover_cover_counts(sys) == std::vector<Int>{0, 1});

    // the system matrix is the factorial matrix with column j rescaled by j!
    for (int n = 1; n <= 5; ++n) {
        SetCoverInstance sc;
        sc.universe = {"u1"};
        sc.subsets.assign(static_cast<std::size_t>(n), IndexSet(1));
        const FactorialSystem s = voting_system_rhs(sc, std::vector<Rational>(static_cast<std::size_t>(n)));
        Int scale = 1;
        for (int j = 1; j <= n; ++j) scale *= factorial(j);
        CHECK(determinant(s.matrix) == scale * determinant(pascal_matrix(n)));
    }

    CHECK_THROWS_AS(voting_system_rhs(two_singletons(), {Rational(1, 3)}), ValidationError);
}

TEST_CASE("cover count recovery validates solutions") {
    FactorialSystem sys;
    sys.matrix = {{2, 1}, {2, 2}};
    sys.unknowns = {"x_2", "x_1"};
    sys.rhs = {Rational(0), Rational(0)};
    CHECK(recover_cover_counts(sys) == std::vector<Int>{0, 0});
    sys.rhs = {Rational(1, 2), Rational(0)};  // forces a non-integer solution
    CHECK_THROWS_AS(recover_cover_counts(sys), IntegrityError);
    sys.rhs = {Rational(1), Rational(0)};  // forces a negative integer
    CHECK_THROWS_AS(recover_cover_counts(sys), IntegrityError);
}

TEST_CASE("cover recovery end to end") {
    const CoverRecovery one = recover_cover_counts_pipeline(singleton_instance());
    CHECK(one.probs == std::vector<Rational>{Rational(1, 2)});
    CHECK(one.counts == std::vector<Int>{1});

    const CoverRecovery two = recover_cover_counts_pipeline(two_singletons());
    CHECK(two.probs == std::vector<Rational>{Rational(1, 3), Rational(1, 6)});
    CHECK(two.counts == std::vector<Int>{0, 1});

    std::mt19937_64 g(88311);
    int done = 0;
    while (done < 40) {
        const SetCoverInstance sc = random_cover_instance(g, 3, 3);
        CoverRecovery r;
        try {
            r = recover_cover_counts_pipeline(sc);
        } catch (const ValidationError&) {
            continue;  // instance's profile has an unseparated pair
        }
        ++done;
        for (int j = 1; j <= static_cast<int>(sc.subsets.size()); ++j)
            REQUIRE(r.counts[static_cast<std::size_t>(j - 1)] == count_set_covers_bruteforce(sc, j));
    }

    SetCoverInstance big;
    big.universe = {"u1"};
    IndexSet s(1);
    s.set(0);
    big.subsets.assign(6, s);
    CHECK_THROWS_AS(recover_cover_counts_pipeline(big), GuardExceeded);  // 12 agents > default guard
}

TEST_CASE("assignment reduction structure") {
    const AssignmentProblem base({"h1", "h2"}, {}, {{0, 1}, {1, 0}});
    const AssignmentProblem g1 = build_assignment_reduction(base, 0, 1);
    CHECK(g1.houses() == std::vector<std::string>{"h1", "h2", "d1"});
    CHECK(g1.num_agents() == 3);
    CHECK(g1.ranking(0) == std::vector<int>{0, 1, 2});
    CHECK(g1.ranking(1) == std::vector<int>{1, 0, 2});
    CHECK(g1.ranking(2) == std::vector<int>{0, 1, 2});  // clone of agent 1
    CHECK(g1.agent_names() == std::vector<std::string>{"1", "2", "3"});

    CHECK(build_assignment_reduction(base, 1, 0).houses() == base.houses());
    CHECK_THROWS_AS(build_assignment_reduction(base, 5, 1), ValidationError);
    CHECK_THROWS_AS(build_assignment_reduction(base, 0, -1), ValidationError);

    // dummy labels dodge existing houses as a batch, keeping label order
    const AssignmentProblem clash({"d1", "x"}, {}, {{0, 1}, {1, 0}});
    const AssignmentProblem padded = build_assignment_reduction(clash, 0, 2);
    CHECK(padded.houses() == std::vector<std::string>{"d1", "x", "_d1", "_d2"});
}

TEST_CASE("feasible subset counts") {
    // opposed tops: agent 2 strictly prefers h2 to agent 1's top h1
    const AssignmentProblem opposed({"h1", "h2"}, {}, {{0, 1}, {1, 0}});
    CHECK(feasible_subset_counts(opposed, 0) == std::vector<Int>{1, 1});
    CHECK(count_feasible_subsets_bruteforce(opposed, 0, 1) == 1);
    CHECK(count_feasible_subsets_bruteforce(opposed, 0, 5) == 0);

    // aligned tops: nobody can be served before agent 1 keeps h1 free
    const AssignmentProblem aligned({"h1", "h2"}, {}, {{0, 1}, {0, 1}});
    CHECK(feasible_subset_counts(aligned, 0) == std::vector<Int>{1, 0});

    CHECK_THROWS_AS(feasible_subset_counts(aligned, 0, 0), GuardExceeded);
}

TEST_CASE("bipartite fragments") {
    BipartiteInstance g;
    g.left = {"s1", "s2"};
    g.right = {"t1", "t2"};

    // no edges: everything sits below the distinguished house
    const AssignmentFragment isolated = bipartite_to_assignment(g);
    CHECK(isolated.houses == std::vector<std::string>{"t1", "t2", "h"});
    CHECK(isolated.distinguished_house == 2);
    CHECK(isolated.rankings[0] == std::vector<int>{2, 0, 1});
    CHECK(bipartite_matchable_subsets(g) == 0);

    // complete graph: every non-empty subset matches
    g.edges = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const AssignmentFragment complete = bipartite_to_assignment(g);
    CHECK(complete.rankings[0] == std::vector<int>{0, 1, 2});
    CHECK(fragment_feasible_counts(complete) == std::vector<Int>{1, 2, 1});
    CHECK(bipartite_matchable_subsets(g) == 3);

    // neighbours and non-neighbours are each listed in label order
    BipartiteInstance swapped;
    swapped.left = {"s1"};
    swapped.right = {"t2", "t1"};
    swapped.edges = {{0, 1}};  // s1 - t1
    const AssignmentFragment frag = bipartite_to_assignment(swapped);
    CHECK(frag.houses == std::vector<std::string>{"t2", "t1", "h"});
    CHECK(frag.rankings[0] == std::vector<int>{1, 2, 0});  // t1 above h above t2

    // distinguished house label is freshened on clash
    BipartiteInstance hclash;
    hclash.left = {"s1"};
    hclash.right = {"h"};
    CHECK(bipartite_to_assignment(hclash).houses == std::vector<std::string>{"h", "_h"});

    BipartiteInstance bad;
    bad.left = {"s1"};
    bad.right = {"t1"};
    bad.edges = {{0, 7}};
    CHECK_THROWS_AS(bipartite_to_assignment(bad), ValidationError);
}

TEST_CASE("preserving prefix counts") {
    // order matters: with 1: x>y>h and 2: x>h>y, the pair {1,2} is matchable
    // into {x,y}, yet only the order (2,1) keeps h free -- under (1,2) agent 1
    // grabs x and agent 2 falls through to h.
    const AssignmentProblem tangled({"h", "x", "y"}, {}, {{0, 1, 2}, {1, 2, 0}, {1, 0, 2}});
    CHECK(preserving_prefix_counts(tangled, 0) == std::vector<Int>{1, 2, 1});
    CHECK(feasible_subset_counts(tangled, 0) == std::vector<Int>{1, 2, 1});
    CHECK(count_preserving_prefixes_bruteforce(tangled, 0, 2) == 1);
    CHECK(count_preserving_prefixes_bruteforce(tangled, 0, 2) <
          factorial(2) * count_feasible_subsets_bruteforce(tangled, 0, 2));
    CHECK(count_preserving_prefixes_bruteforce(tangled, 0, 9) == 0);

    const AssignmentProblem opposed({"h1", "h2"}, {}, {{0, 1}, {1, 0}});
    CHECK(preserving_prefix_counts(opposed, 0) == std::vector<Int>{1, 1});
    const AssignmentProblem aligned({"h1", "h2"}, {}, {{0, 1}, {0, 1}});
    CHECK(preserving_prefix_counts(aligned, 0) == std::vector<Int>{1, 0});

    CHECK_THROWS_AS(preserving_prefix_counts(aligned, 0, 0), GuardExceeded);
    CHECK_THROWS_AS(preserving_prefix_counts(aligned, 7), ValidationError);
}

TEST_CASE("prefix count recovery system") {
    const std::vector<Rational> probs{Rational(1, 2), Rational(1, 3)};
    const FactorialSystem sys = assignment_system(probs);
    CHECK(sys.matrix == IntMatrix{{1, 1}, {1, 2}});
    CHECK(sys.rhs == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK(sys.unknowns == std::vector<std::string>{"q_1", "q_0"});
    CHECK(recover_prefix_counts(probs) == std::vector<Int>{1, 0});
    CHECK(recover_prefix_counts({Rational(1), Rational(1, 2)}) == std::vector<Int>{1, 1});
    CHECK_THROWS_AS(recover_prefix_counts({Rational(1, 2), Rational(1, 2)}), IntegrityError);

    for (int n = 1; n <= 5; ++n) {
        const FactorialSystem s = assignment_system(std::vector<Rational>(static_cast<std::size_t>(n)));
        CHECK(s.matrix == pascal_matrix(n));
    }
}

TEST_CASE("prefix count recovery end to end") {
    const AssignmentProblem opposed({"h1", "h2"}, {}, {{0, 1}, {1, 0}});
    const PrefixRecovery r = recover_prefix_counts_pipeline(opposed, 0);
    CHECK(r.probs == std::vector<Rational>{Rational(1), Rational(1, 2)});
    CHECK(r.counts == std::vector<Int>{1, 1});

    std::mt19937_64 g(160301);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(g() % 4);
        const AssignmentProblem ap = random_assignment(g, n);
        const int agent = static_cast<int>(g() % static_cast<std::uint64_t>(n));
        const PrefixRecovery rec = recover_prefix_counts_pipeline(ap, agent);
        REQUIRE(rec.counts == preserving_prefix_counts(ap, agent));
        REQUIRE(rec.counts[0] == 1);  // the empty prefix always preserves

        // each matchable coalition admits at least one preserving order and
        // at most all j! of them; non-matchable ones admit none
        const std::vector<Int> subsets = feasible_subset_counts(ap, agent);
        for (std::size_t j = 0; j < subsets.size(); ++j) {
            REQUIRE(rec.counts[j] >= subsets[j]);
            REQUIRE(rec.counts[j] <= factorial(static_cast<int>(j)) * subsets[j]);
        }
    }
}
