#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "rsdkit/assignment.hpp"
#include "test_util.hpp"

using namespace rsdkit;
using testutil::random_assignment;

namespace {

AssignmentProblem aligned_pair() {
    // both agents: h1 > h2
    return AssignmentProblem({"h1", "h2"}, {}, {{0, 1}, {0, 1}});
}

AssignmentProblem opposed_pair() {
    // 1: h1 > h2, 2: h2 > h1
    return AssignmentProblem({"h1", "h2"}, {}, {{0, 1}, {1, 0}});
}

// every deterministic assignment reachable by some picking order
std::set<DeterministicAssignment> enumerate_support(const AssignmentProblem& ap) {
    Permutation perm(static_cast<std::size_t>(ap.num_agents()));
    std::iota(perm.begin(), perm.end(), 0);
    std::set<DeterministicAssignment> out;
    do {
        out.insert(sd_assign(ap, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

TEST_CASE("assignment problem validation") {
    CHECK_NOTHROW(aligned_pair());
    CHECK(aligned_pair().agent_names() == std::vector<std::string>{"1", "2"});
    CHECK(aligned_pair().house_index("h2") == 1);
    CHECK_THROWS_AS(aligned_pair().house_index("h9"), ValidationError);

    // house/agent count mismatch
    CHECK_THROWS_AS(AssignmentProblem({"h1"}, {}, {{0}, {0}}), ValidationError);
    // ranking is not a permutation
    CHECK_THROWS_AS(AssignmentProblem({"h1", "h2"}, {}, {{0, 0}, {0, 1}}), ValidationError);
    CHECK_THROWS_AS(AssignmentProblem({"h1", "h2"}, {}, {{0}, {0, 1}}), ValidationError);
    // duplicate house label
    CHECK_THROWS_AS(AssignmentProblem({"h1", "h1"}, {}, {{0, 1}, {0, 1}}), ValidationError);
}

TEST_CASE("serial dictatorship assignment") {
    CHECK(sd_assign(aligned_pair(), {0, 1}) == DeterministicAssignment{0, 1});
    CHECK(sd_assign(aligned_pair(), {1, 0}) == DeterministicAssignment{1, 0});
    CHECK(sd_assign(opposed_pair(), {0, 1}) == DeterministicAssignment{0, 1});
    CHECK(sd_assign(opposed_pair(), {1, 0}) == DeterministicAssignment{0, 1});
    CHECK_THROWS_AS(sd_assign(aligned_pair(), {0}), ValidationError);
}

TEST_CASE("exact assignment matrices") {
    const FractionalMatrix m = rsd_assign_exact(aligned_pair());
    CHECK(m == FractionalMatrix{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}});
    CHECK(m == rsd_assign_exact_enum(aligned_pair()));

    const FractionalMatrix o = rsd_assign_exact(opposed_pair());
    CHECK(o == FractionalMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
}

TEST_CASE("dynamic program agrees with enumeration on random instances") {
    std::mt19937_64 g(555001);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 1 + static_cast<int>(g() % 6);
        const AssignmentProblem ap = random_assignment(g, n);
        const FractionalMatrix dp = rsd_assign_exact(ap);
        REQUIRE(dp == rsd_assign_exact_enum(ap));
        // doubly stochastic: every row and column sums to one
        for (int i = 0; i < n; ++i) {
            Rational row = 0, col = 0;
            for (int h = 0; h < n; ++h) {
                row += dp[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)];
                col += dp[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)];
            }
            REQUIRE(row == 1);
            REQUIRE(col == 1);
        }
    }
}

TEST_CASE("assignment enumeration guard") {
    std::mt19937_64 g(31);
    const AssignmentProblem ap = random_assignment(g, 5);
    CHECK_THROWS_AS(rsd_assign_exact_enum(ap, 4), GuardExceeded);
    CHECK_THROWS_AS(rsd_assign_exact(ap, 4), GuardExceeded);
}

TEST_CASE("assignment sampling") {
    // distinct tops: every picking order yields the same assignment
    const AssignmentProblem ap({"h1", "h2"}, {}, {{0, 1}, {1, 0}});
    const AssignmentSampleReport rep = rsd_assign_sample(ap, 250, 5);
    CHECK(rep.counts[0][0] == 250);
    CHECK(rep.counts[1][1] == 250);
    CHECK(rep.counts[0][1] == 0);
    CHECK(rep.estimates()[0][0] == 1);

    const AssignmentSampleReport again = rsd_assign_sample(ap, 250, 5);
    CHECK(rep.counts == again.counts);
    CHECK_THROWS_AS(rsd_assign_sample(ap, 0, 5), ValidationError);
}

TEST_CASE("assignment support membership matches enumeration") {
    std::mt19937_64 g(424242);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(g() % 5);
        const AssignmentProblem ap = random_assignment(g, n);
        const std::set<DeterministicAssignment> reachable = enumerate_support(ap);
        DeterministicAssignment sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            const auto perm = assignment_support_member(ap, sigma);
            REQUIRE(perm.has_value() == (reachable.count(sigma) > 0));
            if (perm) REQUIRE(sd_assign(ap, *perm) == sigma);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
}

TEST_CASE("assignment support membership rejects non-bijections") {
    CHECK_THROWS_AS(assignment_support_member(aligned_pair(), {0, 0}), ValidationError);
    CHECK_THROWS_AS(assignment_support_member(aligned_pair(), {0}), ValidationError);
}
