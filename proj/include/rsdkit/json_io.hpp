#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

#include "rsdkit/assignment.hpp"
#include "rsdkit/core.hpp"
#include "rsdkit/reductions.hpp"
#include "rsdkit/voting.hpp"

namespace rsdkit {

// Insertion-ordered so emitted documents follow declaration order and stay
// byte-stable run to run.
using Json = nlohmann::ordered_json;

// json::parse with exceptions rewrapped as ParseError.
Json parse_json_text(const std::string& text);

// Pretty-printed, two-space indent, trailing newline.
std::string dump_json(const Json& doc);

// {"alternatives": [...], "agents": [{"name": ..., "ranking": [[...], ...]}]}
// Ranking is a list of indifference classes, best first; names are optional
// and default to the agent's 1-based position.
Profile profile_from_json(const Json& doc);
Profile parse_profile(const std::string& text);
Json profile_to_json(const Profile& p);

// {"houses": [...], "agents": [{"name": ..., "ranking": [...]}]}
// Ranking is a flat list of house labels, best first.
AssignmentProblem assignment_from_json(const Json& doc);
AssignmentProblem parse_assignment(const std::string& text);
Json assignment_to_json(const AssignmentProblem& ap);

// {"universe": [...], "subsets": [[...], ...]}
SetCoverInstance set_cover_from_json(const Json& doc);
SetCoverInstance parse_set_cover(const std::string& text);
Json set_cover_to_json(const SetCoverInstance& sc);

// {"left": [...], "right": [...], "edges": [[left, right], ...]} with edges
// given as label pairs.
BipartiteInstance bipartite_from_json(const Json& doc);
BipartiteInstance parse_bipartite(const std::string& text);
Json bipartite_to_json(const BipartiteInstance& g);

// Like an assignment document but with a "distinguished_house" field; the
// house count need not match the agent count.
Json fragment_to_json(const AssignmentFragment& frag);

Json lottery_to_json(const Profile& p, const Lottery& l);
Json sample_report_to_json(const Profile& p, const SampleReport& rep);
Json witness_to_json(const Profile& p, int alt, const std::optional<SupportWitness>& w);
Json support_to_json(const Profile& p, const std::vector<int>& alts);

Json fractional_to_json(const AssignmentProblem& ap, const FractionalMatrix& m);
Json assignment_sample_report_to_json(const AssignmentProblem& ap,
                                      const AssignmentSampleReport& rep);

// {"assignment": [house label per agent, in agent order]}
DeterministicAssignment deterministic_assignment_from_json(const AssignmentProblem& ap,
                                                           const Json& doc);
DeterministicAssignment parse_deterministic_assignment(const AssignmentProblem& ap,
                                                       const std::string& text);
Json deterministic_assignment_to_json(const AssignmentProblem& ap,
                                      const DeterministicAssignment& da);

// Recovery reports carry every numeric field as an exact "num/den" string.
Json factorial_system_to_json(const FactorialSystem& sys);
Json cover_recovery_to_json(const SetCoverInstance& sc, const CoverRecovery& rec,
                            const std::vector<Int>& bruteforce);
Json prefix_recovery_to_json(const AssignmentProblem& ap, int agent, const PrefixRecovery& rec,
                             const std::vector<Int>& bruteforce);

}  // namespace rsdkit
