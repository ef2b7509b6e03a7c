#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsdkit/json_io.hpp"

namespace py = pybind11;
using namespace rsdkit;

// Documents cross the boundary as JSON strings; the python package wraps
// them back into dicts. Keeps the ABI surface one function wide per
// operation instead of mirroring every C++ type.

namespace {

std::string lottery_json(const std::string& profile, const std::string& method, int guard) {
    const Profile p = parse_profile(profile);
    const Lottery l = method == "enum" ? rsd_exact_enum(p, guard) : rsd_exact_memo(p, guard);
    return dump_json(lottery_to_json(p, l));
}

std::string sample_json(const std::string& profile, std::uint64_t total, std::uint64_t seed) {
    const Profile p = parse_profile(profile);
    return dump_json(sample_report_to_json(p, rsd_sample(p, total, seed)));
}

std::string support_json(const std::string& profile) {
    const Profile p = parse_profile(profile);
    return dump_json(support_to_json(p, support(p)));
}

std::string support_member_json(const std::string& profile, const std::string& alternative) {
    const Profile p = parse_profile(profile);
    const int alt = p.alternative_index(alternative);
    return dump_json(witness_to_json(p, alt, support_member(p, alt)));
}

std::string sd_label(const std::string& profile, const std::vector<int>& order_1based) {
    const Profile p = parse_profile(profile);
    Permutation perm;
    perm.reserve(order_1based.size());
    for (int i : order_1based) perm.push_back(i - 1);
    return p.alternatives()[static_cast<std::size_t>(sd(p, perm))];
}

std::string assign_json(const std::string& problem, const std::string& method, int guard) {
    const AssignmentProblem ap = parse_assignment(problem);
    const FractionalMatrix m = method == "enum" ? rsd_assign_exact_enum(ap, guard) : rsd_assign_exact(ap, guard);
    return dump_json(fractional_to_json(ap, m));
}

std::string assign_sample_json(const std::string& problem, std::uint64_t total, std::uint64_t seed) {
    const AssignmentProblem ap = parse_assignment(problem);
    return dump_json(assignment_sample_report_to_json(ap, rsd_assign_sample(ap, total, seed)));
}

std::string check_assignment_json(const std::string& problem, const std::string& assignment) {
    const AssignmentProblem ap = parse_assignment(problem);
    const auto perm = assignment_support_member(ap, parse_deterministic_assignment(ap, assignment));
    Json doc{{"member", perm.has_value()}};
    if (perm) {
        Json order = Json::array();
        for (int i : *perm) order.push_back(i + 1);
        doc["permutation"] = std::move(order);
    }
    return dump_json(doc);
}

std::string reduce_set_cover_json(const std::string& instance, int k) {
    return dump_json(profile_to_json(build_voting_reduction(parse_set_cover(instance), k)));
}

std::string recover_set_cover_json(const std::string& instance, int guard, int brute_guard) {
    const SetCoverInstance sc = parse_set_cover(instance);
    const CoverRecovery r = recover_cover_counts_pipeline(sc, guard);
    std::vector<Int> brute;
    for (int j = 1; j <= static_cast<int>(sc.subsets.size()); ++j)
        brute.push_back(count_set_covers_bruteforce(sc, j, brute_guard));
    return dump_json(cover_recovery_to_json(sc, r, brute));
}

std::string reduce_assignment_json(const std::string& problem, int agent_1based, int k) {
    return dump_json(assignment_to_json(
        build_assignment_reduction(parse_assignment(problem), agent_1based - 1, k)));
}

std::string recover_assignment_json(const std::string& problem, int agent_1based, int guard,
                                    int brute_guard) {
    const AssignmentProblem ap = parse_assignment(problem);
    const PrefixRecovery r = recover_prefix_counts_pipeline(ap, agent_1based - 1, guard);
    const std::vector<Int> brute = preserving_prefix_counts(ap, agent_1based - 1, brute_guard);
    return dump_json(prefix_recovery_to_json(ap, agent_1based - 1, r, brute));
}

std::string bipartite_fragment_json(const std::string& graph) {
    return dump_json(fragment_to_json(bipartite_to_assignment(parse_bipartite(graph))));
}

std::string pascal_determinant_str(int n) { return int_to_string(determinant(pascal_matrix(n))); }

}  // namespace

PYBIND11_MODULE(_rsdkit, m) {
    m.doc() = "random serial dictatorship toolkit (JSON-string core bindings)";

    const auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<GuardExceeded>(m, "GuardExceeded", base);
    py::register_exception<IntegrityError>(m, "IntegrityError", base);
    py::register_exception<OracleError>(m, "OracleError", base);

    m.def("lottery_json", &lottery_json, py::arg("profile"), py::arg("method") = "memo",
          py::arg("guard") = kDefaultEnumGuard);
    m.def("sample_json", &sample_json, py::arg("profile"), py::arg("total"), py::arg("seed"));
    m.def("support_json", &support_json, py::arg("profile"));
    m.def("support_member_json", &support_member_json, py::arg("profile"), py::arg("alternative"));
    m.def("sd_label", &sd_label, py::arg("profile"), py::arg("order"));
    m.def("assign_json", &assign_json, py::arg("problem"), py::arg("method") = "memo",
          py::arg("guard") = kDefaultEnumGuard);
    m.def("assign_sample_json", &assign_sample_json, py::arg("problem"), py::arg("total"), py::arg("seed"));
    m.def("check_assignment_json", &check_assignment_json, py::arg("problem"), py::arg("assignment"));
    m.def("reduce_set_cover_json", &reduce_set_cover_json, py::arg("instance"), py::arg("k"));
    m.def("recover_set_cover_json", &recover_set_cover_json, py::arg("instance"),
          py::arg("guard") = kDefaultEnumGuard, py::arg("brute_guard") = kDefaultBruteForceGuard);
    m.def("reduce_assignment_json", &reduce_assignment_json, py::arg("problem"), py::arg("agent"),
          py::arg("k"));
    m.def("recover_assignment_json", &recover_assignment_json, py::arg("problem"), py::arg("agent"),
          py::arg("guard") = kDefaultEnumGuard, py::arg("brute_guard") = kDefaultBruteForceGuard);
    m.def("bipartite_fragment_json", &bipartite_fragment_json, py::arg("graph"));
    m.def("pascal_determinant", &pascal_determinant_str, py::arg("n"));
}
