#include "rsdkit/json_io.hpp"

#include <algorithm>
#include <unordered_map>

namespace rsdkit {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object()) parse_fail("expected a JSON object");
    auto it = doc.find(key);
    if (it == doc.end()) parse_fail(std::string("missing field \"") + key + "\"");
    return *it;
}

std::string as_string(const Json& v, const char* what) {
    if (!v.is_string()) parse_fail(std::string(what) + " must be a string");
    return v.get<std::string>();
}

std::vector<std::string> string_array(const Json& v, const char* what) {
    if (!v.is_array()) parse_fail(std::string(what) + " must be an array");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(as_string(e, what));
    return out;
}

// Label -> index map for resolving rankings; duplicate labels are rejected
// later by the owning type, so a plain overwrite-free map suffices here.
std::unordered_map<std::string, int> index_labels(const std::vector<std::string>& labels) {
    std::unordered_map<std::string, int> out;
    for (std::size_t i = 0; i < labels.size(); ++i) out.emplace(labels[i], static_cast<int>(i));
    return out;
}

int resolve(const std::unordered_map<std::string, int>& index, const std::string& label,
            const char* what) {
    auto it = index.find(label);
    if (it == index.end())
        throw ValidationError(std::string("unknown ") + what + " label \"" + label + "\" in a ranking");
    return it->second;
}

Json rational_array(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(rational_to_string(q));
    return out;
}

Json int_array_as_rationals(const std::vector<Int>& v) {
    Json out = Json::array();
    for (const auto& i : v) out.push_back(rational_to_string(Rational(i)));
    return out;
}

Json labels_of(const std::vector<std::string>& labels, const IndexSet& s) {
    Json out = Json::array();
    for (int i : s.elements()) out.push_back(labels[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

Profile profile_from_json(const Json& doc) {
    const std::vector<std::string> alternatives = string_array(field(doc, "alternatives"), "alternatives");
    const auto index = index_labels(alternatives);
    const Json& agents = field(doc, "agents");
    if (!agents.is_array()) parse_fail("\"agents\" must be an array");
    std::vector<std::string> names;
    std::vector<PreferenceRelation> relations;
    int position = 0;
    for (const auto& agent : agents) {
        ++position;
        const Json& ranking = field(agent, "ranking");
        if (!ranking.is_array()) parse_fail("agent ranking must be an array of indifference classes");
        std::vector<std::vector<int>> classes;
        for (const auto& cls : ranking) {
            if (!cls.is_array()) parse_fail("each indifference class must be an array of labels");
            std::vector<int> members;
            for (const auto& label : cls)
                members.push_back(resolve(index, as_string(label, "alternative"), "alternative"));
            classes.push_back(std::move(members));
        }
        relations.emplace_back(static_cast<int>(alternatives.size()), std::move(classes));
        names.push_back(agent.contains("name") ? as_string(agent["name"], "agent name")
                                               : std::to_string(position));
    }
    return Profile(alternatives, std::move(names), std::move(relations));
}

Profile parse_profile(const std::string& text) { return profile_from_json(parse_json_text(text)); }

Json profile_to_json(const Profile& p) {
    Json agents = Json::array();
    for (int i = 0; i < p.num_agents(); ++i) {
        Json ranking = Json::array();
        for (const auto& cls : p.relation(i).classes()) {
            Json members = Json::array();
            for (int alt : cls) members.push_back(p.alternatives()[static_cast<std::size_t>(alt)]);
            ranking.push_back(std::move(members));
        }
        agents.push_back({{"name", p.agent_names()[static_cast<std::size_t>(i)]}, {"ranking", std::move(ranking)}});
    }
    return Json{{"alternatives", p.alternatives()}, {"agents", std::move(agents)}};
}

AssignmentProblem assignment_from_json(const Json& doc) {
    const std::vector<std::string> houses = string_array(field(doc, "houses"), "houses");
    const auto index = index_labels(houses);
    const Json& agents = field(doc, "agents");
    if (!agents.is_array()) parse_fail("\"agents\" must be an array");
    std::vector<std::string> names;
    std::vector<std::vector<int>> rankings;
    int position = 0;
    for (const auto& agent : agents) {
        ++position;
        const Json& ranking = field(agent, "ranking");
        std::vector<int> order;
        for (const auto& label : string_array(ranking, "ranking")) order.push_back(resolve(index, label, "house"));
        rankings.push_back(std::move(order));
        names.push_back(agent.contains("name") ? as_string(agent["name"], "agent name")
                                               : std::to_string(position));
    }
    return AssignmentProblem(houses, std::move(names), std::move(rankings));
}

AssignmentProblem parse_assignment(const std::string& text) {
    return assignment_from_json(parse_json_text(text));
}

Json assignment_to_json(const AssignmentProblem& ap) {
    Json agents = Json::array();
    for (int i = 0; i < ap.num_agents(); ++i) {
        Json ranking = Json::array();
        for (int h : ap.ranking(i)) ranking.push_back(ap.houses()[static_cast<std::size_t>(h)]);
        agents.push_back({{"name", ap.agent_names()[static_cast<std::size_t>(i)]}, {"ranking", std::move(ranking)}});
    }
    return Json{{"houses", ap.houses()}, {"agents", std::move(agents)}};
}

SetCoverInstance set_cover_from_json(const Json& doc) {
    SetCoverInstance sc;
    sc.universe = string_array(field(doc, "universe"), "universe");
    const auto index = index_labels(sc.universe);
    const Json& subsets = field(doc, "subsets");
    if (!subsets.is_array()) parse_fail("\"subsets\" must be an array of label arrays");
    for (const auto& subset : subsets) {
        IndexSet s(static_cast<int>(sc.universe.size()));
        for (const auto& label : string_array(subset, "subset")) s.set(resolve(index, label, "universe"));
        sc.subsets.push_back(std::move(s));
    }
    return sc;
}

SetCoverInstance parse_set_cover(const std::string& text) {
    return set_cover_from_json(parse_json_text(text));
}

Json set_cover_to_json(const SetCoverInstance& sc) {
    Json subsets = Json::array();
    for (const auto& s : sc.subsets) subsets.push_back(labels_of(sc.universe, s));
    return Json{{"universe", sc.universe}, {"subsets", std::move(subsets)}};
}

BipartiteInstance bipartite_from_json(const Json& doc) {
    BipartiteInstance g;
    g.left = string_array(field(doc, "left"), "left");
    g.right = string_array(field(doc, "right"), "right");
    const auto left_index = index_labels(g.left);
    const auto right_index = index_labels(g.right);
    const Json& edges = field(doc, "edges");
    if (!edges.is_array()) parse_fail("\"edges\" must be an array of [left, right] pairs");
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) parse_fail("each edge must be a [left, right] label pair");
        g.edges.emplace_back(resolve(left_index, as_string(e[0], "left endpoint"), "left vertex"),
                             resolve(right_index, as_string(e[1], "right endpoint"), "right vertex"));
    }
    return g;
}

BipartiteInstance parse_bipartite(const std::string& text) {
    return bipartite_from_json(parse_json_text(text));
}

Json bipartite_to_json(const BipartiteInstance& g) {
    Json edges = Json::array();
    for (const auto& [l, r] : g.edges)
        edges.push_back(Json::array({g.left[static_cast<std::size_t>(l)], g.right[static_cast<std::size_t>(r)]}));
    return Json{{"left", g.left}, {"right", g.right}, {"edges", std::move(edges)}};
}

Json fragment_to_json(const AssignmentFragment& frag) {
    Json agents = Json::array();
    for (std::size_t i = 0; i < frag.agent_names.size(); ++i) {
        Json ranking = Json::array();
        for (int h : frag.rankings[i]) ranking.push_back(frag.houses[static_cast<std::size_t>(h)]);
        agents.push_back({{"name", frag.agent_names[i]}, {"ranking", std::move(ranking)}});
    }
    return Json{{"houses", frag.houses},
                {"distinguished_house", frag.houses[static_cast<std::size_t>(frag.distinguished_house)]},
                {"agents", std::move(agents)}};
}

Json lottery_to_json(const Profile& p, const Lottery& l) {
    Json probs = Json::object();
    for (int a = 0; a < p.num_alternatives(); ++a)
        probs[p.alternatives()[static_cast<std::size_t>(a)]] = rational_to_string(l[static_cast<std::size_t>(a)]);
    return Json{{"lottery", std::move(probs)},
                {"denominator_check", int_to_string(factorial(p.num_agents()))}};
}

Json sample_report_to_json(const Profile& p, const SampleReport& rep) {
    Json counts = Json::object();
    Json estimate = Json::object();
    const std::vector<Rational> est = rep.estimates();
    for (int a = 0; a < p.num_alternatives(); ++a) {
        const auto& label = p.alternatives()[static_cast<std::size_t>(a)];
        counts[label] = rep.counts[static_cast<std::size_t>(a)];
        estimate[label] = rational_to_string(est[static_cast<std::size_t>(a)]);
    }
    return Json{{"counts", std::move(counts)},
                {"total", rep.total},
                {"seed", rep.seed},
                {"generator", rep.generator},
                {"estimate", std::move(estimate)}};
}

Json witness_to_json(const Profile& p, int alt, const std::optional<SupportWitness>& w) {
    Json out{{"alternative", p.alternatives()[static_cast<std::size_t>(alt)]}, {"member", w.has_value()}};
    if (w) {
        Json perm = Json::array();
        for (int i : w->permutation) perm.push_back(i + 1);
        Json trace = Json::array();
        for (const auto& [agent, surviving] : w->trace)
            trace.push_back({{"agent", agent + 1}, {"surviving", labels_of(p.alternatives(), surviving)}});
        out["permutation"] = std::move(perm);
        out["trace"] = std::move(trace);
    }
    return out;
}

Json support_to_json(const Profile& p, const std::vector<int>& alts) {
    Json labels = Json::array();
    for (int a : alts) labels.push_back(p.alternatives()[static_cast<std::size_t>(a)]);
    return Json{{"support", std::move(labels)}};
}

namespace {

Json matrix_to_json(const FractionalMatrix& m) {
    Json rows = Json::array();
    for (const auto& row : m) rows.push_back(rational_array(row));
    return rows;
}

}  // namespace

Json fractional_to_json(const AssignmentProblem& ap, const FractionalMatrix& m) {
    return Json{{"agents", ap.agent_names()},
                {"houses", ap.houses()},
                {"matrix", matrix_to_json(m)},
                {"denominator_check", int_to_string(factorial(ap.num_agents()))}};
}

Json assignment_sample_report_to_json(const AssignmentProblem& ap, const AssignmentSampleReport& rep) {
    Json counts = Json::array();
    for (const auto& row : rep.counts) counts.push_back(row);
    return Json{{"agents", ap.agent_names()},
                {"houses", ap.houses()},
                {"counts", std::move(counts)},
                {"total", rep.total},
                {"seed", rep.seed},
                {"generator", rep.generator},
                {"estimate", matrix_to_json(rep.estimates())}};
}

DeterministicAssignment deterministic_assignment_from_json(const AssignmentProblem& ap, const Json& doc) {
    const std::vector<std::string> labels = string_array(field(doc, "assignment"), "assignment");
    if (static_cast<int>(labels.size()) != ap.num_agents())
        throw ValidationError("assignment must list exactly one house per agent");
    DeterministicAssignment out;
    out.reserve(labels.size());
    for (const auto& label : labels) out.push_back(ap.house_index(label));
    return out;
}

DeterministicAssignment parse_deterministic_assignment(const AssignmentProblem& ap, const std::string& text) {
    return deterministic_assignment_from_json(ap, parse_json_text(text));
}

Json deterministic_assignment_to_json(const AssignmentProblem& ap, const DeterministicAssignment& da) {
    Json labels = Json::array();
    for (int h : da) labels.push_back(ap.houses()[static_cast<std::size_t>(h)]);
    return Json{{"assignment", std::move(labels)}};
}

Json factorial_system_to_json(const FactorialSystem& sys) {
    Json matrix = Json::array();
    for (const auto& row : sys.matrix) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(rational_to_string(Rational(e)));
        matrix.push_back(std::move(r));
    }
    return Json{{"columns", sys.unknowns}, {"matrix", std::move(matrix)}, {"rhs", rational_array(sys.rhs)}};
}

namespace {

bool equal_counts(const std::vector<Int>& a, const std::vector<Int>& b) { return a == b; }

}  // namespace

Json cover_recovery_to_json(const SetCoverInstance& sc, const CoverRecovery& rec,
                            const std::vector<Int>& bruteforce) {
    Json unknowns = Json::array();
    for (std::size_t j = 1; j <= rec.counts.size(); ++j) unknowns.push_back("x_" + std::to_string(j));
    return Json{{"universe", sc.universe},
                {"num_subsets", sc.subsets.size()},
                {"unknowns", std::move(unknowns)},
                {"probabilities", rational_array(rec.probs)},
                {"system", factorial_system_to_json(rec.system)},
                {"recovered", int_array_as_rationals(rec.counts)},
                {"bruteforce", int_array_as_rationals(bruteforce)},
                {"match", equal_counts(rec.counts, bruteforce)}};
}

Json prefix_recovery_to_json(const AssignmentProblem& ap, int agent, const PrefixRecovery& rec,
                             const std::vector<Int>& bruteforce) {
    Json unknowns = Json::array();
    for (std::size_t j = 0; j < rec.counts.size(); ++j) unknowns.push_back("q_" + std::to_string(j));
    return Json{{"agent", agent + 1},
                {"agent_name", ap.agent_names()[static_cast<std::size_t>(agent)]},
                {"house", ap.houses()[static_cast<std::size_t>(ap.ranking(agent)[0])]},
                {"unknowns", std::move(unknowns)},
                {"probabilities", rational_array(rec.probs)},
                {"system", factorial_system_to_json(rec.system)},
                {"recovered", int_array_as_rationals(rec.counts)},
                {"bruteforce", int_array_as_rationals(bruteforce)},
                {"match", equal_counts(rec.counts, bruteforce)}};
}

}  // namespace rsdkit
