#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rsdkit/json_io.hpp"

namespace {

using namespace rsdkit;

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw ParseError("cannot open input file \"" + path + "\"");
        ss << f.rdbuf();
    }
    return ss.str();
}

int env_guard_default() {
    const char* env = std::getenv("RSDKIT_GUARD_N");
    if (!env) return kDefaultEnumGuard;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(env, &pos);
        if (pos != std::string(env).size() || v < 0) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("RSDKIT_GUARD_N must be a non-negative integer, got \"") + env + "\"");
    }
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << "  ";
            out << row[c];
            if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size(), ' ');
        }
        out << "\n";
    }
    return out.str();
}

struct CommonOpts {
    std::string input = "-";
    std::string format = "json";
    bool use_float = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-i,--input", o.input, "input document (path, or '-' for stdin)")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    cmd->add_flag("--float", o.use_float, "add decimal renderings to table output (display only)");
}

std::string lottery_table(const Profile& p, const Lottery& l, bool use_float) {
    std::vector<std::vector<std::string>> rows{{"alternative", "probability"}};
    if (use_float) rows[0].push_back("decimal");
    for (int a = 0; a < p.num_alternatives(); ++a) {
        std::vector<std::string> row{p.alternatives()[static_cast<std::size_t>(a)],
                                     rational_to_string(l[static_cast<std::size_t>(a)])};
        if (use_float) row.push_back(fmt_double(rational_to_double(l[static_cast<std::size_t>(a)])));
        rows.push_back(std::move(row));
    }
    return render_table(rows);
}

std::string sample_table(const Profile& p, const SampleReport& rep, bool use_float) {
    std::vector<std::vector<std::string>> rows{{"alternative", "count", "estimate"}};
    if (use_float) rows[0].push_back("decimal");
    const std::vector<Rational> est = rep.estimates();
    for (int a = 0; a < p.num_alternatives(); ++a) {
        std::vector<std::string> row{p.alternatives()[static_cast<std::size_t>(a)],
                                     std::to_string(rep.counts[static_cast<std::size_t>(a)]),
                                     rational_to_string(est[static_cast<std::size_t>(a)])};
        if (use_float) row.push_back(fmt_double(rational_to_double(est[static_cast<std::size_t>(a)])));
        rows.push_back(std::move(row));
    }
    std::ostringstream out;
    out << render_table(rows);
    out << "total: " << rep.total << "  seed: " << rep.seed << "  generator: " << rep.generator << "\n";
    return out.str();
}

std::string matrix_table(const std::vector<std::string>& agents, const std::vector<std::string>& houses,
                         const FractionalMatrix& m, bool use_float) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"agent"};
    header.insert(header.end(), houses.begin(), houses.end());
    rows.push_back(std::move(header));
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<std::string> row{agents[i]};
        for (const auto& q : m[i]) {
            std::string cell = rational_to_string(q);
            if (use_float) cell += " (" + fmt_double(rational_to_double(q)) + ")";
            row.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    return render_table(rows);
}

std::string recovery_table(const Json& report) {
    std::vector<std::vector<std::string>> rows{{"unknown", "recovered", "bruteforce"}};
    const auto& unknowns = report["unknowns"];
    const auto& rec = report["recovered"];
    const auto& brute = report["bruteforce"];
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        rows.push_back({unknowns[j].get<std::string>(), rec[j].get<std::string>(), brute[j].get<std::string>()});
    std::ostringstream out;
    out << render_table(rows);
    out << "match: " << (report["match"].get<bool>() ? "yes" : "no") << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rsdkit: random serial dictatorship lotteries, supports, assignments, and count recovery"};
    app.require_subcommand(1);
    std::function<std::string()> run;

    // --- lottery ---------------------------------------------------------
    auto* lot = app.add_subcommand("lottery", "outcome lottery of a voting profile");
    static CommonOpts lot_common;
    static std::string lot_method = "memo";
    static std::uint64_t lot_samples = 10000, lot_seed = 0;
    static int lot_guard = -1;
    add_common(lot, lot_common);
    lot->add_option("--method", lot_method, "enum | memo | sample")
        ->check(CLI::IsMember({"enum", "memo", "sample"}))
        ->capture_default_str();
    lot->add_option("--samples", lot_samples, "draws for --method sample")->capture_default_str();
    lot->add_option("--seed", lot_seed, "RNG seed for --method sample")->capture_default_str();
    lot->add_option("--guard", lot_guard, "max agents for enumeration (default RSDKIT_GUARD_N or 10)");
    lot->callback([&] {
        run = [&]() -> std::string {
            const Profile p = parse_profile(read_input(lot_common.input));
            const int guard = lot_guard >= 0 ? lot_guard : env_guard_default();
            if (lot_method == "sample") {
                const SampleReport rep = rsd_sample(p, lot_samples, lot_seed);
                return lot_common.format == "table" ? sample_table(p, rep, lot_common.use_float)
                                                    : dump_json(sample_report_to_json(p, rep));
            }
            const Lottery l = lot_method == "enum" ? rsd_exact_enum(p, guard) : rsd_exact_memo(p, guard);
            return lot_common.format == "table" ? lottery_table(p, l, lot_common.use_float)
                                                : dump_json(lottery_to_json(p, l));
        };
    });

    // --- support ---------------------------------------------------------
    auto* sup = app.add_subcommand("support", "alternatives with positive lottery probability");
    static CommonOpts sup_common;
    static std::string sup_alternative;
    static bool sup_witness = false;
    add_common(sup, sup_common);
    sup->add_option("--alternative", sup_alternative, "query membership of one alternative");
    sup->add_flag("--witness", sup_witness, "include a realizing permutation and its trace");
    sup->callback([&] {
        run = [&]() -> std::string {
            const Profile p = parse_profile(read_input(sup_common.input));
            if (sup_alternative.empty()) {
                if (sup_witness) throw ValidationError("--witness requires --alternative");
                const std::vector<int> s = support(p);
                if (sup_common.format == "table") {
                    std::vector<std::vector<std::string>> rows{{"alternative"}};
                    for (int a : s) rows.push_back({p.alternatives()[static_cast<std::size_t>(a)]});
                    return render_table(rows);
                }
                return dump_json(support_to_json(p, s));
            }
            const int alt = p.alternative_index(sup_alternative);
            const auto w = support_member(p, alt);
            if (sup_common.format == "table") {
                std::ostringstream out;
                out << "alternative: " << sup_alternative << "\n"
                    << "member: " << (w ? "yes" : "no") << "\n";
                if (w && sup_witness) {
                    out << "permutation:";
                    for (int i : w->permutation) out << " " << i + 1;
                    out << "\n";
                    for (const auto& [agent, surviving] : w->trace) {
                        out << "after agent " << agent + 1 << ":";
                        for (int a : surviving.elements()) out << " " << p.alternatives()[static_cast<std::size_t>(a)];
                        out << "\n";
                    }
                }
                return out.str();
            }
            Json doc = witness_to_json(p, alt, w);
            if (!sup_witness) {
                doc.erase("permutation");
                doc.erase("trace");
            }
            return dump_json(doc);
        };
    });

    // --- assign ----------------------------------------------------------
    auto* asg = app.add_subcommand("assign", "random serial dictatorship over a house allocation instance");
    static CommonOpts asg_common;
    static std::string asg_method = "memo";
    static std::uint64_t asg_samples = 10000, asg_seed = 0;
    static int asg_guard = -1;
    static std::string asg_check;
    add_common(asg, asg_common);
    asg->add_option("--method", asg_method, "enum | memo | sample")
        ->check(CLI::IsMember({"enum", "memo", "sample"}))
        ->capture_default_str();
    asg->add_option("--samples", asg_samples, "draws for --method sample")->capture_default_str();
    asg->add_option("--seed", asg_seed, "RNG seed for --method sample")->capture_default_str();
    asg->add_option("--guard", asg_guard, "max agents for enumeration (default RSDKIT_GUARD_N or 10)");
    asg->add_option("--check-assignment", asg_check,
                    "document with {\"assignment\": [...]}; test whether some picking order realizes it");
    asg->callback([&] {
        run = [&]() -> std::string {
            const AssignmentProblem ap = parse_assignment(read_input(asg_common.input));
            const int guard = asg_guard >= 0 ? asg_guard : env_guard_default();
            if (!asg_check.empty()) {
                const DeterministicAssignment sigma = parse_deterministic_assignment(ap, read_input(asg_check));
                const auto perm = assignment_support_member(ap, sigma);
                if (asg_common.format == "table") {
                    std::ostringstream out;
                    out << "member: " << (perm ? "yes" : "no") << "\n";
                    if (perm) {
                        out << "permutation:";
                        for (int i : *perm) out << " " << i + 1;
                        out << "\n";
                    }
                    return out.str();
                }
                Json doc{{"member", perm.has_value()}};
                if (perm) {
                    Json order = Json::array();
                    for (int i : *perm) order.push_back(i + 1);
                    doc["permutation"] = std::move(order);
                }
                return dump_json(doc);
            }
            if (asg_method == "sample") {
                const AssignmentSampleReport rep = rsd_assign_sample(ap, asg_samples, asg_seed);
                if (asg_common.format == "table") {
                    std::ostringstream out;
                    out << matrix_table(ap.agent_names(), ap.houses(), rep.estimates(), asg_common.use_float);
                    out << "total: " << rep.total << "  seed: " << rep.seed << "  generator: " << rep.generator
                        << "\n";
                    return out.str();
                }
                return dump_json(assignment_sample_report_to_json(ap, rep));
            }
            const FractionalMatrix m =
                asg_method == "enum" ? rsd_assign_exact_enum(ap, guard) : rsd_assign_exact(ap, guard);
            return asg_common.format == "table"
                       ? matrix_table(ap.agent_names(), ap.houses(), m, asg_common.use_float)
                       : dump_json(fractional_to_json(ap, m));
        };
    });

    // --- reduce ----------------------------------------------------------
    auto* red = app.add_subcommand("reduce", "emit the instance a counting problem reduces to");
    red->require_subcommand(1);

    auto* red_sc = red->add_subcommand("set-cover", "set-cover instance -> padded voting profile");
    static CommonOpts red_sc_common;
    static int red_sc_k = 1;
    add_common(red_sc, red_sc_common);
    red_sc->add_option("--k", red_sc_k, "number of padding agents (1..#subsets)")->capture_default_str();
    red_sc->callback([&] {
        run = [&]() -> std::string {
            const SetCoverInstance sc = parse_set_cover(read_input(red_sc_common.input));
            return dump_json(profile_to_json(build_voting_reduction(sc, red_sc_k)));
        };
    });

    auto* red_as = red->add_subcommand("assignment", "house instance -> clone-and-dummy padded instance");
    static CommonOpts red_as_common;
    static int red_as_agent = 1, red_as_k = 0;
    add_common(red_as, red_as_common);
    red_as->add_option("--agent", red_as_agent, "fixed agent, 1-based position")->required();
    red_as->add_option("--k", red_as_k, "number of clones and dummy houses")->capture_default_str();
    red_as->callback([&] {
        run = [&]() -> std::string {
            const AssignmentProblem ap = parse_assignment(read_input(red_as_common.input));
            return dump_json(assignment_to_json(build_assignment_reduction(ap, red_as_agent - 1, red_as_k)));
        };
    });

    auto* red_bi = red->add_subcommand("bipartite", "bipartite graph -> assignment fragment");
    static CommonOpts red_bi_common;
    add_common(red_bi, red_bi_common);
    red_bi->callback([&] {
        run = [&]() -> std::string {
            const BipartiteInstance g = parse_bipartite(read_input(red_bi_common.input));
            return dump_json(fragment_to_json(bipartite_to_assignment(g)));
        };
    });

    // --- recover ---------------------------------------------------------
    auto* rec = app.add_subcommand("recover", "recover counts from exact lottery probabilities");
    rec->require_subcommand(1);

    auto* rec_sc = rec->add_subcommand("set-cover", "all j-cover counts of a set-cover instance");
    static CommonOpts rec_sc_common;
    static int rec_sc_guard = -1, rec_sc_brute = kDefaultBruteForceGuard;
    add_common(rec_sc, rec_sc_common);
    rec_sc->add_option("--guard", rec_sc_guard, "max agents in padded profiles (default RSDKIT_GUARD_N or 10)");
    rec_sc->add_option("--brute-guard", rec_sc_brute, "max subsets for the brute-force cross-check")
        ->capture_default_str();
    rec_sc->callback([&] {
        run = [&]() -> std::string {
            const SetCoverInstance sc = parse_set_cover(read_input(rec_sc_common.input));
            const int guard = rec_sc_guard >= 0 ? rec_sc_guard : env_guard_default();
            const CoverRecovery r = recover_cover_counts_pipeline(sc, guard);
            std::vector<Int> brute;
            for (int j = 1; j <= static_cast<int>(sc.subsets.size()); ++j)
                brute.push_back(count_set_covers_bruteforce(sc, j, rec_sc_brute));
            const Json report = cover_recovery_to_json(sc, r, brute);
            if (!report["match"].get<bool>())
                throw IntegrityError("recovered cover counts disagree with brute force");
            return rec_sc_common.format == "table" ? recovery_table(report) : dump_json(report);
        };
    });

    auto* rec_as = rec->add_subcommand("assignment", "q_j preserving-prefix counts for one agent's top house");
    static CommonOpts rec_as_common;
    static int rec_as_agent = 1, rec_as_guard = -1, rec_as_brute = kDefaultBruteForceGuard;
    add_common(rec_as, rec_as_common);
    rec_as->add_option("--agent", rec_as_agent, "fixed agent, 1-based position")->required();
    rec_as->add_option("--guard", rec_as_guard, "max agents in padded instances (default RSDKIT_GUARD_N or 10)");
    rec_as->add_option("--brute-guard", rec_as_brute, "max agents for the brute-force cross-check")
        ->capture_default_str();
    rec_as->callback([&] {
        run = [&]() -> std::string {
            const AssignmentProblem ap = parse_assignment(read_input(rec_as_common.input));
            const int guard = rec_as_guard >= 0 ? rec_as_guard : env_guard_default();
            const PrefixRecovery r = recover_prefix_counts_pipeline(ap, rec_as_agent - 1, guard);
            const std::vector<Int> brute = preserving_prefix_counts(ap, rec_as_agent - 1, rec_as_brute);
            const Json report = prefix_recovery_to_json(ap, rec_as_agent - 1, r, brute);
            if (!report["match"].get<bool>())
                throw IntegrityError("recovered prefix counts disagree with brute force");
            return rec_as_common.format == "table" ? recovery_table(report) : dump_json(report);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is an input error
    }

    try {
        std::cout << run();
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "rsdkit: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "rsdkit: " << e.what() << "\n";
        return 2;
    } catch (const GuardExceeded& e) {
        std::cerr << "rsdkit: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {  // integrity and oracle failures
        std::cerr << "rsdkit: internal check failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "rsdkit: unexpected error: " << e.what() << "\n";
        return 1;
    }
}
