// Command-line driver. Exit codes: 0 = conclusive answer, 1 = usage or
// parse error, 2 = inconclusive (budget exhausted before a decision).
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ccc/crossing.hpp"
#include "ccc/crossing_oracle.hpp"
#include "ccc/io.hpp"
#include "ccc/pathdecomp.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_inconclusive = 2;

ccc::GraphRecord load_graph(const std::string& path) {
    if (path == "-") return ccc::read_graph_record(std::cin);
    std::ifstream in(path);
    if (!in) throw ccc::bad_input("cannot open '" + path + "'");
    return ccc::read_graph_record(in);
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ccc::bad_input("cannot open '" + out_path + "' for writing");
    out << text;
}

std::string budget_str(int budget) {
    return budget < 0 ? std::string("none") : std::to_string(budget);
}

ordered_json budget_json(int budget) {
    if (budget < 0) return nullptr;
    return budget;
}

struct CrArgs {
    std::string input;
    int budget = -1;
    bool oracle = false;
    std::string format = "text";
    std::string output;
    std::string witness_path;
};

int run_cr(const CrArgs& a) {
    const ccc::Multigraph g = load_graph(a.input).graph;
    const std::string engine = a.oracle ? "oracle" : "solver";

    bool conclusive = false;
    int value = -1;
    int lower_bound = 0;
    std::optional<ccc::Drawing> witness;

    if (a.oracle) {
        // The oracle needs an explicit ceiling; without a user budget, the
        // number of independent edge pairs bounds cr from above.
        int cap = a.budget;
        if (cap < 0) cap = static_cast<int>(ccc::detail::independent_edge_pairs(g).size());
        auto r = ccc::oracle_crossing_number(g, cap);
        if (r) {
            conclusive = true;
            value = *r;
            lower_bound = *r;
        } else {
            lower_bound = cap + 1;
        }
    } else {
        ccc::CrossingResult r = ccc::crossing_number(g, a.budget);
        conclusive = r.conclusive;
        value = r.value;
        lower_bound = r.lower_bound;
        witness = std::move(r.witness);
    }

    std::ostringstream rep;
    if (a.format == "json") {
        ordered_json j;
        j["command"] = "cr";
        j["input"] = a.input;
        j["policy"] = {{"budget", budget_json(a.budget)}, {"engine", engine}};
        j["conclusive"] = conclusive;
        j["cr"] = conclusive ? ordered_json(value) : ordered_json(nullptr);
        j["lower_bound"] = lower_bound;
        rep << j.dump(2) << "\n";
    } else {
        rep << "command: cr\n";
        rep << "input: " << a.input << "\n";
        rep << "policy: budget=" << budget_str(a.budget) << " engine=" << engine << "\n";
        if (conclusive) {
            rep << "cr = " << value << "\n";
        } else {
            rep << "unknown above budget " << a.budget << "\n";
            rep << "lower bound: " << lower_bound << "\n";
        }
    }
    emit(a.output, rep.str());

    if (!a.witness_path.empty() && witness) {
        emit(a.witness_path, ccc::drawing_to_string(*witness));
    }
    return conclusive ? exit_ok : exit_inconclusive;
}

struct CriticalArgs {
    std::string input;
    int c = 1;
    int delta = -1;  // >= 1 switches to the (c, delta) test
    int budget = -1;
    std::string format = "text";
    std::string output;
};

const char* verdict_str(ccc::Verdict v) {
    switch (v) {
        case ccc::Verdict::critical: return "critical";
        case ccc::Verdict::not_critical: return "not critical";
        default: return "inconclusive";
    }
}

int run_critical(const CriticalArgs& a) {
    const ccc::Multigraph g = load_graph(a.input).graph;

    if (a.delta >= 1) {
        auto r = ccc::is_cd_critical(g, a.c, a.delta, a.budget);
        std::ostringstream rep;
        if (a.format == "json") {
            ordered_json j;
            j["command"] = "critical";
            j["input"] = a.input;
            j["policy"] = {{"c", a.c}, {"delta", a.delta}, {"budget", budget_json(a.budget)}};
            j["verdict"] = r ? (*r ? "cd-critical" : "not cd-critical") : "inconclusive";
            rep << j.dump(2) << "\n";
        } else {
            rep << "command: critical\n";
            rep << "input: " << a.input << "\n";
            rep << "policy: c=" << a.c << " delta=" << a.delta
                << " budget=" << budget_str(a.budget) << "\n";
            rep << (r ? (*r ? "cd-critical" : "not cd-critical") : "inconclusive") << "\n";
        }
        emit(a.output, rep.str());
        return r ? exit_ok : exit_inconclusive;
    }

    ccc::CriticalityReport r = ccc::is_crossing_critical(g, a.c, a.budget);
    std::ostringstream rep;
    if (a.format == "json") {
        ordered_json j;
        j["command"] = "critical";
        j["input"] = a.input;
        j["policy"] = {{"c", a.c}, {"budget", budget_json(a.budget)}};
        j["verdict"] = verdict_str(r.verdict);
        j["cr"] = r.cr_value ? ordered_json(*r.cr_value) : ordered_json(nullptr);
        j["cr_lower_bound"] = r.cr_lower_bound;
        ordered_json edges = ordered_json::array();
        for (const auto& [eid, cr_sub] : r.per_edge) {
            edges.push_back({{"edge", eid},
                             {"cr", cr_sub ? ordered_json(*cr_sub) : ordered_json(nullptr)}});
        }
        j["per_edge"] = std::move(edges);
        j["reason"] = r.reason;
        rep << j.dump(2) << "\n";
    } else {
        rep << "command: critical\n";
        rep << "input: " << a.input << "\n";
        rep << "policy: c=" << a.c << " budget=" << budget_str(a.budget) << "\n";
        rep << verdict_str(r.verdict) << "\n";
        if (r.cr_value) {
            rep << "cr = " << *r.cr_value << "\n";
        } else {
            rep << "cr lower bound: " << r.cr_lower_bound << "\n";
        }
        for (const auto& [eid, cr_sub] : r.per_edge) {
            rep << "edge " << eid << ": cr = "
                << (cr_sub ? std::to_string(*cr_sub) : std::string("unknown")) << "\n";
        }
        if (!r.reason.empty()) rep << "reason: " << r.reason << "\n";
    }
    emit(a.output, rep.str());
    return r.verdict == ccc::Verdict::inconclusive ? exit_inconclusive : exit_ok;
}

struct PdValidateArgs {
    std::string graph_path;
    std::string pd_path;
    std::string format = "text";
    std::string output;
};

int run_pd_validate(const PdValidateArgs& a) {
    const ccc::Multigraph g = load_graph(a.graph_path).graph;
    ccc::PathDecomposition d;
    if (a.pd_path == "-") {
        d = ccc::read_path_decomposition(std::cin, g);
    } else {
        std::ifstream in(a.pd_path);
        if (!in) throw ccc::bad_input("cannot open '" + a.pd_path + "'");
        d = ccc::read_path_decomposition(in, g);
    }
    ccc::DecompositionMetrics m = ccc::validate(d);

    std::ostringstream rep;
    if (a.format == "json") {
        ordered_json j;
        j["command"] = "pd validate";
        j["input"] = {a.graph_path, a.pd_path};
        j["valid"] = true;
        j["order"] = m.order;
        j["width"] = m.width;
        j["interior_width"] = m.interior_width;
        j["adhesion"] = m.adhesion;
        j["proper"] = m.proper;
        j["linked"] = m.linked_p ? ordered_json(*m.linked_p) : ordered_json(nullptr);
        rep << j.dump(2) << "\n";
    } else {
        rep << "command: pd validate\n";
        rep << "input: " << a.graph_path << " " << a.pd_path << "\n";
        rep << "valid\n";
        rep << "order: " << m.order << "\n";
        rep << "width: " << m.width << "\n";
        rep << "interior width: " << m.interior_width << "\n";
        rep << "adhesion: " << m.adhesion << "\n";
        rep << "proper: " << (m.proper ? "yes" : "no") << "\n";
        rep << "linked: " << (m.linked_p ? std::to_string(*m.linked_p) : std::string("none"))
            << "\n";
    }
    emit(a.output, rep.str());
    return exit_ok;
}

struct PdFindArgs {
    std::string input;
    int width = 0;
    std::string format = "text";
    std::string output;
    std::string decomposition_path;
};

int run_pd_find(const PdFindArgs& a) {
    const ccc::Multigraph g = load_graph(a.input).graph;
    if ((int)g.vertices.size() > 22) {
        std::ostringstream rep;
        if (a.format == "json") {
            ordered_json j;
            j["command"] = "pd find";
            j["input"] = a.input;
            j["policy"] = {{"width", a.width}};
            j["conclusive"] = false;
            j["reason"] = "graph too large for exact search";
            rep << j.dump(2) << "\n";
        } else {
            rep << "command: pd find\n";
            rep << "input: " << a.input << "\n";
            rep << "policy: width=" << a.width << "\n";
            rep << "inconclusive: graph too large for exact search\n";
        }
        emit(a.output, rep.str());
        return exit_inconclusive;
    }

    auto d = ccc::find_path_decomposition(g, a.width);
    std::ostringstream rep;
    if (a.format == "json") {
        ordered_json j;
        j["command"] = "pd find";
        j["input"] = a.input;
        j["policy"] = {{"width", a.width}};
        j["conclusive"] = true;
        if (d) {
            ccc::DecompositionMetrics m = ccc::validate(*d);
            j["found"] = true;
            j["width"] = m.width;
            j["order"] = m.order;
        } else {
            j["found"] = false;
        }
        rep << j.dump(2) << "\n";
    } else {
        rep << "command: pd find\n";
        rep << "input: " << a.input << "\n";
        rep << "policy: width=" << a.width << "\n";
        if (d) {
            ccc::DecompositionMetrics m = ccc::validate(*d);
            rep << "found width " << m.width << " order " << m.order << "\n";
        } else {
            rep << "none\n";
        }
    }
    emit(a.output, rep.str());
    if (d && !a.decomposition_path.empty())
        emit(a.decomposition_path, ccc::path_decomposition_to_string(*d));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crossing-critical graph toolkit"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker processes for bulk commands")
        ->check(CLI::Range(1, 1 << 16));

    CrArgs cr_args;
    CLI::App* cr_cmd = app.add_subcommand("cr", "exact crossing number of a graph");
    cr_cmd->add_option("input", cr_args.input, "graph file ('-' for stdin)")->required();
    cr_cmd->add_option("--budget", cr_args.budget, "largest crossing count to try")
        ->envname("CCC_BUDGET");
    CLI::Option* oracle_flag =
        cr_cmd->add_flag("--oracle", cr_args.oracle, "use the brute-force reference engine");
    cr_cmd->add_option("--format", cr_args.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    cr_cmd->add_option("--output", cr_args.output, "write the report to a file");
    cr_cmd->add_option("--witness", cr_args.witness_path, "write an optimal drawing to a file")
        ->excludes(oracle_flag);

    CriticalArgs crit_args;
    CLI::App* crit_cmd = app.add_subcommand("critical", "decide c-crossing-criticality");
    crit_cmd->add_option("input", crit_args.input, "graph file ('-' for stdin)")->required();
    crit_cmd->add_option("--c", crit_args.c, "criticality threshold c")->required();
    crit_cmd->add_option("--delta", crit_args.delta, "also require cr(g-e) >= cr(g)-delta");
    crit_cmd->add_option("--budget", crit_args.budget, "largest crossing count to try")
        ->envname("CCC_BUDGET");
    crit_cmd->add_option("--format", crit_args.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    crit_cmd->add_option("--output", crit_args.output, "write the report to a file");

    CLI::App* pd_cmd = app.add_subcommand("pd", "path decompositions");
    pd_cmd->require_subcommand(1);
    PdValidateArgs pdv_args;
    CLI::App* pdv_cmd = pd_cmd->add_subcommand("validate", "check a decomposition and report metrics");
    pdv_cmd->add_option("graph", pdv_args.graph_path, "graph file ('-' for stdin)")->required();
    pdv_cmd->add_option("decomposition", pdv_args.pd_path, "decomposition file ('-' for stdin)")
        ->required();
    pdv_cmd->add_option("--format", pdv_args.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    pdv_cmd->add_option("--output", pdv_args.output, "write the report to a file");

    PdFindArgs pdf_args;
    CLI::App* pdf_cmd = pd_cmd->add_subcommand("find", "exact search for a bounded-width decomposition");
    pdf_cmd->add_option("input", pdf_args.input, "graph file ('-' for stdin)")->required();
    pdf_cmd->add_option("--width", pdf_args.width, "width bound")->required();
    pdf_cmd->add_option("--format", pdf_args.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    pdf_cmd->add_option("--output", pdf_args.output, "write the report to a file");
    pdf_cmd->add_option("--decomposition", pdf_args.decomposition_path,
                        "write the found decomposition to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (cr_cmd->parsed()) return run_cr(cr_args);
        if (crit_cmd->parsed()) return run_critical(crit_args);
        if (pdv_cmd->parsed()) return run_pd_validate(pdv_args);
        if (pdf_cmd->parsed()) return run_pd_find(pdf_args);
    } catch (const ccc::bad_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_ok;
}
