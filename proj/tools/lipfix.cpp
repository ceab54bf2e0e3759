// lipfix: audit, solve and verify linear iterative functional equations.

#include "lipfix/corpus.hpp"
#include "lipfix/error.hpp"
#include "lipfix/gridfn.hpp"
#include "lipfix/hypotheses.hpp"
#include "lipfix/io.hpp"
#include "lipfix/series.hpp"
#include "lipfix/solution_operator.hpp"
#include "lipfix/verify.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace lipfix;

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kRejected = 2,
    kInputError = 3,
    kBudgetOrClosure = 4,
};

struct JobConfig {
    std::string command;
    std::string corpus;
    std::string input;
    std::string output;
    std::string phi_path;
    std::string solution_path;
    std::string format = "csv";
    double epsilon = 1e-8;
    std::size_t grid = 2049;
    std::uint64_t seed = 0;
    std::size_t count = 20;
    std::size_t probes = 4096;
    std::size_t pairs = 4096;
};

struct LoadedSystem {
    EquationSystem system;
    std::optional<Expr> expected;
    std::string label;
};

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::GammaIsOne:
        case ErrorKind::ContractionViolated:
        case ErrorKind::NotAContraction:
        case ErrorKind::NotSolvable: return kRejected;
        case ErrorKind::BudgetExceeded:
        case ErrorKind::DomainNotClosed: return kBudgetOrClosure;
        default: return kInputError;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    out << text;
}

LoadedSystem load_system(const JobConfig& cfg) {
    if (!cfg.corpus.empty() && !cfg.input.empty()) {
        throw Error(ErrorKind::InvalidArgument, "give either --corpus or --input, not both");
    }
    if (!cfg.corpus.empty()) {
        CorpusEntry e = load(cfg.corpus);
        return {std::move(e.system), std::move(e.expected), "corpus:" + cfg.corpus};
    }
    if (!cfg.input.empty()) {
        const std::string text = read_file(cfg.input);
        EquationSystem sys = system_from_json_text(text);
        std::optional<Expr> expected;
        const Json doc = Json::parse(text);
        if (doc.contains("expected") && doc.at("expected").is_string()) {
            expected = parse(doc.at("expected").get<std::string>());
        }
        return {std::move(sys), std::move(expected), "file:" + std::filesystem::path(cfg.input).filename().string()};
    }
    throw Error(ErrorKind::InvalidArgument, "one of --corpus or --input is required");
}

Json envelope(const std::string& command, const LoadedSystem& ls) {
    return {{"schema", std::string(kSchema)}, {"command", command}, {"system", ls.label}};
}

AuditConfig audit_config(const JobConfig& cfg) {
    AuditConfig ac;
    ac.grid_count = cfg.grid;
    ac.pair_count = cfg.pairs;
    ac.seed = cfg.seed;
    return ac;
}

std::string sidecar_path(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    if (p == std::filesystem::path(csv_path)) p += ".meta.json";
    return p.string();
}

int run_audit(const JobConfig& cfg) {
    const LoadedSystem ls = load_system(cfg);
    const HypothesisReport report = audit(ls.system, audit_config(cfg));
    Json doc = envelope("audit", ls);
    doc["audit"] = to_json(report);
    int code = kOk;
    try {
        require_solvable(report);
        doc["status"] = "solvable";
    } catch (const Error& e) {
        doc["status"] = std::string(to_string(e.kind()));
        std::cerr << "lipfix audit: " << e.what() << "\n";
        code = exit_code_for(e.kind());
    }
    write_text(cfg.output, dump_report(doc));
    return code;
}

int run_solve(const JobConfig& cfg) {
    const LoadedSystem ls = load_system(cfg);
    const HypothesisReport report = audit(ls.system, audit_config(cfg));
    require_solvable(report);
    SolveOptions opt;
    opt.epsilon = cfg.epsilon;
    opt.grid = cfg.grid;
    const Solution sol = solve(ls.system, report, opt);

    Json meta = envelope("solve", ls);
    meta["solution"] = solution_metadata(sol);
    meta["audit"] = to_json(report);

    if (cfg.format == "json") {
        Json values = Json::array();
        for (double v : sol.phi.values()) values.push_back(v);
        meta["phi"] = {{"lo", sol.phi.lo()}, {"hi", sol.phi.hi()}, {"values", values}};
        write_text(cfg.output, dump_report(meta));
        return kOk;
    }
    std::ostringstream csv;
    write_csv(csv, sol.phi, ls.expected ? &*ls.expected : nullptr);
    write_text(cfg.output, csv.str());
    if (!cfg.output.empty() && cfg.output != "-") {
        write_text(sidecar_path(cfg.output), dump_report(meta));
    } else {
        std::cerr << dump_report(meta);
    }
    return kOk;
}

int run_verify(const JobConfig& cfg) {
    if (cfg.phi_path.empty()) throw Error(ErrorKind::InvalidArgument, "verify needs --phi <csv>");
    const LoadedSystem ls = load_system(cfg);
    std::istringstream csv(read_file(cfg.phi_path));
    const GridFunction phi = read_csv(csv);
    if (phi.lo() != ls.system.lo() || phi.hi() != ls.system.hi()) {
        throw Error(ErrorKind::GridMismatch, "verify: phi grid [" + std::to_string(phi.lo()) + ", " +
                                                 std::to_string(phi.hi()) + "] differs from the system domain");
    }
    const HypothesisReport report = audit(ls.system, audit_config(cfg));
    require_solvable(report);
    const double L = std::max(report.L_observed, estimate_L(ls.system, phi.size()));

    double tail = 0.0;
    std::string meta_path = cfg.solution_path;
    if (meta_path.empty() && std::filesystem::exists(sidecar_path(cfg.phi_path))) {
        meta_path = sidecar_path(cfg.phi_path);
    }
    if (!meta_path.empty()) {
        const Json meta = Json::parse(read_file(meta_path));
        tail = meta.at("solution").at("tail_bound").get<double>();
    }
    Solution sol{phi};
    sol.gamma = report.gamma;
    sol.lambda_used = report.lambda_declared;
    sol.L_used = L;
    sol.tail_bound = tail;
    const ResidualReport rr = verify_solution(ls.system, sol, L, cfg.probes);

    Json doc = envelope("verify", ls);
    doc["tail_bound"] = tail;
    doc["L_used"] = L;
    doc["residual"] = to_json(rr);
    write_text(cfg.output, dump_report(doc));
    return rr.bound7_ok && rr.bound8_ok ? kOk : kCheckFailed;
}

int run_roundtrip(const JobConfig& cfg) {
    const LoadedSystem ls = load_system(cfg);
    const HypothesisReport report = audit(ls.system, audit_config(cfg));
    require_solvable(report);
    const RoundTripReport rt = round_trip(ls.system, report, cfg.epsilon, cfg.grid, cfg.seed, cfg.count);
    Json doc = envelope("roundtrip", ls);
    doc["roundtrip"] = to_json(rt);
    write_text(cfg.output, dump_report(doc));
    if (!rt.ok) std::cerr << "lipfix roundtrip: tolerance exceeded (max forward error " << rt.max_forward_error
                          << ", max reverse error " << rt.max_reverse_error << ")\n";
    return rt.ok ? kOk : kCheckFailed;
}

int run_corpus_list(const JobConfig& cfg) {
    if (cfg.format == "json") {
        Json doc = {{"schema", std::string(kSchema)}, {"command", "corpus-list"}};
        Json entries = Json::array();
        for (const auto& name : corpus_names()) {
            const CorpusEntry e = load(name);
            entries.push_back({{"name", e.name},
                               {"expected_outcome", std::string(to_string(e.expected_outcome))},
                               {"backend", std::string(to_string(e.backend))},
                               {"description", e.description}});
        }
        doc["entries"] = entries;
        write_text(cfg.output, dump_report(doc));
        return kOk;
    }
    std::ostringstream out;
    for (const auto& name : corpus_names()) {
        const CorpusEntry e = load(name);
        out << e.name << "\t" << to_string(e.expected_outcome) << "\t" << e.description << "\n";
    }
    write_text(cfg.output, out.str());
    return kOk;
}

int run_corpus_export(const JobConfig& cfg) {
    if (cfg.corpus.empty()) throw Error(ErrorKind::InvalidArgument, "corpus-export needs --corpus <name>");
    write_text(cfg.output, export_entry(load(cfg.corpus)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lipfix: Lipschitz solutions of linear iterative functional equations"};
    app.require_subcommand(1);
    JobConfig cfg;

    const auto add_system = [&](CLI::App* sub) {
        sub->add_option("--corpus", cfg.corpus, "built-in system name (see corpus-list)");
        sub->add_option("--input", cfg.input, "system description (JSON)");
    };
    const auto add_common = [&](CLI::App* sub) {
        add_system(sub);
        sub->add_option("--grid", cfg.grid, "grid node count G (>= 2)")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 26));
        sub->add_option("--seed", cfg.seed, "seed for sampled audits and random instances");
        sub->add_option("--pairs", cfg.pairs, "random pairs for the contraction audit")->check(CLI::PositiveNumber);
        sub->add_option("-o,--output", cfg.output, "output path (default: stdout)");
    };
    const auto add_epsilon = [&](CLI::App* sub) {
        sub->add_option("--epsilon", cfg.epsilon, "target series truncation bound")->check(CLI::PositiveNumber);
    };

    auto* audit_cmd = app.add_subcommand("audit", "check the solvability hypotheses");
    add_common(audit_cmd);
    auto* solve_cmd = app.add_subcommand("solve", "solve on a grid and write phi as CSV plus a JSON sidecar");
    add_common(solve_cmd);
    add_epsilon(solve_cmd);
    solve_cmd->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* verify_cmd = app.add_subcommand("verify", "recompute residual and bounds for a phi CSV");
    add_common(verify_cmd);
    verify_cmd->add_option("--phi", cfg.phi_path, "phi CSV written by solve")->required();
    verify_cmd->add_option("--solution", cfg.solution_path, "solve's JSON sidecar (default: next to the CSV)");
    verify_cmd->add_option("--probes", cfg.probes, "midpoint probes")->check(CLI::PositiveNumber);
    auto* rt_cmd = app.add_subcommand("roundtrip", "F -> phi -> F and psi -> F -> psi on random instances");
    add_common(rt_cmd);
    add_epsilon(rt_cmd);
    rt_cmd->add_option("--count", cfg.count, "random instances per direction")->check(CLI::PositiveNumber);
    auto* list_cmd = app.add_subcommand("corpus-list", "list built-in systems");
    list_cmd->add_option("--format", cfg.format, "csv (plain text) or json")->check(CLI::IsMember({"csv", "json"}));
    list_cmd->add_option("-o,--output", cfg.output, "output path (default: stdout)");
    auto* export_cmd = app.add_subcommand("corpus-export", "write a built-in system in the input format");
    export_cmd->add_option("--corpus", cfg.corpus, "built-in system name")->required();
    export_cmd->add_option("-o,--output", cfg.output, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    try {
        if (cfg.command == "audit") return run_audit(cfg);
        if (cfg.command == "solve") return run_solve(cfg);
        if (cfg.command == "verify") return run_verify(cfg);
        if (cfg.command == "roundtrip") return run_roundtrip(cfg);
        if (cfg.command == "corpus-list") return run_corpus_list(cfg);
        if (cfg.command == "corpus-export") return run_corpus_export(cfg);
    } catch (const Error& e) {
        std::cerr << "lipfix " << cfg.command << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const Json::exception& e) {
        std::cerr << "lipfix " << cfg.command << ": malformed JSON: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
