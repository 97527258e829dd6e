#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrl/analysis.hpp"
#include "qrl/circuit.hpp"
#include "qrl/claims.hpp"
#include "qrl/errors.hpp"
#include "qrl/log.hpp"
#include "qrl/protocols.hpp"
#include "qrl/report_io.hpp"
#include "qrl/rng.hpp"
#include "qrl/runner.hpp"
#include "qrl/tolerances.hpp"

namespace {

using qrl::Cx;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RunFlags {
    std::string scenario;
    std::size_t n = 1;
    std::size_t dim = 2;
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::string mode = "exhaustive";
    std::size_t shots = 0;
    std::string rho = "0.7,0.2,0.1";
    std::string state_path;
    std::string out_path;
    std::string format = "json";
};

struct VerifyFlags {
    std::string only;
    std::string circuits_dir;
};

struct ExecFlags {
    std::string file;
    std::string state_path;
    std::uint64_t seed = 1;
    std::string mode = "exhaustive";
    std::size_t shots = 0;
    std::string out_path;
    std::string format = "json";
};

qrl::DensityOperator parse_rho(const std::string& text) {
    double v[3] = {0.0, 0.0, 0.0};
    std::size_t field = 0;
    std::size_t start = 0;
    while (field < 3) {
        const std::size_t comma = text.find(',', start);
        const std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        char* end = nullptr;
        v[field] = std::strtod(piece.c_str(), &end);
        if (end == piece.c_str() || *end != '\0') {
            throw qrl::ValidationError("--rho expects three comma-separated numbers, got '" +
                                       text + "'");
        }
        ++field;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (field != 3) {
        throw qrl::ValidationError("--rho expects three comma-separated numbers, got '" + text +
                                   "'");
    }
    return qrl::DensityOperator::qubit(v[0], Cx(v[1], v[2]));
}

qrl::Scenario make_scenario(const RunFlags& flags) {
    if (flags.scenario == "single") return qrl::build_single_qubit();
    if (flags.scenario == "multiqubit") return qrl::build_multiqubit(flags.n);
    if (flags.scenario == "qudit") return qrl::build_qudit(flags.dim);
    if (flags.scenario == "multiqudit") return qrl::build_multiqudit(flags.n, flags.dim);
    if (flags.scenario == "largerenv-feedback") return qrl::build_larger_env_feedback();
    if (flags.scenario == "largerenv-registers") return qrl::build_larger_env_register_rich();
    if (flags.scenario == "mixed") return qrl::build_mixed_state(parse_rho(flags.rho));
    throw qrl::ValidationError(
        "unknown scenario '" + flags.scenario +
        "' (try: single, multiqubit, qudit, multiqudit, largerenv-feedback, "
        "largerenv-registers, mixed)");
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qrl::ValidationError("cannot write to " + out_path);
    out << content;
}

void check_mode(const std::string& mode, std::size_t shots) {
    if (mode != "exhaustive" && mode != "sample") {
        throw qrl::ValidationError("--mode must be exhaustive or sample");
    }
    if (mode == "sample" && shots == 0) {
        throw qrl::ValidationError("--mode sample requires --shots");
    }
    if (mode == "exhaustive" && shots != 0) {
        throw qrl::ValidationError("--shots only applies to --mode sample");
    }
}

int cmd_run(const RunFlags& flags) {
    check_mode(flags.mode, flags.shots);
    if (flags.trials == 0) throw qrl::ValidationError("--trials must be at least 1");
    if (flags.format != "json" && flags.format != "csv") {
        throw qrl::ValidationError("--format must be json or csv");
    }
    const qrl::Scenario scenario = make_scenario(flags);
    qrl::ReportOptions options;
    options.mode = flags.mode == "sample" ? qrl::ReportOptions::Mode::Sampled
                                          : qrl::ReportOptions::Mode::Exhaustive;
    options.shots = flags.shots;

    std::vector<qrl::ScenarioReport> reports;
    for (std::size_t t = 0; t < flags.trials; ++t) {
        const std::uint64_t trial_seed = qrl::Rng::substream(flags.seed, t);
        qrl::log_info("trial " + std::to_string(t) + " seed " + std::to_string(trial_seed));
        if (flags.state_path.empty()) {
            reports.push_back(qrl::build_report(scenario, trial_seed, options));
        } else {
            const qrl::PureState input =
                qrl::load_state_file(flags.state_path, scenario.circuit.layout);
            reports.push_back(qrl::build_report(scenario, input, trial_seed, options));
        }
    }
    write_output(flags.out_path, flags.format == "json" ? qrl::reports_to_json(reports)
                                                        : qrl::reports_to_csv(reports));
    for (const qrl::ScenarioReport& report : reports) {
        if (!report.pass) return 1;
    }
    return 0;
}

int cmd_verify(const VerifyFlags& flags) {
    qrl::ClaimOptions options;
    if (!flags.only.empty()) options.filter = flags.only;
    if (!flags.circuits_dir.empty()) {
        options.circuits_dir = flags.circuits_dir;
    } else if (const char* env = std::getenv("QRL_CIRCUITS_DIR")) {
        options.circuits_dir = env;
    }
    const std::vector<qrl::ClaimGroup> groups = qrl::run_claim_suite(options);
    if (groups.empty()) {
        std::cerr << "error: no claim group matches '" << flags.only << "'\n";
        return 2;
    }
    qrl::print_claim_groups(std::cout, groups, true);
    return qrl::all_claims_pass(groups) ? 0 : 1;
}

int cmd_exec(const ExecFlags& flags) {
    check_mode(flags.mode, flags.shots);
    if (flags.format != "json" && flags.format != "csv") {
        throw qrl::ValidationError("--format must be json or csv");
    }
    const qrl::Circuit circuit = qrl::parse_circuit(qrl::read_text_file(flags.file));
    const qrl::SystemLayout& layout = circuit.layout;
    const qrl::PureState input = flags.state_path.empty()
                                     ? qrl::PureState::ground(layout)
                                     : qrl::load_state_file(flags.state_path, layout);

    // Score agent-environment alignment when the roles pair up.
    std::vector<std::size_t> agents;
    std::vector<std::size_t> envs;
    for (std::size_t s = 0; s < layout.size(); ++s) {
        if (layout.role(s) == qrl::Role::Agent) agents.push_back(s);
        if (layout.role(s) == qrl::Role::Environment) envs.push_back(s);
    }
    const std::size_t paired = std::min(agents.size(), envs.size());
    agents.resize(paired);
    envs.resize(paired);
    bool scored = paired > 0;
    for (std::size_t i = 0; i < paired; ++i) {
        scored = scored && layout.dim(agents[i]) == layout.dim(envs[i]);
    }

    struct Row {
        std::vector<std::size_t> outcome;
        double probability = 0.0;
        double fidelity = 1.0;
        double agreement = 1.0;
    };
    std::vector<Row> rows;
    if (flags.mode == "exhaustive") {
        const qrl::ExecutionTrace trace = qrl::run(circuit, input);
        for (const qrl::TraceLeaf& leaf : trace.leaves) {
            Row row;
            row.outcome = qrl::ExecutionTrace::outcome_digits(leaf);
            row.probability = leaf.probability;
            if (scored) {
                row.fidelity = qrl::learning_fidelity(leaf.state, agents, envs);
                row.agreement = qrl::basis_agreement(leaf.state, agents, envs);
            }
            rows.push_back(std::move(row));
        }
    } else {
        qrl::Rng rng(qrl::Rng::substream(flags.seed, 0x753));
        std::map<std::vector<std::size_t>, Row> grouped;
        for (std::size_t shot = 0; shot < flags.shots; ++shot) {
            const qrl::TraceLeaf leaf = qrl::run_sampled(circuit, input, rng);
            const std::vector<std::size_t> key = qrl::ExecutionTrace::outcome_digits(leaf);
            auto [it, fresh] = grouped.try_emplace(key);
            it->second.probability += 1.0;
            if (fresh) {
                it->second.outcome = key;
                if (scored) {
                    it->second.fidelity = qrl::learning_fidelity(leaf.state, agents, envs);
                    it->second.agreement = qrl::basis_agreement(leaf.state, agents, envs);
                }
            }
        }
        for (auto& [key, row] : grouped) {
            row.probability /= static_cast<double>(flags.shots);
            rows.push_back(std::move(row));
        }
    }

    double total = 0.0;
    for (const Row& row : rows) total += row.probability;
    const bool pass = std::abs(total - 1.0) <= qrl::tol::measure;
    const qrl::GateCount counts = qrl::gate_count(circuit);

    std::string out;
    if (flags.format == "json") {
        out += "{\n  \"circuit\": \"" + flags.file + "\",\n";
        out += "  \"layout\": [";
        for (std::size_t s = 0; s < layout.size(); ++s) {
            if (s > 0) out += ", ";
            out += "{\"label\": \"" + layout.label(s) +
                   "\", \"dim\": " + std::to_string(layout.dim(s)) + ", \"role\": \"" +
                   std::string(1, qrl::role_letter(layout.role(s))) + "\"}";
        }
        out += "],\n  \"seed\": " + std::to_string(flags.seed);
        out += ",\n  \"branches\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& row = rows[i];
            out += i > 0 ? "," : "";
            out += "\n    {\"outcome\": [";
            for (std::size_t j = 0; j < row.outcome.size(); ++j) {
                if (j > 0) out += ", ";
                out += std::to_string(row.outcome[j]);
            }
            out += "], \"probability\": " + fmt17(row.probability);
            if (scored) {
                out += ", \"fidelity\": " + fmt17(row.fidelity);
                out += ", \"agreement\": " + fmt17(row.agreement);
            }
            out += "}";
        }
        if (!rows.empty()) out += "\n  ";
        out += "],\n  \"gate_count\": " + std::to_string(counts.total);
        out += ",\n  \"measurements\": " + std::to_string(counts.measurements);
        out += ",\n  \"pass\": ";
        out += pass ? "true" : "false";
        out += "\n}\n";
    } else {
        out = scored ? "branch,outcome,probability,fidelity,agreement\n"
                     : "branch,outcome,probability\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& row = rows[i];
            out += std::to_string(i) + ",";
            for (std::size_t j = 0; j < row.outcome.size(); ++j) {
                if (j > 0) out += '-';
                out += std::to_string(row.outcome[j]);
            }
            out += "," + fmt17(row.probability);
            if (scored) out += "," + fmt17(row.fidelity) + "," + fmt17(row.agreement);
            out += '\n';
        }
    }
    write_output(flags.out_path, out);
    return pass ? 0 : 1;
}

int cmd_list() {
    struct Entry {
        const char* name;
        qrl::Scenario scenario;
        const char* note;
    };
    const std::vector<Entry> entries = {
        {"single", qrl::build_single_qubit(),
         "qubit agent copies a qubit environment through two registers"},
        {"multiqubit", qrl::build_multiqubit(2),
         "n qubit pairs copied in parallel (--n; shown for n=2)"},
        {"qudit", qrl::build_qudit(3),
         "d-level agent and environment (--dim; shown for d=3)"},
        {"multiqudit", qrl::build_multiqudit(2, 3),
         "n d-level pairs (--n, --dim; shown for n=2, d=3)"},
        {"largerenv-feedback", qrl::build_larger_env_feedback(),
         "two-qubit environment, partial measurement plus feedback"},
        {"largerenv-registers", qrl::build_larger_env_register_rich(),
         "two-qubit environment resolved by four registers at once"},
        {"mixed", qrl::build_mixed_state(qrl::DensityOperator::qubit(0.7, Cx(0.2, 0.1))),
         "mixed environment via purification and selector registers (--rho)"},
    };
    for (const Entry& entry : entries) {
        const qrl::GateCount counts = qrl::gate_count(entry.scenario.circuit);
        std::printf("%-20s %2zu subsystems %3zu gates %2zu measurement%s  %s\n", entry.name,
                    entry.scenario.circuit.layout.size(), counts.total, counts.measurements,
                    counts.measurements == 1 ? " " : "s", entry.note);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum reinforcement learning circuit simulator"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and report branch scores");
    run_cmd->add_option("--scenario", run_flags.scenario, "scenario name (see `qrl list`)")
        ->required();
    run_cmd->add_option("--n", run_flags.n, "copies per side where applicable");
    run_cmd->add_option("--dim", run_flags.dim, "levels per subsystem where applicable");
    run_cmd->add_option("--seed", run_flags.seed, "master seed (default 1)");
    run_cmd->add_option("--trials", run_flags.trials, "independent trials (default 1)");
    run_cmd->add_option("--mode", run_flags.mode, "exhaustive or sample");
    run_cmd->add_option("--shots", run_flags.shots, "samples per trial in sample mode");
    run_cmd->add_option("--rho", run_flags.rho, "mixed scenario parameters r00,re01,im01");
    run_cmd->add_option("--state", run_flags.state_path, "initial state file (JSON)");
    run_cmd->add_option("--out", run_flags.out_path, "write the report here instead of stdout");
    run_cmd->add_option("--format", run_flags.format, "json or csv");

    VerifyFlags verify_flags;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the full claim suite");
    verify_cmd->add_option("--only", verify_flags.only, "run only claim groups matching this id");
    verify_cmd->add_option("--circuits", verify_flags.circuits_dir,
                           "directory with stored circuit files");

    ExecFlags exec_flags;
    CLI::App* exec_cmd = app.add_subcommand("exec", "execute a circuit file");
    exec_cmd->add_option("file", exec_flags.file, "circuit file")->required();
    exec_cmd->add_option("--state", exec_flags.state_path, "initial state file (JSON)");
    exec_cmd->add_option("--seed", exec_flags.seed, "sampling seed");
    exec_cmd->add_option("--mode", exec_flags.mode, "exhaustive or sample");
    exec_cmd->add_option("--shots", exec_flags.shots, "samples in sample mode");
    exec_cmd->add_option("--out", exec_flags.out_path, "write the report here instead of stdout");
    exec_cmd->add_option("--format", exec_flags.format, "json or csv");

    CLI::App* list_cmd = app.add_subcommand("list", "list available scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_flags);
        if (verify_cmd->parsed()) return cmd_verify(verify_flags);
        if (exec_cmd->parsed()) return cmd_exec(exec_flags);
        if (list_cmd->parsed()) return cmd_list();
    } catch (const qrl::ParseError& e) {
        std::cerr << "error: " << exec_flags.file << ": " << e.what() << "\n";
        return 2;
    } catch (const qrl::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qrl::LayoutError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qrl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
