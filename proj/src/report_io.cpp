#include "qrl/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrl/errors.hpp"

namespace qrl {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_quoted(std::string& out, const std::string& s) {
    out += '"';
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

void append_report(std::string& out, const ScenarioReport& report, const std::string& pad) {
    const std::string inner = pad + "  ";
    out += pad + "{\n";
    out += inner;
    append_quoted(out, "scenario");
    out += ": ";
    append_quoted(out, report.scenario);
    out += ",\n" + inner + "\"params\": {";
    for (std::size_t i = 0; i < report.params.size(); ++i) {
        if (i > 0) out += ", ";
        append_quoted(out, report.params[i].first);
        out += ": " + fmt(report.params[i].second);
    }
    out += "},\n" + inner + "\"seed\": " + std::to_string(report.seed);
    out += ",\n" + inner + "\"branches\": [";
    for (std::size_t i = 0; i < report.branches.size(); ++i) {
        const BranchReport& b = report.branches[i];
        out += (i > 0 ? "," : "");
        out += "\n" + inner + "  {\"outcome\": [";
        for (std::size_t j = 0; j < b.outcome.size(); ++j) {
            if (j > 0) out += ", ";
            out += std::to_string(b.outcome[j]);
        }
        out += "], \"probability\": " + fmt(b.probability);
        out += ", \"fidelity\": " + fmt(b.fidelity);
        out += ", \"agreement\": " + fmt(b.agreement) + "}";
    }
    if (!report.branches.empty()) out += "\n" + inner;
    out += "],\n" + inner + "\"gate_count\": " + std::to_string(report.gate_count);
    out += ",\n" + inner + "\"checks\": {";
    std::size_t i = 0;
    for (const auto& [name, ok] : report.checks) {
        if (i++ > 0) out += ", ";
        append_quoted(out, name);
        out += ok ? ": true" : ": false";
    }
    out += "},\n" + inner + "\"pass\": ";
    out += report.pass ? "true" : "false";
    out += "\n" + pad + "}";
}

}  // namespace

std::string report_to_json(const ScenarioReport& report) {
    std::string out;
    append_report(out, report, "");
    out += '\n';
    return out;
}

std::string reports_to_json(const std::vector<ScenarioReport>& reports) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0) out += ",\n";
        append_report(out, reports[i], "  ");
    }
    out += "\n]\n";
    return out;
}

std::string reports_to_csv(const std::vector<ScenarioReport>& reports) {
    std::string out = "trial,scenario,seed,branch,outcome,probability,fidelity,agreement,gate_count,pass\n";
    for (std::size_t t = 0; t < reports.size(); ++t) {
        const ScenarioReport& r = reports[t];
        for (std::size_t i = 0; i < r.branches.size(); ++i) {
            const BranchReport& b = r.branches[i];
            out += std::to_string(t) + "," + r.scenario + "," + std::to_string(r.seed) + ",";
            out += std::to_string(i) + ",";
            for (std::size_t j = 0; j < b.outcome.size(); ++j) {
                if (j > 0) out += '-';
                out += std::to_string(b.outcome[j]);
            }
            out += "," + fmt(b.probability) + "," + fmt(b.fidelity) + "," + fmt(b.agreement);
            out += "," + std::to_string(r.gate_count) + ",";
            out += r.pass ? "true" : "false";
            out += '\n';
        }
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PureState load_state_file(const std::string& path, const SystemLayout& layout) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("state file " + path + ": " + e.what());
    }
    if (!doc.is_array() || doc.size() != layout.size()) {
        throw ValidationError("state file " + path + ": expected one amplitude list per subsystem (" +
                              std::to_string(layout.size()) + ")");
    }
    std::vector<StateBlock> factors;
    for (std::size_t s = 0; s < layout.size(); ++s) {
        const auto& entry = doc[s];
        if (!entry.is_array() || entry.size() != layout.dim(s)) {
            throw ValidationError("state file " + path + ": subsystem '" + layout.label(s) +
                                  "' needs " + std::to_string(layout.dim(s)) + " amplitudes");
        }
        std::vector<Cx> amps;
        for (const auto& a : entry) {
            if (a.is_number()) {
                amps.emplace_back(a.get<double>(), 0.0);
            } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
                amps.emplace_back(a[0].get<double>(), a[1].get<double>());
            } else {
                throw ValidationError("state file " + path +
                                      ": amplitudes must be numbers or [re, im] pairs");
            }
        }
        factors.push_back({{s}, std::move(amps)});
    }
    return block_product_state(layout, factors);
}

}  // namespace qrl
