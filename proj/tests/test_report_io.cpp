#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "qrl/errors.hpp"
#include "qrl/report_io.hpp"

using namespace qrl;

namespace {

ScenarioReport demo_report() {
    ScenarioReport r;
    r.scenario = "demo";
    r.params = {{"dim", 4.0}};
    r.seed = 9;
    r.branches.push_back({{0, 1}, 0.25, 1.0, 1.0});
    r.branches.push_back({{1, 0}, 0.75, 0.5, 0.0});
    r.gate_count = 5;
    r.checks = {{"fidelity", true}, {"agreement", false}};
    r.pass = false;
    return r;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("single-report serialization is stable byte for byte") {
    const std::string expected =
        "{\n"
        "  \"scenario\": \"demo\",\n"
        "  \"params\": {\"dim\": 4},\n"
        "  \"seed\": 9,\n"
        "  \"branches\": [\n"
        "    {\"outcome\": [0, 1], \"probability\": 0.25, \"fidelity\": 1, \"agreement\": 1},\n"
        "    {\"outcome\": [1, 0], \"probability\": 0.75, \"fidelity\": 0.5, \"agreement\": 0}\n"
        "  ],\n"
        "  \"gate_count\": 5,\n"
        "  \"checks\": {\"agreement\": false, \"fidelity\": true},\n"
        "  \"pass\": false\n"
        "}\n";
    CHECK(report_to_json(demo_report()) == expected);
    CHECK(report_to_json(demo_report()) == report_to_json(demo_report()));
}

TEST_CASE("report arrays nest with consistent indentation") {
    const std::string out = reports_to_json({demo_report(), demo_report()});
    CHECK(out.substr(0, 6) == "[\n  {\n");
    CHECK(out.find("  },\n  {") != std::string::npos);
    CHECK(out.substr(out.size() - 6) == "  }\n]\n");
    CHECK(reports_to_json({}) == "[\n\n]\n");
}

TEST_CASE("csv rows flatten one branch per line") {
    const std::string expected =
        "trial,scenario,seed,branch,outcome,probability,fidelity,agreement,gate_count,pass\n"
        "0,demo,9,0,0-1,0.25,1,1,5,false\n"
        "0,demo,9,1,1-0,0.75,0.5,0,5,false\n";
    CHECK(reports_to_csv({demo_report()}) == expected);
}

TEST_CASE("state files accept real and complex amplitude entries") {
    const SystemLayout layout({{"A", 2, Role::Agent}, {"E", 3, Role::Environment}});
    const TempFile file("qrl_state_ok.json", "[[3, 4], [[0, 1], 0, 0]]");
    const PureState state = load_state_file(file.path, layout);
    const std::span<const Cx> amps = state.amplitudes();
    CHECK(amps[layout.index_from_digits({0, 0})].imag() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(amps[layout.index_from_digits({0, 0})].real() == doctest::Approx(0.0));
    CHECK(amps[layout.index_from_digits({1, 0})].imag() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(amps[layout.index_from_digits({0, 1})]) == doctest::Approx(0.0));
    CHECK(state.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("malformed state files are rejected") {
    const SystemLayout layout({{"A", 2, Role::Agent}, {"E", 2, Role::Environment}});

    const TempFile object("qrl_state_obj.json", "{\"A\": [1, 0]}");
    CHECK_THROWS_AS(load_state_file(object.path, layout), ValidationError);

    const TempFile short_list("qrl_state_short.json", "[[1, 0]]");
    CHECK_THROWS_AS(load_state_file(short_list.path, layout), ValidationError);

    const TempFile wrong_width("qrl_state_width.json", "[[1, 0, 0], [1, 0]]");
    CHECK_THROWS_AS(load_state_file(wrong_width.path, layout), ValidationError);

    const TempFile text_amp("qrl_state_text.json", "[[\"one\", 0], [1, 0]]");
    CHECK_THROWS_AS(load_state_file(text_amp.path, layout), ValidationError);

    const TempFile dead("qrl_state_dead.json", "[[0, 0], [1, 0]]");
    CHECK_THROWS_AS(load_state_file(dead.path, layout), ValidationError);

    const TempFile truncated("qrl_state_trunc.json", "[[1, 0], [1,");
    CHECK_THROWS_AS(load_state_file(truncated.path, layout), ValidationError);

    CHECK_THROWS_AS(load_state_file("qrl_state_missing.json", layout), ValidationError);
}

TEST_CASE("text loading round trips bytes") {
    const std::string content = "line one\nline two\n";
    const TempFile file("qrl_text_ok.txt", content);
    CHECK(read_text_file(file.path) == content);
    CHECK_THROWS_AS(read_text_file("qrl_text_missing.txt"), ValidationError);
}
