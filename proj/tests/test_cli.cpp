#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct ToolResult {
    int status = -1;
    std::string out;
    std::string err;
};

// Runs the installed tool through the shell, capturing stdout, stderr, and
// the exit status.  `env` is a prefix like "QRL_LOG=debug ".
ToolResult run_tool(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string err_path = "qrl_cli_stderr_" + std::to_string(counter++) + ".txt";
    const std::string cmd =
        env + "\"" + std::string(QRL_TOOL_PATH) + "\" " + args + " 2>" + err_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    ToolResult result;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream err_in(err_path, std::ios::binary);
    std::ostringstream err_buf;
    err_buf << err_in.rdbuf();
    result.err = err_buf.str();
    std::remove(err_path.c_str());
    return result;
}

std::string circuit_path(const std::string& name) {
    return std::string(QRL_CIRCUITS_DIR) + "/" + name;
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

TEST_CASE("list names every scenario") {
    const ToolResult r = run_tool("list");
    CHECK(r.status == 0);
    for (const char* name : {"single", "multiqubit", "qudit", "multiqudit",
                             "largerenv-feedback", "largerenv-registers", "mixed"}) {
        CHECK(r.out.find(name) != std::string::npos);
    }
}

TEST_CASE("run reports a passing single-qubit trial deterministically") {
    const ToolResult first = run_tool("run --scenario single --seed 7");
    CHECK(first.status == 0);
    const json doc = json::parse(first.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["scenario"] == "single");
    CHECK(doc[0]["pass"] == true);
    CHECK(doc[0]["gate_count"] == 5);
    CHECK(doc[0]["branches"].size() == 4);
    CHECK(doc[0]["checks"]["fidelity"] == true);

    const ToolResult second = run_tool("run --scenario single --seed 7");
    CHECK(second.out == first.out);
}

TEST_CASE("run emits csv on request") {
    const ToolResult r = run_tool("run --scenario single --seed 7 --format csv");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("trial,scenario,seed,branch,outcome,probability,fidelity,"
                      "agreement,gate_count,pass\n", 0) == 0);
    CHECK(r.out.find("0,single,") != std::string::npos);
}

TEST_CASE("run recovers mixed-state parameters") {
    const ToolResult r = run_tool("run --scenario mixed --rho 0.7,0.2,0.1 --seed 4");
    CHECK(r.status == 0);
    const json doc = json::parse(r.out);
    CHECK(doc[0]["checks"]["recovery"] == true);
    CHECK(doc[0]["params"]["rho00"].get<double>() == doctest::Approx(0.7));
}

TEST_CASE("run honours trial counts and dimensions") {
    const ToolResult r = run_tool("run --scenario qudit --dim 4 --trials 3 --seed 2");
    CHECK(r.status == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.size() == 3);
    for (const auto& report : doc) {
        CHECK(report["scenario"] == "qudit");
        CHECK(report["gate_count"] == 9);
        CHECK(report["pass"] == true);
    }
    CHECK(doc[0]["seed"] != doc[1]["seed"]);
}

TEST_CASE("sampling flags are validated") {
    CHECK(run_tool("run --scenario single --mode sample").status == 2);
    CHECK(run_tool("run --scenario single --shots 50").status == 2);
    CHECK(run_tool("run --scenario single --mode sample --shots 2000").status == 0);
    CHECK(run_tool("run --scenario single --mode census").status == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_tool("run --scenario banana").status == 2);
    CHECK(run_tool("run").status == 2);
    CHECK(run_tool("frobnicate").status == 2);
    CHECK(run_tool("run --scenario mixed --rho 0.1,abc,0").status == 2);
    CHECK(run_tool("run --scenario mixed --rho 0.1,0.5").status == 2);
}

TEST_CASE("an unphysical rho is a runtime failure, not a usage error") {
    const ToolResult r = run_tool("run --scenario mixed --rho 0.1,0.5,0");
    CHECK(r.status == 1);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("verify runs a filtered claim group") {
    const ToolResult r = run_tool("verify --only gate-counts");
    CHECK(r.status == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("gate-counts") != std::string::npos);
    CHECK(run_tool("verify --only no-such-group").status == 2);
}

TEST_CASE("exec runs a stored circuit from the ground state") {
    const ToolResult r = run_tool("exec \"" + circuit_path("single_qubit.qrl") + "\"");
    CHECK(r.status == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["gate_count"] == 5);
    CHECK(doc["measurements"] == 1);
    REQUIRE(doc["branches"].size() == 1);
    CHECK(doc["branches"][0]["probability"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["branches"][0]["fidelity"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exec scores a supplied input state") {
    const TempFile state("qrl_cli_state.json",
                         "[[0.6, 0.8], [0.8, 0.6], [1, 0], [1, 0]]");
    const ToolResult r =
        run_tool("exec \"" + circuit_path("single_qubit.qrl") + "\" --state " + state.path);
    CHECK(r.status == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["branches"].size() == 4);
    const double expected[4] = {0.2304, 0.2304, 0.1296, 0.4096};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(doc["branches"][i]["probability"].get<double>() ==
              doctest::Approx(expected[i]).epsilon(1e-12));
        CHECK(doc["branches"][i]["fidelity"].get<double>() ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("exec samples outcomes near the exact distribution") {
    const TempFile state("qrl_cli_state2.json",
                         "[[0.6, 0.8], [0.8, 0.6], [1, 0], [1, 0]]");
    const ToolResult r = run_tool("exec \"" + circuit_path("single_qubit.qrl") +
                                  "\" --state " + state.path +
                                  " --mode sample --shots 5000 --seed 12");
    CHECK(r.status == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["branches"].size() == 4);
    const double expected[4] = {0.2304, 0.2304, 0.1296, 0.4096};
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double p = doc["branches"][i]["probability"].get<double>();
        total += p;
        CHECK(std::abs(p - expected[i]) < 5e-2);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exec failures map to the usage exit code") {
    CHECK(run_tool("exec no_such_file.qrl").status == 2);

    const TempFile bad("qrl_cli_bad.qrl", "layout A:2\ncnot A B\n");
    const ToolResult r = run_tool("exec " + bad.path);
    CHECK(r.status == 2);
    CHECK(r.err.find(bad.path) != std::string::npos);
}

TEST_CASE("logging is quiet by default and verbose on request") {
    const ToolResult quiet = run_tool("run --scenario single --seed 3");
    CHECK(quiet.err.empty());
    const ToolResult loud = run_tool("run --scenario single --seed 3", "QRL_LOG=debug ");
    CHECK(loud.err.find("[info] trial 0") != std::string::npos);
    CHECK(loud.out == quiet.out);
}
