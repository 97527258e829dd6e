#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "qrl/circuit.hpp"
#include "qrl/errors.hpp"
#include "qrl/gates.hpp"

using namespace qrl;

namespace {

const char* kBellText = R"(# make a pair and read it out
layout A:2:A B:2
local A 0.70710678118654752,0.70710678118654752,0.70710678118654752,-0.70710678118654752
cnot A B
measure A B as m
)";

Circuit sample_circuit() {
    Circuit c;
    c.layout = SystemLayout({{"A", 2, Role::Agent},
                             {"E", 2, Role::Environment},
                             {"R", 2, Role::Register},
                             {"P", 2, Role::Purifier}});
    c.steps.push_back(GateStep{make_cnot(1, 2)});
    c.steps.push_back(GateStep{make_gxor(0, 2)});
    c.steps.push_back(GateStep{make_xor(0, 1)});
    c.steps.push_back(GateStep{make_local(0, u_y(), "uy")});
    c.steps.push_back(GateStep{make_local(1, {Cx(0.0, 1.0), Cx{}, Cx{}, Cx(0.0, -1.0)})});
    c.steps.push_back(
        GateStep{make_controlled_local({{0, 1}, {3, 0}}, 1, pauli_x(), "x")});
    c.steps.push_back(MeasureStep{{2, 0}, "first"});
    c.steps.push_back(CondGateStep{"first", {1, 0}, make_local(1, pauli_x(), "x")});
    c.steps.push_back(MeasureStep{{1}, "second"});
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("gate tallies split by kind and leave measurements aside") {
    const Circuit c = sample_circuit();
    const GateCount counts = gate_count(c);
    CHECK(counts.total == 7);
    CHECK(counts.measurements == 2);
    CHECK(counts.by_kind.at("cnot") == 1);
    CHECK(counts.by_kind.at("gxor") == 1);
    CHECK(counts.by_kind.at("xor") == 1);
    CHECK(counts.by_kind.at("local") == 3);
    CHECK(counts.by_kind.at("clocal") == 1);
}

TEST_CASE("validation catches tag and measurement mistakes") {
    Circuit c;
    c.layout = SystemLayout({{"A", 2, Role::Agent}, {"B", 2, Role::Environment}});

    SUBCASE("duplicate tags") {
        c.steps.push_back(MeasureStep{{0}, "m"});
        c.steps.push_back(MeasureStep{{1}, "m"});
        CHECK_THROWS_AS(c.validate(), ValidationError);
    }
    SUBCASE("empty tag") {
        c.steps.push_back(MeasureStep{{0}, ""});
        CHECK_THROWS_AS(c.validate(), ValidationError);
    }
    SUBCASE("duplicate measured subsystem") {
        c.steps.push_back(MeasureStep{{0, 0}, "m"});
        CHECK_THROWS_AS(c.validate(), LayoutError);
    }
    SUBCASE("conditional gate without its measurement") {
        c.steps.push_back(CondGateStep{"ghost", {1}, make_local(1, pauli_x(), "x")});
        CHECK_THROWS_AS(c.validate(), ValidationError);
    }
    SUBCASE("conditional gate with the wrong digit count") {
        c.steps.push_back(MeasureStep{{0}, "m"});
        c.steps.push_back(CondGateStep{"m", {1, 0}, make_local(1, pauli_x(), "x")});
        CHECK_THROWS_AS(c.validate(), ValidationError);
    }
}

TEST_CASE("printing and parsing are inverse on a circuit with every feature") {
    const Circuit c = sample_circuit();
    const std::string text = print_circuit(c);
    const Circuit back = parse_circuit(text);
    CHECK(back == c);
    CHECK(print_circuit(back) == text);
}

TEST_CASE("parsing a hand-written file") {
    const Circuit c = parse_circuit(kBellText);
    CHECK(c.layout.size() == 2);
    CHECK(c.layout.role(0) == Role::Agent);
    CHECK(c.layout.role(1) == Role::Register);
    REQUIRE(c.steps.size() == 3);
    const GateStep& flip = std::get<GateStep>(c.steps[1]);
    CHECK(flip.op.kind == GateOp::Kind::Cnot);
    const MeasureStep& m = std::get<MeasureStep>(c.steps[2]);
    CHECK(m.subsystems == std::vector<std::size_t>{0, 1});
    CHECK(m.tag == "m");

    const Circuit again = parse_circuit(print_circuit(c));
    CHECK(again == c);
}

TEST_CASE("parse errors carry line positions") {
    const auto line_of = [](const std::string& text) {
        try {
            parse_circuit(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };

    CHECK(line_of("gxor A B\n") == 1);                        // gate before layout
    CHECK(line_of("layout A:2 A:2\n") == 1);                  // duplicate label
    CHECK(line_of("layout A:2 B:2\nwiggle A B\n") == 2);      // unknown directive
    CHECK(line_of("layout A:2 B:2\ngxor A C\n") == 2);        // unknown label
    CHECK(line_of("layout A:2 B:2\nmeasure A\n") == 2);       // missing tag
    CHECK(line_of("layout A:2 B:2\nlocal A 1,0,0\n") == 2);   // short matrix
    CHECK(line_of("layout A:2 B:2\nlocal A 1,0,0,oops\n") == 2);
    CHECK(line_of("layout A:2 B:2\nlayout A:2 B:2\n") == 2);  // second layout
    CHECK(line_of("layout A:0 B:2\n") == 1);                  // bad dimension
    CHECK(line_of("layout A:2:Q B:2\n") == 1);                // bad role
    CHECK(line_of("layout A:2 B:2\nmeasure A as t\nmeasure B as t\n") == 3);
    CHECK(line_of("layout A:2 B:2\ncgate t=1 local A x\n") == 2);
    CHECK(line_of("layout A:2 B:2\nclocal (A=3) B x\n") == 2);
}

TEST_CASE("the control and target of a copy gate must differ") {
    try {
        parse_circuit("layout A:2 B:2\ngxor A A\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("both 'A'") != std::string::npos);
    }
}

TEST_CASE("conditioned gates parse conditions and tags") {
    const char* text =
        "layout A:2 B:2 C:2\n"
        "clocal (A=1,B=0) C uy\n"
        "measure A B as pick\n"
        "cgate pick=10 local C x\n";
    const Circuit c = parse_circuit(text);
    REQUIRE(c.steps.size() == 3);
    const GateStep& gs = std::get<GateStep>(c.steps[0]);
    CHECK(gs.op.kind == GateOp::Kind::ControlledLocal);
    CHECK(gs.op.condition ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
    CHECK(gs.op.matrix_name == "uy");
    const CondGateStep& cg = std::get<CondGateStep>(c.steps[2]);
    CHECK(cg.tag == "pick");
    CHECK(cg.digits == std::vector<std::size_t>{1, 0});
    CHECK(cg.op.kind == GateOp::Kind::Local);

    CHECK(parse_circuit(print_circuit(c)) == c);
}

TEST_CASE("complex literals cover all written forms") {
    const char* text =
        "layout A:2\n"
        "local A 0.6+0.8i,0,0,0.6-0.8i\n"
        "local A i,0,0,-i\n"
        "local A 1,0,0,-1\n"
        "local A 0.5e0+8660.254037844386e-4i,0,0,0.5-0.8660254037844386i\n";
    const Circuit c = parse_circuit(text);
    const GateStep& g0 = std::get<GateStep>(c.steps[0]);
    CHECK(g0.op.matrix[0] == Cx(0.6, 0.8));
    CHECK(g0.op.matrix[3] == Cx(0.6, -0.8));
    const GateStep& g1 = std::get<GateStep>(c.steps[1]);
    CHECK(g1.op.matrix[0] == Cx(0.0, 1.0));
    CHECK(g1.op.matrix[3] == Cx(0.0, -1.0));
    const GateStep& g3 = std::get<GateStep>(c.steps[3]);
    CHECK(g3.op.matrix[0].imag() == doctest::Approx(0.8660254037844386));
}

TEST_CASE("layout roles default to register and print only when set") {
    const Circuit c = parse_circuit("layout A:3:A E:3:E R:3\nmeasure R as m\n");
    const std::string text = print_circuit(c);
    CHECK(text.find("A:3:A") != std::string::npos);
    CHECK(text.find("R:3 ") == std::string::npos);
    CHECK(text.find("R:3\n") != std::string::npos);
    CHECK(parse_circuit(text) == c);
}
