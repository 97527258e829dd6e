#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qrl/circuit.hpp"
#include "qrl/errors.hpp"
#include "qrl/gates.hpp"
#include "qrl/measure.hpp"
#include "qrl/rng.hpp"
#include "qrl/runner.hpp"
#include "qrl/state.hpp"

using namespace qrl;

namespace {

SystemLayout two_qubits() {
    return SystemLayout({{"A", 2, Role::Agent}, {"B", 2, Role::Environment}});
}

PureState bell(const SystemLayout& layout) {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState(layout, {Cx(s, 0.0), Cx{}, Cx{}, Cx(s, 0.0)});
}

}  // namespace

TEST_CASE("measuring a basis state yields one branch") {
    const SystemLayout layout = two_qubits();
    const std::size_t digits[] = {1, 0};
    const std::size_t subs[] = {0, 1};
    const auto branches = enumerate_branches(PureState::basis(layout, digits), subs);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].probability == doctest::Approx(1.0));
    CHECK(branches[0].outcomes[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(branches[0].outcomes[1] == std::pair<std::size_t, std::size_t>{1, 0});
}

TEST_CASE("measuring an entangled pair splits into correlated halves") {
    const SystemLayout layout = two_qubits();
    const std::size_t subs[] = {0, 1};
    const auto branches = enumerate_branches(bell(layout), subs);
    REQUIRE(branches.size() == 2);
    CHECK(branches[0].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(branches[1].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(branches[0].outcomes[0].second == 0);
    CHECK(branches[0].outcomes[1].second == 0);
    CHECK(branches[1].outcomes[0].second == 1);
    CHECK(branches[1].outcomes[1].second == 1);
    CHECK(std::abs(branches[0].post_state.amplitude(0)) == doctest::Approx(1.0));
    CHECK(std::abs(branches[1].post_state.amplitude(3)) == doctest::Approx(1.0));
}

TEST_CASE("branches arrive ordered by outcome digits") {
    const SystemLayout layout = two_qubits();
    Rng rng(5);
    const PureState st(layout, random_block(4, rng));
    const std::size_t subs[] = {0, 1};
    const auto branches = enumerate_branches(st, subs);
    REQUIRE(branches.size() == 4);
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        total += branches[i].probability;
        CHECK(branches[i].outcomes[0].second == i / 2);
        CHECK(branches[i].outcomes[1].second == i % 2);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measuring part of a register keeps the rest coherent") {
    const SystemLayout layout = two_qubits();
    const double s = 1.0 / std::sqrt(2.0);
    const PureState st(layout, {Cx(s, 0.0), Cx(s, 0.0), Cx{}, Cx{}});
    const std::size_t subs[] = {0};
    const auto branches = enumerate_branches(st, subs);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].post_state.amplitude(0).real() == doctest::Approx(s));
    CHECK(branches[0].post_state.amplitude(1).real() == doctest::Approx(s));
}

TEST_CASE("measurement validates its subsystem list") {
    const SystemLayout layout = two_qubits();
    const PureState st = PureState::ground(layout);
    const std::size_t dupes[] = {0, 0};
    CHECK_THROWS_AS(enumerate_branches(st, dupes), LayoutError);
    const std::size_t range[] = {5};
    CHECK_THROWS_AS(enumerate_branches(st, range), LayoutError);
    CHECK_THROWS_AS(enumerate_branches(st, {}), LayoutError);
}

TEST_CASE("sampling follows the exact distribution") {
    const SystemLayout layout = two_qubits();
    const std::size_t subs[] = {0, 1};
    Rng rng(123);
    const auto hist = sample_histogram(bell(layout), subs, 10000, rng);
    std::size_t total = 0;
    for (const auto& [outcome, count] : hist) {
        total += count;
        const bool valid = outcome == std::vector<std::size_t>{0, 0} ||
                           outcome == std::vector<std::size_t>{1, 1};
        CHECK(valid);
        CHECK(std::abs(static_cast<double>(count) / 10000.0 - 0.5) < 5e-2);
    }
    CHECK(total == 10000);
}

TEST_CASE("sampled branches are reproducible per seed") {
    const SystemLayout layout = two_qubits();
    const std::size_t subs[] = {0, 1};
    Rng a(77);
    Rng b(77);
    for (int i = 0; i < 16; ++i) {
        const auto x = sample_branch(bell(layout), subs, a);
        const auto y = sample_branch(bell(layout), subs, b);
        CHECK(x.outcomes == y.outcomes);
    }
}

TEST_CASE("running a circuit applies gates and expands measurements") {
    Circuit circuit;
    circuit.layout = two_qubits();
    circuit.steps.push_back(GateStep{make_cnot(0, 1)});
    circuit.steps.push_back(MeasureStep{{0, 1}, "m"});

    const double s = 1.0 / std::sqrt(2.0);
    const PureState plus(circuit.layout, {Cx(s, 0.0), Cx{}, Cx(s, 0.0), Cx{}});
    const ExecutionTrace trace = run(circuit, plus);
    REQUIRE(trace.leaves.size() == 2);
    CHECK(trace.leaves[0].probability == doctest::Approx(0.5));
    CHECK(trace.leaves[1].probability == doctest::Approx(0.5));
    CHECK(trace.leaves[0].records.size() == 1);
    CHECK(trace.leaves[0].records[0].tag == "m");
    CHECK(ExecutionTrace::outcome_digits(trace.leaves[0]) == std::vector<std::size_t>{0, 0});
    CHECK(ExecutionTrace::outcome_digits(trace.leaves[1]) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("conditional gates fire on their recorded outcome") {
    Circuit circuit;
    circuit.layout = two_qubits();
    circuit.steps.push_back(MeasureStep{{0}, "first"});
    circuit.steps.push_back(CondGateStep{"first", {1}, make_local(1, pauli_x(), "x")});
    circuit.steps.push_back(MeasureStep{{1}, "second"});

    const double s = 1.0 / std::sqrt(2.0);
    const PureState input(circuit.layout, {Cx(s, 0.0), Cx{}, Cx(s, 0.0), Cx{}});
    const ExecutionTrace trace = run(circuit, input);
    REQUIRE(trace.leaves.size() == 2);
    // The branch that saw digit one had its partner flipped as well.
    CHECK(ExecutionTrace::outcome_digits(trace.leaves[0]) == std::vector<std::size_t>{0, 0});
    CHECK(ExecutionTrace::outcome_digits(trace.leaves[1]) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("runs reject a state on the wrong layout") {
    Circuit circuit;
    circuit.layout = two_qubits();
    circuit.steps.push_back(MeasureStep{{0}, "m"});
    const SystemLayout other({{"X", 2, Role::Agent}, {"Y", 2, Role::Environment}});
    CHECK_THROWS_AS(run(circuit, PureState::ground(other)), LayoutError);
}

TEST_CASE("sampled runs walk a single branch") {
    Circuit circuit;
    circuit.layout = two_qubits();
    circuit.steps.push_back(GateStep{make_cnot(0, 1)});
    circuit.steps.push_back(MeasureStep{{0, 1}, "m"});

    const double s = 1.0 / std::sqrt(2.0);
    const PureState plus(circuit.layout, {Cx(s, 0.0), Cx{}, Cx(s, 0.0), Cx{}});
    Rng rng(31);
    std::size_t ones = 0;
    for (int i = 0; i < 400; ++i) {
        const TraceLeaf leaf = run_sampled(circuit, plus, rng);
        CHECK(leaf.probability == doctest::Approx(0.5).epsilon(1e-12));
        const auto digits = ExecutionTrace::outcome_digits(leaf);
        CHECK(digits[0] == digits[1]);
        ones += digits[0];
    }
    CHECK(ones > 100);
    CHECK(ones < 300);
}
