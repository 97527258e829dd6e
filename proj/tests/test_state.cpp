#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qrl/errors.hpp"
#include "qrl/rng.hpp"
#include "qrl/state.hpp"
#include "qrl/tolerances.hpp"

using namespace qrl;

namespace {

SystemLayout two_qubits() {
    return SystemLayout({{"A", 2, Role::Agent}, {"B", 2, Role::Environment}});
}

}  // namespace

TEST_CASE("layout strides follow subsystem order, first subsystem most significant") {
    const SystemLayout layout(
        {{"a", 2, Role::Agent}, {"b", 3, Role::Environment}, {"c", 4, Role::Register}});
    CHECK(layout.size() == 3);
    CHECK(layout.total_dimension() == 24);
    CHECK(layout.stride(0) == 12);
    CHECK(layout.stride(1) == 4);
    CHECK(layout.stride(2) == 1);

    const std::size_t digits[] = {1, 2, 3};
    const std::size_t idx = layout.index_from_digits(digits);
    CHECK(idx == 1 * 12 + 2 * 4 + 3);
    CHECK(layout.digit(idx, 0) == 1);
    CHECK(layout.digit(idx, 1) == 2);
    CHECK(layout.digit(idx, 2) == 3);
}

TEST_CASE("layout lookups by label") {
    const SystemLayout layout = two_qubits();
    CHECK(layout.index_of("B") == 1);
    CHECK(layout.find("missing") == std::nullopt);
    CHECK_THROWS_AS(layout.index_of("missing"), LayoutError);
    CHECK(layout.label(0) == "A");
    CHECK(layout.role(1) == Role::Environment);
}

TEST_CASE("layout rejects bad subsystem lists") {
    CHECK_THROWS_AS(SystemLayout(std::vector<Subsystem>{}), LayoutError);
    CHECK_THROWS_AS(SystemLayout({{"a", 1, Role::Agent}}), LayoutError);
    CHECK_THROWS_AS(SystemLayout({{"a", 2, Role::Agent}, {"a", 2, Role::Register}}), LayoutError);
    CHECK_THROWS_AS(SystemLayout({{"", 2, Role::Agent}}), LayoutError);
}

TEST_CASE("layout enforces the total dimension cap") {
    CHECK_NOTHROW(SystemLayout({{"a", 1024, Role::Agent}, {"b", 1024, Role::Environment}}));
    CHECK_THROWS_AS(SystemLayout({{"a", 1024, Role::Agent},
                                  {"b", 1024, Role::Environment},
                                  {"c", 2, Role::Register}}),
                    LayoutError);
}

TEST_CASE("role letters round trip") {
    CHECK(role_letter(Role::Agent) == 'A');
    CHECK(role_letter(Role::Environment) == 'E');
    CHECK(role_letter(Role::Register) == 'R');
    CHECK(role_letter(Role::Purifier) == 'P');
    CHECK(role_from_letter('E') == Role::Environment);
    CHECK(!role_from_letter('Q').has_value());
}

TEST_CASE("ground and basis states place a single unit amplitude") {
    const SystemLayout layout = two_qubits();
    const PureState g = PureState::ground(layout);
    CHECK(g.amplitude(0) == Cx(1.0, 0.0));
    CHECK(g.squared_norm() == doctest::Approx(1.0));

    const std::size_t digits[] = {1, 0};
    const PureState b = PureState::basis(layout, digits);
    CHECK(b.amplitude(2) == Cx(1.0, 0.0));
    CHECK(b.amplitude(0) == Cx(0.0, 0.0));
}

TEST_CASE("construction normalizes and rejects zero vectors") {
    const SystemLayout layout = two_qubits();
    const PureState st(layout, {Cx(2.0, 0.0), Cx(0.0, 0.0), Cx(0.0, 0.0), Cx(0.0, 0.0)});
    CHECK(st.amplitude(0).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(PureState(layout, {Cx{}, Cx{}, Cx{}, Cx{}}), ValidationError);
    CHECK_THROWS_AS(PureState(layout, {Cx(1.0, 0.0)}), LayoutError);
}

TEST_CASE("product state multiplies local factors") {
    const SystemLayout layout = two_qubits();
    const PureState st = product_state(layout, {{Cx(0.6, 0.0), Cx(0.8, 0.0)},
                                                {Cx(0.8, 0.0), Cx(0.6, 0.0)}});
    CHECK(st.amplitude(0).real() == doctest::Approx(0.48));
    CHECK(st.amplitude(1).real() == doctest::Approx(0.36));
    CHECK(st.amplitude(2).real() == doctest::Approx(0.64));
    CHECK(st.amplitude(3).real() == doctest::Approx(0.48));
}

TEST_CASE("block product covers subsystems exactly once") {
    const SystemLayout layout(
        {{"a", 2, Role::Agent}, {"b", 2, Role::Environment}, {"c", 2, Role::Register}});
    const StateBlock joint{{0, 2}, {Cx(1.0, 0.0), Cx{}, Cx{}, Cx(1.0, 0.0)}};
    const StateBlock mid{{1}, {Cx(1.0, 0.0), Cx{}}};
    const PureState st = block_product_state(layout, {joint, mid});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(st.amplitude(0).real() == doctest::Approx(s));
    CHECK(st.amplitude(5).real() == doctest::Approx(s));

    CHECK_THROWS_AS(block_product_state(layout, {joint}), LayoutError);
    CHECK_THROWS_AS(block_product_state(layout, {joint, mid, mid}), LayoutError);
    const StateBlock dead{{1}, {Cx{}, Cx{}}};
    CHECK_THROWS_AS(block_product_state(layout, {joint, dead}), ValidationError);
}

TEST_CASE("overlap of two real product vectors") {
    const SystemLayout one({{"x", 2, Role::Agent}});
    const PureState a(one, {Cx(0.6, 0.0), Cx(0.8, 0.0)});
    const PureState b(one, {Cx(0.8, 0.0), Cx(0.6, 0.0)});
    CHECK(overlap(a, b).real() == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(overlap(a, a).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("swapping subsystems relabels digits") {
    const SystemLayout layout = two_qubits();
    const std::size_t digits[] = {1, 0};
    const PureState st = PureState::basis(layout, digits);
    const PureState swapped = swap_subsystems(st, 0, 1);
    CHECK(swapped.amplitude(1) == Cx(1.0, 0.0));
    const PureState back = swap_subsystems(swapped, 0, 1);
    CHECK(back.amplitude(2) == Cx(1.0, 0.0));

    const SystemLayout uneven({{"a", 2, Role::Agent}, {"b", 3, Role::Environment}});
    const PureState u = PureState::ground(uneven);
    CHECK_THROWS_AS(swap_subsystems(u, 0, 1), LayoutError);
}

TEST_CASE("random local products are deterministic and leave registers grounded") {
    const SystemLayout layout({{"A", 2, Role::Agent},
                               {"E", 2, Role::Environment},
                               {"R1", 2, Role::Register},
                               {"R2", 2, Role::Register}});
    const PureState a = random_local_product(layout, 99);
    const PureState b = random_local_product(layout, 99);
    const PureState c = random_local_product(layout, 100);
    double diff_ab = 0.0;
    double diff_ac = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        diff_ab = std::max(diff_ab, std::abs(a.amplitude(i) - b.amplitude(i)));
        diff_ac = std::max(diff_ac, std::abs(a.amplitude(i) - c.amplitude(i)));
    }
    CHECK(diff_ab == 0.0);
    CHECK(diff_ac > 1e-3);
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        if (layout.digit(i, 2) != 0 || layout.digit(i, 3) != 0) {
            CHECK(std::abs(a.amplitude(i)) == 0.0);
        }
    }
}

TEST_CASE("random number streams are reproducible") {
    Rng a(7);
    Rng b(7);
    for (int i = 0; i < 32; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng g(11);
    for (int i = 0; i < 8; ++i) CHECK(std::isfinite(g.gaussian()));
    CHECK(Rng::substream(5, 0) != Rng::substream(5, 1));
    CHECK(Rng::substream(5, 0) != Rng::substream(6, 0));
}

TEST_CASE("random blocks are unit vectors") {
    Rng rng(3);
    const std::vector<Cx> block = random_block(5, rng);
    double norm2 = 0.0;
    for (const Cx& c : block) norm2 += std::norm(c);
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
}
