#include "qrl/protocols.hpp"

#include <cmath>

#include "qrl/errors.hpp"
#include "qrl/tolerances.hpp"

namespace qrl {

namespace {

std::string num(std::size_t k) {
    return std::to_string(k);
}

Subsystem agent(const std::string& label, std::size_t dim) {
    return {label, dim, Role::Agent};
}
Subsystem env(const std::string& label, std::size_t dim) {
    return {label, dim, Role::Environment};
}
Subsystem reg(const std::string& label, std::size_t dim) {
    return {label, dim, Role::Register};
}

void push(Circuit& c, GateOp op) {
    c.steps.push_back(GateStep{std::move(op)});
}

void measure_all_registers(Scenario& s, const std::string& tag) {
    MeasureStep m;
    for (std::size_t i = 0; i < s.circuit.layout.size(); ++i)
        if (s.circuit.layout.role(i) == Role::Register) m.subsystems.push_back(i);
    m.tag = tag;
    s.circuit.steps.push_back(std::move(m));
}

void require_copies(std::size_t n) {
    if (n < 1) throw ValidationError("need at least one agent-environment pair");
}

void require_dim(std::size_t dim) {
    if (dim < 2) throw ValidationError("qudit dimension must be at least 2");
}

}  // namespace

Scenario build_single_qubit() {
    Scenario s;
    s.kind = ScenarioKind::SingleQubit;
    s.name = "single";
    s.circuit.layout = SystemLayout({agent("A", 2), env("E", 2), reg("R1", 2), reg("R2", 2)});
    s.agent_subsystems = {0};
    s.env_subsystems = {1};
    push(s.circuit, make_cnot(1, 2));  // E R1
    push(s.circuit, make_cnot(1, 3));  // E R2
    push(s.circuit, make_cnot(0, 2));  // A R1
    push(s.circuit, make_cnot(2, 3));  // R1 R2
    push(s.circuit, make_cnot(2, 0));  // R1 A
    measure_all_registers(s, "m");
    s.circuit.validate();
    return s;
}

Scenario build_multiqubit(std::size_t n) {
    require_copies(n);
    Scenario s;
    s.kind = ScenarioKind::MultiQubit;
    s.name = "multiqubit";
    s.n = n;

    std::vector<Subsystem> subs;
    for (std::size_t k = 0; k < n; ++k) subs.push_back(agent("A" + num(k + 1), 2));
    for (std::size_t k = 0; k < n; ++k) subs.push_back(env("E" + num(k + 1), 2));
    for (std::size_t k = 0; k < 2 * n; ++k) subs.push_back(reg("R" + num(k + 1), 2));
    s.circuit.layout = SystemLayout(std::move(subs));

    const auto A = [&](std::size_t k) { return k; };
    const auto E = [&](std::size_t k) { return n + k; };
    const auto R = [&](std::size_t k) { return 2 * n + k; };  // k in [0, 2n)
    for (std::size_t k = 0; k < n; ++k) s.agent_subsystems.push_back(A(k));
    for (std::size_t k = 0; k < n; ++k) s.env_subsystems.push_back(E(k));

    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_cnot(E(k), R(k)));
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_cnot(E(k), R(n + k)));
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_cnot(A(k), R(k)));
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_cnot(R(k), R(n + k)));
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_cnot(R(k), A(k)));
    measure_all_registers(s, "m");
    s.circuit.validate();
    return s;
}

Scenario build_qudit(std::size_t dim) {
    require_dim(dim);
    Scenario s = build_multiqudit(1, dim);
    s.kind = ScenarioKind::Qudit;
    s.name = "qudit";
    s.n = 1;

    // Systematic labels come out as A1/E1; the lone pair reads better bare.
    auto subs = s.circuit.layout.subsystems();
    subs[0].label = "A";
    subs[1].label = "E";
    SystemLayout relabeled(subs);
    s.circuit.layout = relabeled;
    s.circuit.validate();
    return s;
}

Scenario build_multiqudit(std::size_t n, std::size_t dim) {
    require_copies(n);
    require_dim(dim);
    Scenario s;
    s.kind = ScenarioKind::MultiQudit;
    s.name = "multiqudit";
    s.n = n;
    s.dim = dim;

    std::vector<Subsystem> subs;
    for (std::size_t k = 0; k < n; ++k) subs.push_back(agent("A" + num(k + 1), dim));
    for (std::size_t k = 0; k < n; ++k) subs.push_back(env("E" + num(k + 1), dim));
    for (std::size_t k = 0; k < 2 * n; ++k) subs.push_back(reg("R" + num(k + 1), dim));
    s.circuit.layout = SystemLayout(std::move(subs));

    const auto A = [&](std::size_t k) { return k; };
    const auto E = [&](std::size_t k) { return n + k; };
    const auto R = [&](std::size_t k) { return 2 * n + k; };
    for (std::size_t k = 0; k < n; ++k) s.agent_subsystems.push_back(A(k));
    for (std::size_t k = 0; k < n; ++k) s.env_subsystems.push_back(E(k));

    // Register banks first, then the five agent-update rounds alternating
    // between the banks.
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_gxor(E(k), R(k)));
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_gxor(E(k), R(n + k)));
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_gxor(A(k), R(k)));
    for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_gxor(R(k), R(n + k)));
    for (const std::size_t bank : {0, 1, 0, 1, 0})
        for (std::size_t k = 0; k < n; ++k) push(s.circuit, make_gxor(R(bank * n + k), A(k)));
    measure_all_registers(s, "m");
    s.circuit.validate();
    return s;
}

Scenario build_larger_env_feedback() {
    Scenario s;
    s.kind = ScenarioKind::LargerEnvFeedback;
    s.name = "largerenv-feedback";
    s.circuit.layout = SystemLayout(
        {agent("A", 2), env("E1", 2), env("E2", 2), reg("R1", 2), reg("R2", 2)});
    s.agent_subsystems = {0};
    s.env_subsystems = {1};

    push(s.circuit, make_cnot(1, 3));  // E1 R1
    push(s.circuit, make_cnot(2, 4));  // E2 R2
    push(s.circuit, make_cnot(0, 3));  // A R1
    s.circuit.steps.push_back(MeasureStep{{3, 4}, "m1"});
    // Reward acts on every branch; it rewires the agent from the register
    // and then clears the register from the agent.
    push(s.circuit, make_cnot(3, 0));  // R1 A
    push(s.circuit, make_cnot(0, 3));  // A R1
    s.circuit.steps.push_back(MeasureStep{{3, 4}, "m2"});
    s.circuit.validate();
    return s;
}

Scenario build_larger_env_register_rich() {
    Scenario s;
    s.kind = ScenarioKind::LargerEnvRegisterRich;
    s.name = "largerenv-registers";
    s.circuit.layout =
        SystemLayout({agent("A", 2), env("E1", 2), env("E2", 2), reg("R1", 2), reg("R2", 2),
                      reg("R3", 2), reg("R4", 2)});
    s.agent_subsystems = {0};
    s.env_subsystems = {1};

    push(s.circuit, make_cnot(1, 3));  // E1 R1
    push(s.circuit, make_cnot(2, 4));  // E2 R2
    push(s.circuit, make_cnot(1, 5));  // E1 R3
    push(s.circuit, make_cnot(2, 6));  // E2 R4
    push(s.circuit, make_cnot(0, 3));  // A R1
    push(s.circuit, make_cnot(3, 0));  // R1 A
    measure_all_registers(s, "m");
    s.circuit.validate();
    return s;
}

Scenario build_mixed_state(const DensityOperator& rho) {
    if (rho.dim() != 2) throw LayoutError("mixed-state protocol takes a qubit operator");
    Scenario s;
    s.kind = ScenarioKind::MixedState;
    s.name = "mixed";
    s.rho = rho;
    s.circuit.layout = SystemLayout({agent("A", 2), env("E", 2), Subsystem{"e", 2, Role::Purifier},
                                     reg("R1", 2), reg("R2", 2), reg("R3", 2), reg("R4", 2),
                                     reg("R5", 2)});
    s.agent_subsystems = {0};
    s.env_subsystems = {1};

    // The selector registers selectively rotate the environment before the
    // cascade: R3 high reads it in the computational basis, R4 high through
    // u_y, R5 high through u_x.
    push(s.circuit, make_controlled_local({{5, 1}}, 1, identity_matrix(2), "id"));
    push(s.circuit, make_controlled_local({{6, 1}}, 1, u_y(), "uy"));
    push(s.circuit, make_controlled_local({{7, 1}}, 1, u_x(), "ux"));
    push(s.circuit, make_cnot(1, 3));  // E R1
    push(s.circuit, make_cnot(1, 4));  // E R2
    push(s.circuit, make_cnot(0, 3));  // A R1
    push(s.circuit, make_cnot(3, 4));  // R1 R2
    push(s.circuit, make_cnot(3, 0));  // R1 A
    measure_all_registers(s, "m");
    s.circuit.validate();
    return s;
}

Purification purify(const DensityOperator& rho) {
    if (rho.dim() != 2) throw LayoutError("purification is defined for qubit operators");
    const auto& m = rho.matrix();
    const double r00 = m(0, 0).real();
    const double r11 = m(1, 1).real();
    const Cx r10 = m(1, 0);

    Purification p;
    p.amplitudes.assign(4, Cx{0.0, 0.0});
    if (r00 > tol::state) {
        // |Psi> = sqrt(r00)|0>|e1> + |1>(r10/sqrt(r00)|e1> + w|e2>)
        const double w2 = std::max(0.0, r11 - std::norm(r10) / r00);
        p.amplitudes[0] = std::sqrt(r00);
        p.amplitudes[2] = r10 / std::sqrt(r00);
        p.amplitudes[3] = std::sqrt(w2);
    } else {
        // Singular at r00 = 0: anchor on the |1> population instead.
        const double w2 = std::max(0.0, r00 - std::norm(r10) / r11);
        p.amplitudes[0] = std::conj(r10) / std::sqrt(r11);
        p.amplitudes[1] = std::sqrt(w2);
        p.amplitudes[2] = std::sqrt(r11);
    }
    return p;
}

namespace {

std::vector<Cx> selector_block() {
    // (|100> + |010> + |001>)/sqrt(3) over (R3, R4, R5).
    std::vector<Cx> v(8, Cx{0.0, 0.0});
    const double a = 1.0 / std::sqrt(3.0);
    v[4] = v[2] = v[1] = a;
    return v;
}

PureState assemble_input(const Scenario& scenario, std::vector<Cx> agent_block,
                         std::vector<Cx> env_block) {
    const auto& layout = scenario.circuit.layout;
    std::vector<StateBlock> blocks;
    blocks.push_back({scenario.agent_subsystems, std::move(agent_block)});

    if (scenario.kind == ScenarioKind::MixedState) {
        blocks.push_back({{layout.index_of("E"), layout.index_of("e")},
                          purify(*scenario.rho).amplitudes});
        blocks.push_back({{layout.index_of("R1")}, {Cx{1.0, 0.0}, Cx{0.0, 0.0}}});
        blocks.push_back({{layout.index_of("R2")}, {Cx{1.0, 0.0}, Cx{0.0, 0.0}}});
        blocks.push_back({{layout.index_of("R3"), layout.index_of("R4"), layout.index_of("R5")},
                          selector_block()});
        return block_product_state(layout, blocks);
    }

    // The environment block spans every Environment subsystem, entangled
    // inputs included; registers start in digit 0.
    std::vector<std::size_t> env_subs;
    for (std::size_t i = 0; i < layout.size(); ++i)
        if (layout.role(i) == Role::Environment) env_subs.push_back(i);
    blocks.push_back({std::move(env_subs), std::move(env_block)});
    for (std::size_t i = 0; i < layout.size(); ++i)
        if (layout.role(i) == Role::Register || layout.role(i) == Role::Purifier) {
            std::vector<Cx> ground(layout.dim(i), Cx{0.0, 0.0});
            ground[0] = Cx{1.0, 0.0};
            blocks.push_back({{i}, std::move(ground)});
        }
    return block_product_state(layout, blocks);
}

}  // namespace

PureState random_input(const Scenario& scenario, Rng& rng) {
    const auto& layout = scenario.circuit.layout;
    std::size_t agent_dim = 1;
    for (std::size_t i : scenario.agent_subsystems) agent_dim *= layout.dim(i);
    auto agent_block = random_block(agent_dim, rng);

    if (scenario.kind == ScenarioKind::MixedState)
        return assemble_input(scenario, std::move(agent_block), {});

    std::size_t env_dim = 1;
    for (std::size_t i = 0; i < layout.size(); ++i)
        if (layout.role(i) == Role::Environment) env_dim *= layout.dim(i);
    return assemble_input(scenario, std::move(agent_block), random_block(env_dim, rng));
}

PureState explicit_input(const Scenario& scenario, std::vector<Cx> agent_block,
                         std::vector<Cx> env_block) {
    if (scenario.kind == ScenarioKind::MixedState && !env_block.empty())
        throw ValidationError("the mixed-state environment is fixed by rho");
    return assemble_input(scenario, std::move(agent_block), std::move(env_block));
}

}  // namespace qrl
