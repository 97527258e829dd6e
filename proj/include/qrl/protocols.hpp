#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrl/circuit.hpp"
#include "qrl/density.hpp"
#include "qrl/rng.hpp"
#include "qrl/state.hpp"

namespace qrl {

enum class ScenarioKind {
    SingleQubit,
    MultiQubit,
    Qudit,
    MultiQudit,
    LargerEnvFeedback,
    LargerEnvRegisterRich,
    MixedState,
};

// A ready-to-run learning protocol: its circuit plus which subsystems play
// agent and environment when fidelity is scored.  For the larger-environment
// variants the score compares the agent against E1 only.
struct Scenario {
    ScenarioKind kind = ScenarioKind::SingleQubit;
    std::string name;
    std::size_t n = 1;    // copies per side (MultiQubit, MultiQudit)
    std::size_t dim = 2;  // qudit dimension
    std::optional<DensityOperator> rho;
    Circuit circuit;
    std::vector<std::size_t> agent_subsystems;
    std::vector<std::size_t> env_subsystems;
};

// Agent, environment and two registers wired by five CNOTs; one measurement
// of both registers.
Scenario build_single_qubit();

// n agent and n environment qubits with 2n registers; 5n CNOTs, pairwise
// wiring, one measurement of all registers.
Scenario build_multiqubit(std::size_t n);

// Qudit pair of dimension D with two D-dimensional registers; nine GXORs
// ending in the five-gate agent update, one measurement of both registers.
Scenario build_qudit(std::size_t dim);

// n qudit pairs with 2n registers; 9n GXORs, the agent-update rounds
// interleaved across pairs, one measurement of all registers.
Scenario build_multiqudit(std::size_t n, std::size_t dim);

// One agent qubit against a two-qubit environment: three CNOTs, a register
// measurement, an unconditional two-gate reward on every branch, and a
// second register measurement.
Scenario build_larger_env_feedback();

// Same environment handled with four registers so a single measurement
// suffices: six CNOTs, one measurement.
Scenario build_larger_env_register_rich();

// Mixed single-qubit environment rho carried as a purification over E plus
// a qubit purifier e.  Three registers select which basis the environment
// is interrogated in (identity, u_y, u_x); the Fig-1 cascade and one
// measurement of all five registers follow.
Scenario build_mixed_state(const DensityOperator& rho);

// Pure state on (E, e) whose reduction to E is rho; amplitudes run
// row-major over (E digit, e digit).  Exact also when rho is singular.
struct Purification {
    std::vector<Cx> amplitudes;
};

Purification purify(const DensityOperator& rho);

// Generic random input for a scenario: joint random block on the agent
// subsystems, joint random block on the environment (the purification and
// register selector are fixed for MixedState), registers in digit 0.
PureState random_input(const Scenario& scenario, Rng& rng);

// Input from explicit agent/environment coefficient blocks, row-major over
// the respective subsystem lists.  MixedState takes the agent block only.
PureState explicit_input(const Scenario& scenario, std::vector<Cx> agent_block,
                         std::vector<Cx> env_block = {});

}  // namespace qrl
