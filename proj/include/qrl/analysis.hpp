#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrl/protocols.hpp"
#include "qrl/runner.hpp"

namespace qrl {

// Uhlmann fidelity between the reduced operators the agent and environment
// subsystem lists carry in `state`.  1 on a branch means the agent ended in
// the environment's state exactly.
double learning_fidelity(const PureState& state, std::span<const std::size_t> agent,
                         std::span<const std::size_t> env);

// Probability that reading out the agent and environment lists would give
// identical digit tuples.
double basis_agreement(const PureState& state, std::span<const std::size_t> agent,
                       std::span<const std::size_t> env);

// Largest amplitude change under exchanging agent and environment pairwise
// (agent[k] with env[k]); zero means the state is symmetric under the swap.
double exchange_invariance_error(const PureState& state, std::span<const std::size_t> agent,
                                 std::span<const std::size_t> env);

// True iff distinct (agent basis, environment basis) input pairs reach
// distinct register outcome tuples through the scenario's gates.  The
// coefficient blocks must be generic: any entry within tol::state of zero is
// rejected (ValidationError).  Defined for the scenarios whose gates permute
// basis states and measure once.
bool check_outcome_injectivity(const Scenario& scenario, std::span<const Cx> agent_coeffs,
                               std::span<const Cx> env_coeffs);

// Applies the gate steps of the first `steps` circuit steps (all of them by
// default), skipping measurements and conditional gates; the pre-measurement
// state of a straight-line protocol.
PureState run_gates(const Circuit& circuit, const PureState& initial,
                    std::size_t steps = static_cast<std::size_t>(-1));

std::size_t expected_gate_count(const Scenario& scenario);

struct RecoveredParams {
    double rho00 = 0.0;
    double rho11 = 0.0;
    double re01 = 0.0;
    double im01 = 0.0;
};

// One measured branch of the mixed-state protocol, reduced to what recovery
// needs: the selector digits (R3, R4, R5), the collapsed agent digit, and
// the branch weight (exact probability or sampled frequency).
struct BranchStat {
    std::array<std::size_t, 3> selector{};
    std::size_t agent_digit = 0;
    double weight = 0.0;
};

// Reads rho back off the branch statistics: the selector blocks carry equal
// weight and within each the agent-0 share is rho00, 1/2 + Re rho01 and
// 1/2 + Im rho01 respectively.  Throws RecoveryError when a selector block
// is missing or an unexpected selector pattern carries weight.
RecoveredParams recover_mixed_params(const std::vector<BranchStat>& stats);
RecoveredParams recover_mixed_params(const Scenario& scenario, const ExecutionTrace& trace);

// Draws `shots` outcomes from the exact branch distribution and recovers
// from the resulting frequencies.
RecoveredParams recover_mixed_params_sampled(const Scenario& scenario, const PureState& input,
                                             std::size_t shots, Rng& rng);

struct BranchReport {
    std::vector<std::size_t> outcome;
    double probability = 0.0;
    double fidelity = 0.0;
    double agreement = 0.0;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<std::pair<std::string, double>> params;
    std::uint64_t seed = 0;
    std::vector<BranchReport> branches;
    std::size_t gate_count = 0;
    double swap_error = 0.0;
    std::map<std::string, bool> checks;
    std::optional<RecoveredParams> recovered;
    bool pass = false;
};

struct ReportOptions {
    enum class Mode { Exhaustive, Sampled };
    Mode mode = Mode::Exhaustive;
    std::size_t shots = 0;
};

// Runs one seeded trial of a scenario and scores it: per-branch fidelity and
// agreement, exchange symmetry, gate count against the closed form,
// injectivity where defined, parameter recovery for the mixed protocol.
// `pass` is the conjunction of the checks map.
ScenarioReport build_report(const Scenario& scenario, std::uint64_t seed,
                            const ReportOptions& options = {});
ScenarioReport build_report(const Scenario& scenario, const PureState& input, std::uint64_t seed,
                            const ReportOptions& options = {});

}  // namespace qrl
