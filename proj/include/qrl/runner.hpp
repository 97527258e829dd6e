#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrl/circuit.hpp"
#include "qrl/measure.hpp"
#include "qrl/state.hpp"

namespace qrl {

// Digits one measurement produced on one branch, in the order the
// subsystems were measured.
struct MeasurementRecord {
    std::string tag;
    std::vector<std::size_t> subsystems;
    std::vector<std::size_t> digits;
};

// One root-to-leaf path through the branching execution: the records of
// every measurement crossed, the path probability (product of branch
// probabilities), and the state at the end.
struct TraceLeaf {
    PureState state;
    double probability = 1.0;
    std::vector<MeasurementRecord> records;
};

struct ExecutionTrace {
    std::vector<TraceLeaf> leaves;
    bool sampled = false;

    // Concatenated outcome digits of every measurement on a leaf.
    static std::vector<std::size_t> outcome_digits(const TraceLeaf& leaf);
};

// Executes the circuit on `initial`.  Without a seed every measurement
// expands all branches above tol::prune (leaf order: depth-first, outcomes
// ascending); with a seed each measurement draws one outcome and the trace
// holds a single leaf.  Conditional gates act on the leaves whose recorded
// outcome matches.
ExecutionTrace run(const Circuit& circuit, const PureState& initial,
                   std::optional<std::uint64_t> sample_seed = std::nullopt);

// Sampling run reusing a caller-owned stream (one leaf per call).
TraceLeaf run_sampled(const Circuit& circuit, const PureState& initial, Rng& rng);

}  // namespace qrl
