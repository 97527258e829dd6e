#include "qrl/runner.hpp"

#include "qrl/errors.hpp"
#include "qrl/gates.hpp"

namespace qrl {

namespace {

const MeasurementRecord* find_record(const TraceLeaf& leaf, const std::string& tag) {
    for (const auto& r : leaf.records)
        if (r.tag == tag) return &r;
    return nullptr;
}

void append_branch(TraceLeaf leaf, const MeasureStep& step, OutcomeBranch&& branch,
                   std::vector<TraceLeaf>& out) {
    MeasurementRecord record{step.tag, step.subsystems, {}};
    record.digits.reserve(branch.outcomes.size());
    for (const auto& [sub, digit] : branch.outcomes) {
        (void)sub;
        record.digits.push_back(digit);
    }
    leaf.state = std::move(branch.post_state);
    leaf.probability *= branch.probability;
    leaf.records.push_back(std::move(record));
    out.push_back(std::move(leaf));
}

}  // namespace

std::vector<std::size_t> ExecutionTrace::outcome_digits(const TraceLeaf& leaf) {
    std::vector<std::size_t> digits;
    for (const auto& r : leaf.records) digits.insert(digits.end(), r.digits.begin(), r.digits.end());
    return digits;
}

ExecutionTrace run(const Circuit& circuit, const PureState& initial,
                   std::optional<std::uint64_t> sample_seed) {
    if (sample_seed) {
        Rng rng(*sample_seed);
        ExecutionTrace trace;
        trace.sampled = true;
        trace.leaves.push_back(run_sampled(circuit, initial, rng));
        return trace;
    }

    circuit.validate();
    if (!(circuit.layout == initial.layout()))
        throw LayoutError("initial state layout does not match the circuit");

    ExecutionTrace trace;
    trace.leaves.push_back(TraceLeaf{initial, 1.0, {}});
    for (const auto& step : circuit.steps) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            for (auto& leaf : trace.leaves) apply_inplace(leaf.state, g->op);
        } else if (const auto* m = std::get_if<MeasureStep>(&step)) {
            std::vector<TraceLeaf> next;
            for (auto& leaf : trace.leaves)
                for (auto& branch : enumerate_branches(leaf.state, m->subsystems))
                    append_branch(leaf, *m, std::move(branch), next);
            trace.leaves = std::move(next);
        } else {
            const auto& c = std::get<CondGateStep>(step);
            for (auto& leaf : trace.leaves) {
                const auto* record = find_record(leaf, c.tag);
                if (record && record->digits == c.digits) apply_inplace(leaf.state, c.op);
            }
        }
    }
    return trace;
}

TraceLeaf run_sampled(const Circuit& circuit, const PureState& initial, Rng& rng) {
    circuit.validate();
    if (!(circuit.layout == initial.layout()))
        throw LayoutError("initial state layout does not match the circuit");

    TraceLeaf leaf{initial, 1.0, {}};
    for (const auto& step : circuit.steps) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            apply_inplace(leaf.state, g->op);
        } else if (const auto* m = std::get_if<MeasureStep>(&step)) {
            auto branch = sample_branch(leaf.state, m->subsystems, rng);
            std::vector<TraceLeaf> out;
            append_branch(std::move(leaf), *m, std::move(branch), out);
            leaf = std::move(out.front());
        } else {
            const auto& c = std::get<CondGateStep>(step);
            const auto* record = find_record(leaf, c.tag);
            if (record && record->digits == c.digits) apply_inplace(leaf.state, c.op);
        }
    }
    return leaf;
}

}  // namespace qrl
