#include "qrl/measure.hpp"

#include <cmath>

#include "qrl/errors.hpp"
#include "qrl/tolerances.hpp"

namespace qrl {

namespace {

struct OutcomeSpace {
    std::vector<std::size_t> subsystems;
    std::size_t count = 1;  // product of measured dimensions

    OutcomeSpace(const SystemLayout& layout, std::span<const std::size_t> subs)
        : subsystems(subs.begin(), subs.end()) {
        if (subsystems.empty()) throw LayoutError("measurement needs at least one subsystem");
        std::vector<bool> seen(layout.size(), false);
        for (std::size_t s : subsystems) {
            layout.at(s);
            if (seen[s]) throw LayoutError("measured subsystem listed twice");
            seen[s] = true;
            count *= layout.dim(s);
        }
    }

    std::size_t code_of(const SystemLayout& layout, std::size_t amp_index) const {
        std::size_t code = 0;
        for (std::size_t s : subsystems) code = code * layout.dim(s) + layout.digit(amp_index, s);
        return code;
    }

    std::vector<std::pair<std::size_t, std::size_t>> digits_of(const SystemLayout& layout,
                                                               std::size_t code) const {
        std::vector<std::pair<std::size_t, std::size_t>> out(subsystems.size());
        for (std::size_t k = subsystems.size(); k-- > 0;) {
            const std::size_t s = subsystems[k];
            out[k] = {s, code % layout.dim(s)};
            code /= layout.dim(s);
        }
        return out;
    }
};

std::vector<double> outcome_probabilities(const PureState& state, const OutcomeSpace& space) {
    std::vector<double> prob(space.count, 0.0);
    const auto& layout = state.layout();
    const auto amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const double w = std::norm(amps[idx]);
        if (w != 0.0) prob[space.code_of(layout, idx)] += w;
    }
    return prob;
}

OutcomeBranch build_branch(const PureState& state, const OutcomeSpace& space, std::size_t code,
                           double probability) {
    const auto& layout = state.layout();
    const auto amps = state.amplitudes();
    std::vector<Cx> post(amps.size(), Cx{0.0, 0.0});
    const double inv = 1.0 / std::sqrt(probability);
    for (std::size_t idx = 0; idx < amps.size(); ++idx)
        if (space.code_of(layout, idx) == code) post[idx] = amps[idx] * inv;
    return OutcomeBranch{space.digits_of(layout, code), probability,
                         PureState(layout, std::move(post))};
}

}  // namespace

std::vector<OutcomeBranch> enumerate_branches(const PureState& state,
                                              std::span<const std::size_t> subsystems) {
    const OutcomeSpace space(state.layout(), subsystems);
    const auto prob = outcome_probabilities(state, space);

    double total = 0.0;
    std::vector<OutcomeBranch> branches;
    for (std::size_t code = 0; code < space.count; ++code) {
        total += prob[code];
        if (prob[code] > tol::prune)
            branches.push_back(build_branch(state, space, code, prob[code]));
    }
    if (std::abs(total - 1.0) > tol::measure)
        throw NumericError("outcome probabilities do not sum to one");
    return branches;
}

OutcomeBranch sample_branch(const PureState& state, std::span<const std::size_t> subsystems,
                            Rng& rng) {
    const OutcomeSpace space(state.layout(), subsystems);
    const auto prob = outcome_probabilities(state, space);

    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t chosen = space.count;
    for (std::size_t code = 0; code < space.count; ++code) {
        if (prob[code] <= tol::prune) continue;
        acc += prob[code];
        chosen = code;
        if (u < acc) break;
    }
    if (chosen == space.count) throw NumericError("no outcome has positive probability");
    return build_branch(state, space, chosen, prob[chosen]);
}

std::map<std::vector<std::size_t>, std::size_t> sample_histogram(
    const PureState& state, std::span<const std::size_t> subsystems, std::size_t shots, Rng& rng) {
    const OutcomeSpace space(state.layout(), subsystems);
    const auto prob = outcome_probabilities(state, space);
    const auto& layout = state.layout();

    std::vector<double> cumulative;
    std::vector<std::size_t> codes;
    double acc = 0.0;
    for (std::size_t code = 0; code < space.count; ++code) {
        if (prob[code] <= tol::prune) continue;
        acc += prob[code];
        cumulative.push_back(acc);
        codes.push_back(code);
    }
    if (codes.empty()) throw NumericError("no outcome has positive probability");

    std::map<std::vector<std::size_t>, std::size_t> hist;
    for (std::size_t shot = 0; shot < shots; ++shot) {
        const double u = rng.uniform();
        std::size_t lo = 0;
        while (lo + 1 < cumulative.size() && u >= cumulative[lo]) ++lo;
        std::vector<std::size_t> key;
        for (const auto& [sub, digit] : space.digits_of(layout, codes[lo])) {
            (void)sub;
            key.push_back(digit);
        }
        ++hist[key];
    }
    return hist;
}

}  // namespace qrl
