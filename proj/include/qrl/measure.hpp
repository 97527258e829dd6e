#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "qrl/rng.hpp"
#include "qrl/state.hpp"

namespace qrl {

// One projective outcome on a set of subsystems: the digits read out, the
// probability of reading them, and the renormalized state afterwards.  The
// post state keeps the full layout; measured subsystems are simply collapsed
// to their outcome digit.
struct OutcomeBranch {
    std::vector<std::pair<std::size_t, std::size_t>> outcomes;  // (subsystem, digit)
    double probability = 0.0;
    PureState post_state;
};

// Every outcome with probability above tol::prune, ordered by outcome code
// ascending (digits in the order the subsystems were given).  Probabilities
// of the returned branches sum to one within tol::state.
std::vector<OutcomeBranch> enumerate_branches(const PureState& state,
                                              std::span<const std::size_t> subsystems);

// One outcome drawn from the exact distribution.
OutcomeBranch sample_branch(const PureState& state, std::span<const std::size_t> subsystems,
                            Rng& rng);

// Outcome digit tuples and their counts over `shots` independent draws.
std::map<std::vector<std::size_t>, std::size_t> sample_histogram(
    const PureState& state, std::span<const std::size_t> subsystems, std::size_t shots, Rng& rng);

}  // namespace qrl
