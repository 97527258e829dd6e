#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrl/layout.hpp"
#include "qrl/rng.hpp"

namespace qrl {

// Dense state vector over a SystemLayout.  Construction normalizes, so a
// held PureState always has unit norm up to tol::state; operations hand back
// fresh values instead of mutating their inputs.
class PureState {
public:
    // Throws LayoutError on length mismatch, ValidationError on zero norm.
    PureState(SystemLayout layout, std::vector<Cx> amplitudes);

    // |00...0>
    static PureState ground(SystemLayout layout);

    // Basis state from one digit per subsystem.
    static PureState basis(SystemLayout layout, std::span<const std::size_t> digits);

    const SystemLayout& layout() const { return layout_; }
    std::span<const Cx> amplitudes() const { return amps_; }
    Cx amplitude(std::size_t index) const { return amps_.at(index); }
    std::size_t dimension() const { return amps_.size(); }

    double squared_norm() const;

    // In-place access for gate kernels; callers own the resulting norm.
    std::vector<Cx>& data() { return amps_; }
    void renormalize();

private:
    SystemLayout layout_;
    std::vector<Cx> amps_;
};

// One factor spanning one or more subsystems of a product construction.
struct StateBlock {
    std::vector<std::size_t> subsystems;
    std::vector<Cx> amplitudes;
};

// Tensor product of one local factor per subsystem, normalized.  Throws on
// factor-count or factor-length mismatch (LayoutError) and on a zero-norm
// factor (ValidationError).
PureState product_state(const SystemLayout& layout, const std::vector<std::vector<Cx>>& factors);

// Tensor product of multi-subsystem blocks.  Blocks must cover every
// subsystem exactly once; a block's amplitudes run row-major over its own
// subsystem list.
PureState block_product_state(const SystemLayout& layout, const std::vector<StateBlock>& blocks);

// Independent random unit vector on every Agent/Environment subsystem
// (complex Gaussian components, normalized); Register and Purifier
// subsystems start in digit 0.  Deterministic per seed.
PureState random_local_product(const SystemLayout& layout, std::uint64_t seed);

// Random unit vector of the given dimension; the generic joint state used
// when agents or environments span several subsystems.
std::vector<Cx> random_block(std::size_t dim, Rng& rng);

// <a|b>; layouts must match.
Cx overlap(const PureState& a, const PureState& b);

// Relabeling permutation exchanging two same-dimension subsystems.
PureState swap_subsystems(const PureState& state, std::size_t i, std::size_t j);

}  // namespace qrl
