#include "qrl/state.hpp"

#include <cmath>
#include <cstdlib>

#include "qrl/errors.hpp"
#include "qrl/tolerances.hpp"

namespace qrl {

PureState::PureState(SystemLayout layout, std::vector<Cx> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.total_dimension())
        throw LayoutError("amplitude count " + std::to_string(amps_.size()) +
                          " does not match layout dimension " +
                          std::to_string(layout_.total_dimension()));
    renormalize();
}

PureState PureState::ground(SystemLayout layout) {
    std::vector<Cx> amps(layout.total_dimension(), Cx{0.0, 0.0});
    amps[0] = Cx{1.0, 0.0};
    return PureState(std::move(layout), std::move(amps));
}

PureState PureState::basis(SystemLayout layout, std::span<const std::size_t> digits) {
    std::vector<Cx> amps(layout.total_dimension(), Cx{0.0, 0.0});
    amps[layout.index_from_digits(digits)] = Cx{1.0, 0.0};
    return PureState(std::move(layout), std::move(amps));
}

double PureState::squared_norm() const {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    return n;
}

void PureState::renormalize() {
    const double n = squared_norm();
    if (n < tol::state) throw ValidationError("state has zero norm");
    const double inv = 1.0 / std::sqrt(n);
    if (std::abs(inv - 1.0) < 1e-15) return;
    for (auto& a : amps_) a *= inv;
}

PureState product_state(const SystemLayout& layout, const std::vector<std::vector<Cx>>& factors) {
    if (factors.size() != layout.size())
        throw LayoutError("expected one factor per subsystem, got " +
                          std::to_string(factors.size()));
    std::vector<StateBlock> blocks;
    blocks.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
        blocks.push_back({{i}, factors[i]});
    return block_product_state(layout, blocks);
}

PureState block_product_state(const SystemLayout& layout, const std::vector<StateBlock>& blocks) {
    std::vector<int> owner(layout.size(), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::size_t block_dim = 1;
        if (blocks[b].subsystems.empty()) throw LayoutError("empty block");
        for (std::size_t s : blocks[b].subsystems) {
            if (s >= layout.size())
                throw LayoutError("block subsystem index " + std::to_string(s) + " out of range");
            if (owner[s] != -1)
                throw LayoutError("subsystem '" + layout.label(s) + "' covered twice");
            owner[s] = static_cast<int>(b);
            block_dim *= layout.dim(s);
        }
        if (blocks[b].amplitudes.size() != block_dim)
            throw LayoutError("block over " + std::to_string(blocks[b].subsystems.size()) +
                              " subsystems needs " + std::to_string(block_dim) + " amplitudes");
        double n = 0.0;
        for (const auto& a : blocks[b].amplitudes) n += std::norm(a);
        if (n < tol::state) throw ValidationError("zero-norm factor");
    }
    for (std::size_t s = 0; s < layout.size(); ++s)
        if (owner[s] == -1)
            throw LayoutError("subsystem '" + layout.label(s) + "' not covered by any block");

    std::vector<Cx> amps(layout.total_dimension());
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        Cx v{1.0, 0.0};
        for (const auto& block : blocks) {
            std::size_t code = 0;
            for (std::size_t s : block.subsystems) code = code * layout.dim(s) + layout.digit(idx, s);
            v *= block.amplitudes[code];
        }
        amps[idx] = v;
    }
    return PureState(layout, std::move(amps));
}

PureState random_local_product(const SystemLayout& layout, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<Cx>> factors(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const auto role = layout.role(i);
        if (role == Role::Register || role == Role::Purifier) {
            factors[i].assign(layout.dim(i), Cx{0.0, 0.0});
            factors[i][0] = Cx{1.0, 0.0};
        } else {
            factors[i] = random_block(layout.dim(i), rng);
        }
    }
    return product_state(layout, factors);
}

std::vector<Cx> random_block(std::size_t dim, Rng& rng) {
    std::vector<Cx> v(dim);
    double n = 0.0;
    do {
        n = 0.0;
        for (auto& a : v) {
            a = rng.complex_gaussian();
            n += std::norm(a);
        }
    } while (n < tol::state);
    const double inv = 1.0 / std::sqrt(n);
    for (auto& a : v) a *= inv;
    return v;
}

Cx overlap(const PureState& a, const PureState& b) {
    if (!(a.layout() == b.layout())) throw LayoutError("overlap needs matching layouts");
    Cx acc{0.0, 0.0};
    const auto va = a.amplitudes();
    const auto vb = b.amplitudes();
    for (std::size_t k = 0; k < va.size(); ++k) acc += std::conj(va[k]) * vb[k];
    return acc;
}

PureState swap_subsystems(const PureState& state, std::size_t i, std::size_t j) {
    const auto& layout = state.layout();
    if (layout.dim(i) != layout.dim(j))
        throw LayoutError("cannot swap subsystems of different dimension");
    if (i == j) return state;

    const std::size_t si = layout.stride(i);
    const std::size_t sj = layout.stride(j);
    std::vector<Cx> out(state.dimension());
    const auto in = state.amplitudes();
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        const std::size_t di = layout.digit(idx, i);
        const std::size_t dj = layout.digit(idx, j);
        const std::size_t base = idx - di * si - dj * sj;
        out[base + dj * si + di * sj] = in[idx];
    }
    return PureState(layout, std::move(out));
}

}  // namespace qrl
