#include "qrl/gates.hpp"

#include <cmath>

#include "qrl/errors.hpp"
#include "qrl/tolerances.hpp"

namespace qrl {

namespace {

// Walks every fiber along `target`: the D amplitudes that differ only in the
// target digit.  `fn(base)` receives the flat index with target digit zero
// and may read other digits from it.
template <typename Fn>
void for_each_fiber(const SystemLayout& layout, std::size_t target, Fn&& fn) {
    const std::size_t stride = layout.stride(target);
    const std::size_t block = stride * layout.dim(target);
    const std::size_t total = layout.total_dimension();
    for (std::size_t outer = 0; outer < total; outer += block)
        for (std::size_t inner = 0; inner < stride; ++inner) fn(outer + inner);
}

void check_unitary(const std::vector<Cx>& m, std::size_t dim) {
    if (m.size() != dim * dim)
        throw ValidationError("matrix size does not match subsystem dimension " +
                              std::to_string(dim));
    // max |(U^+ U - I)_{rc}|
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            Cx acc{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k)
                acc += std::conj(m[k * dim + r]) * m[k * dim + c];
            if (r == c) acc -= Cx{1.0, 0.0};
            if (std::abs(acc) > tol::unitary)
                throw ValidationError("matrix is not unitary");
        }
}

}  // namespace

GateOp make_gxor(std::size_t control, std::size_t target) {
    GateOp op;
    op.kind = GateOp::Kind::Gxor;
    op.control = control;
    op.target = target;
    return op;
}

GateOp make_xor(std::size_t control, std::size_t target) {
    GateOp op = make_gxor(control, target);
    op.kind = GateOp::Kind::Xor;
    return op;
}

GateOp make_cnot(std::size_t control, std::size_t target) {
    GateOp op = make_gxor(control, target);
    op.kind = GateOp::Kind::Cnot;
    return op;
}

GateOp make_local(std::size_t target, std::vector<Cx> matrix, std::string name) {
    GateOp op;
    op.kind = GateOp::Kind::Local;
    op.target = target;
    op.matrix = std::move(matrix);
    op.matrix_name = std::move(name);
    return op;
}

GateOp make_controlled_local(std::vector<std::pair<std::size_t, std::size_t>> condition,
                             std::size_t target, std::vector<Cx> matrix, std::string name) {
    GateOp op = make_local(target, std::move(matrix), std::move(name));
    op.kind = GateOp::Kind::ControlledLocal;
    op.condition = std::move(condition);
    return op;
}

void validate_gate(const SystemLayout& layout, const GateOp& op) {
    switch (op.kind) {
        case GateOp::Kind::Gxor:
        case GateOp::Kind::Xor:
        case GateOp::Kind::Cnot: {
            layout.at(op.control);
            layout.at(op.target);
            if (op.control == op.target)
                throw LayoutError("control and target must differ (both '" +
                                  layout.label(op.target) + "')");
            if (layout.dim(op.control) != layout.dim(op.target))
                throw LayoutError("control and target must share a dimension");
            if (op.kind == GateOp::Kind::Cnot && layout.dim(op.control) != 2)
                throw LayoutError("cnot is defined on qubits; use gxor for higher dimensions");
            return;
        }
        case GateOp::Kind::Local:
        case GateOp::Kind::ControlledLocal: {
            layout.at(op.target);
            check_unitary(op.matrix, layout.dim(op.target));
            if (op.kind == GateOp::Kind::Local) return;
            std::vector<bool> seen(layout.size(), false);
            for (const auto& [sub, digit] : op.condition) {
                layout.at(sub);
                if (sub == op.target)
                    throw LayoutError("condition may not include the target subsystem");
                if (seen[sub]) throw LayoutError("condition subsystem listed twice");
                seen[sub] = true;
                if (digit >= layout.dim(sub))
                    throw LayoutError("condition digit out of range for '" + layout.label(sub) +
                                      "'");
            }
            return;
        }
    }
}

void apply_inplace(PureState& state, const GateOp& op) {
    const auto& layout = state.layout();
    validate_gate(layout, op);
    auto& amps = state.data();
    const std::size_t dim = layout.dim(op.target);
    const std::size_t stride = layout.stride(op.target);

    switch (op.kind) {
        case GateOp::Kind::Gxor:
        case GateOp::Kind::Cnot: {
            // Target digit j -> (i - j) mod D; an involution, so swap pairs.
            const std::size_t cstride = layout.stride(op.control);
            const std::size_t cdim = layout.dim(op.control);
            for_each_fiber(layout, op.target, [&](std::size_t base) {
                const std::size_t i = (base / cstride) % cdim;
                for (std::size_t j = 0; j < dim; ++j) {
                    const std::size_t jp = (i + dim - j) % dim;
                    if (j < jp) std::swap(amps[base + j * stride], amps[base + jp * stride]);
                }
            });
            return;
        }
        case GateOp::Kind::Xor: {
            // Target digit j -> (i + j) mod D; rotate each fiber by i.
            const std::size_t cstride = layout.stride(op.control);
            const std::size_t cdim = layout.dim(op.control);
            std::vector<Cx> scratch(dim);
            for_each_fiber(layout, op.target, [&](std::size_t base) {
                const std::size_t i = (base / cstride) % cdim;
                if (i == 0) return;
                for (std::size_t j = 0; j < dim; ++j) scratch[(i + j) % dim] = amps[base + j * stride];
                for (std::size_t j = 0; j < dim; ++j) amps[base + j * stride] = scratch[j];
            });
            return;
        }
        case GateOp::Kind::Local:
        case GateOp::Kind::ControlledLocal: {
            std::vector<Cx> scratch(dim);
            for_each_fiber(layout, op.target, [&](std::size_t base) {
                for (const auto& [sub, digit] : op.condition)
                    if (layout.digit(base, sub) != digit) return;
                for (std::size_t r = 0; r < dim; ++r) {
                    Cx acc{0.0, 0.0};
                    for (std::size_t c = 0; c < dim; ++c)
                        acc += op.matrix[r * dim + c] * amps[base + c * stride];
                    scratch[r] = acc;
                }
                for (std::size_t r = 0; r < dim; ++r) amps[base + r * stride] = scratch[r];
            });
            return;
        }
    }
}

PureState apply(const PureState& state, const GateOp& op) {
    PureState out = state;
    apply_inplace(out, op);
    return out;
}

PureState apply_gxor(const PureState& state, std::size_t control, std::size_t target) {
    return apply(state, make_gxor(control, target));
}

PureState apply_xor(const PureState& state, std::size_t control, std::size_t target) {
    return apply(state, make_xor(control, target));
}

PureState apply_cnot(const PureState& state, std::size_t control, std::size_t target) {
    return apply(state, make_cnot(control, target));
}

PureState apply_local(const PureState& state, std::size_t target, std::span<const Cx> matrix) {
    return apply(state, make_local(target, {matrix.begin(), matrix.end()}));
}

PureState apply_controlled_local(const PureState& state,
                                 std::span<const std::pair<std::size_t, std::size_t>> condition,
                                 std::size_t target, std::span<const Cx> matrix) {
    return apply(state, make_controlled_local({condition.begin(), condition.end()}, target,
                                              {matrix.begin(), matrix.end()}));
}

std::vector<Cx> u_y() {
    const double s = 1.0 / std::sqrt(2.0);
    return {Cx{s, 0.0}, Cx{s, 0.0}, Cx{-s, 0.0}, Cx{s, 0.0}};
}

std::vector<Cx> u_x() {
    const double s = 1.0 / std::sqrt(2.0);
    return {Cx{s, 0.0}, Cx{0.0, s}, Cx{0.0, s}, Cx{s, 0.0}};
}

std::vector<Cx> pauli_x() {
    return {Cx{0.0, 0.0}, Cx{1.0, 0.0}, Cx{1.0, 0.0}, Cx{0.0, 0.0}};
}

std::vector<Cx> identity_matrix(std::size_t dim) {
    std::vector<Cx> m(dim * dim, Cx{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = Cx{1.0, 0.0};
    return m;
}

std::vector<Cx> named_matrix(const std::string& name, std::size_t dim) {
    if (name == "id") return identity_matrix(dim);
    if (dim != 2) throw ValidationError("matrix '" + name + "' is defined on qubits only");
    if (name == "ux") return u_x();
    if (name == "uy") return u_y();
    if (name == "x") return pauli_x();
    throw ValidationError("unknown matrix name '" + name + "'");
}

}  // namespace qrl
