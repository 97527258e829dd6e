#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrl/state.hpp"

namespace qrl {

inline constexpr std::size_t kNoSubsystem = static_cast<std::size_t>(-1);

// One primitive operation on a state.  Gxor sends |i>|j> to |i>|(i-j) mod D>
// and is its own inverse for every D; Xor sends |i>|j> to |i>|(i+j) mod D>;
// Cnot is Gxor restricted to a pair of qubits.  Local applies a unitary to
// one subsystem, ControlledLocal does so only where every listed condition
// subsystem holds its required digit.
struct GateOp {
    enum class Kind { Gxor, Xor, Cnot, Local, ControlledLocal };

    Kind kind = Kind::Gxor;
    std::size_t control = kNoSubsystem;
    std::size_t target = kNoSubsystem;
    std::vector<Cx> matrix;                                      // row-major, dim x dim
    std::string matrix_name;                                     // "ux", "uy", "x", "id" or empty
    std::vector<std::pair<std::size_t, std::size_t>> condition;  // (subsystem, digit)

    bool operator==(const GateOp&) const = default;
};

GateOp make_gxor(std::size_t control, std::size_t target);
GateOp make_xor(std::size_t control, std::size_t target);
GateOp make_cnot(std::size_t control, std::size_t target);
GateOp make_local(std::size_t target, std::vector<Cx> matrix, std::string name = "");
GateOp make_controlled_local(std::vector<std::pair<std::size_t, std::size_t>> condition,
                             std::size_t target, std::vector<Cx> matrix, std::string name = "");

// Wiring and matrix checks against a layout: indices in range, control and
// target distinct, matching control/target dimensions for Gxor and Xor, both
// dimensions 2 for Cnot, matrix square of the target dimension and unitary
// within tol::unitary, condition subsystems distinct and excluding the
// target with digits in range.
void validate_gate(const SystemLayout& layout, const GateOp& op);

// Permutation and strided-multiply kernels; never materializes a matrix over
// the full space.
void apply_inplace(PureState& state, const GateOp& op);
PureState apply(const PureState& state, const GateOp& op);

PureState apply_gxor(const PureState& state, std::size_t control, std::size_t target);
PureState apply_xor(const PureState& state, std::size_t control, std::size_t target);
PureState apply_cnot(const PureState& state, std::size_t control, std::size_t target);
PureState apply_local(const PureState& state, std::size_t target, std::span<const Cx> matrix);
PureState apply_controlled_local(const PureState& state,
                                 std::span<const std::pair<std::size_t, std::size_t>> condition,
                                 std::size_t target, std::span<const Cx> matrix);

// pi/4 single-qubit rotations used when a mixed environment is interrogated:
// conjugating a qubit operator rho by u_y (u_x) moves Re rho01 (Im rho01)
// onto the population difference, (u rho u^+)_00 = 1/2 + Re rho01 for u_y
// and 1/2 + Im rho01 for u_x.
std::vector<Cx> u_y();
std::vector<Cx> u_x();

std::vector<Cx> pauli_x();
std::vector<Cx> identity_matrix(std::size_t dim);

// Named 2x2 lookup for circuit text; id scales to any dimension.
std::vector<Cx> named_matrix(const std::string& name, std::size_t dim);

}  // namespace qrl
