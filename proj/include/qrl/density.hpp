#pragma once

#include <span>

#include <Eigen/Dense>

#include "qrl/state.hpp"

namespace qrl {

// Reduced operator on a subset of subsystems.  Construction checks the
// density-operator axioms: Hermitian and unit trace within tol::state,
// eigenvalues >= -tol::psd.
class DensityOperator {
public:
    DensityOperator(Eigen::MatrixXcd matrix);

    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    // Qubit operator [[r00, r01], [conj(r01), 1 - r00]].
    static DensityOperator qubit(double r00, Cx r01);

private:
    Eigen::MatrixXcd mat_;
};

// Trace out everything except `keep`.  Kept indices must be valid and
// distinct; the result is indexed row-major over the kept digits in layout
// order regardless of the order given.
DensityOperator partial_trace(const PureState& state, std::span<const std::size_t> keep);

// Uhlmann fidelity tr sqrt(sqrt(r) s sqrt(r)).  Symmetric, 1 iff equal, and
// equal to |<a|b>| on pure inputs.  Throws NumericError if either operand
// has an eigenvalue below -tol::psd.
double density_fidelity(const DensityOperator& r, const DensityOperator& s);

}  // namespace qrl
