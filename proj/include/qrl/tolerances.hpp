#pragma once

#include <cstddef>

namespace qrl {

// Dense amplitude vectors only; largest layout we accept.
inline constexpr std::size_t kMaxTotalDimension = std::size_t{1} << 20;

namespace tol {

// Amplitude-level equality and norm preservation.
inline constexpr double state = 1e-12;

// Unitarity check for user-supplied local matrices.
inline constexpr double unitary = 1e-10;

// Learning-fidelity claims are asserted as >= 1 - fidelity.
inline constexpr double fidelity = 1e-9;

// Branches below this probability are dropped.
inline constexpr double prune = 1e-14;

// Eigenvalues of a density operator may undershoot zero by this much.
inline constexpr double psd = 1e-10;

// Branch-probability bookkeeping across a measurement.
inline constexpr double measure = 1e-10;

// Parameter recovery from a sampled histogram at 1e5 shots.
inline constexpr double sampled_recovery = 1.5e-2;

}  // namespace tol
}  // namespace qrl
