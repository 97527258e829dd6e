#include "qrl/density.hpp"

#include <algorithm>
#include <cmath>

#include "qrl/errors.hpp"
#include "qrl/tolerances.hpp"

namespace qrl {

namespace {

Eigen::MatrixXcd checked_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < -tol::psd) throw NumericError("operator is not positive semidefinite");
        ev[i] = std::sqrt(std::max(ev[i], 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix) : mat_(std::move(matrix)) {
    if (mat_.rows() == 0 || mat_.rows() != mat_.cols())
        throw LayoutError("density operator must be square and non-empty");
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol::state)
        throw ValidationError("density operator is not Hermitian");
    if (std::abs(mat_.trace() - Cx{1.0, 0.0}) > tol::state)
        throw ValidationError("density operator trace differs from one");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    if (es.eigenvalues().minCoeff() < -tol::psd)
        throw NumericError("density operator is not positive semidefinite");
}

DensityOperator DensityOperator::qubit(double r00, Cx r01) {
    Eigen::MatrixXcd m(2, 2);
    m << Cx{r00, 0.0}, r01, std::conj(r01), Cx{1.0 - r00, 0.0};
    return DensityOperator(std::move(m));
}

DensityOperator partial_trace(const PureState& state, std::span<const std::size_t> keep) {
    const auto& layout = state.layout();
    if (keep.empty()) throw LayoutError("partial trace must keep at least one subsystem");

    // Kept subsystems sorted into layout order; result indexing follows it.
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        if (kept[k] >= layout.size()) throw LayoutError("kept subsystem index out of range");
        if (k > 0 && kept[k] == kept[k - 1]) throw LayoutError("kept subsystem listed twice");
    }

    std::vector<bool> is_kept(layout.size(), false);
    for (std::size_t s : kept) is_kept[s] = true;

    std::size_t kept_dim = 1;
    for (std::size_t s : kept) kept_dim *= layout.dim(s);
    const std::size_t traced_dim = state.dimension() / kept_dim;

    // Column t of `slices` is the kept-space vector for traced code t;
    // the reduced operator is then the Gram accumulation slices * slices^+.
    std::vector<Cx> slices(kept_dim * traced_dim, Cx{0.0, 0.0});
    const auto amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        std::size_t kcode = 0;
        std::size_t tcode = 0;
        for (std::size_t s = 0; s < layout.size(); ++s) {
            const std::size_t d = layout.digit(idx, s);
            if (is_kept[s]) kcode = kcode * layout.dim(s) + d;
            else tcode = tcode * layout.dim(s) + d;
        }
        slices[kcode * traced_dim + tcode] = amps[idx];
    }

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);
    for (std::size_t r = 0; r < kept_dim; ++r)
        for (std::size_t c = 0; c <= r; ++c) {
            Cx acc{0.0, 0.0};
            for (std::size_t t = 0; t < traced_dim; ++t)
                acc += slices[r * traced_dim + t] * std::conj(slices[c * traced_dim + t]);
            rho(r, c) = acc;
            if (c != r) rho(c, r) = std::conj(acc);
        }
    return DensityOperator(std::move(rho));
}

double density_fidelity(const DensityOperator& r, const DensityOperator& s) {
    if (r.dim() != s.dim()) throw LayoutError("fidelity needs operators of equal dimension");
    const Eigen::MatrixXcd root = checked_sqrt(r.matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(root * s.matrix() * root,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    double f = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()[i];
        if (ev < -tol::psd) throw NumericError("fidelity operand is not positive semidefinite");
        f += std::sqrt(std::max(ev, 0.0));
    }
    return std::min(f, 1.0);
}

}  // namespace qrl
