#include "convroof/mixed_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "convroof/errors.hpp"

namespace convroof {

namespace {

void require_bipartition(Eigen::Index dim, int dimA, int dimB) {
    if (dimA < 1 || dimB < 1 || static_cast<Eigen::Index>(dimA) * dimB != dim) {
        throw BadBipartition("bipartition " + std::to_string(dimA) + "x" + std::to_string(dimB) +
                             " does not factor dimension " + std::to_string(dim));
    }
}

}  // namespace

MixedState MixedState::from_density(const ComplexMatrix& rho, int dimA, int dimB, double rankTol,
                                    LogBase base) {
    if (rho.rows() != rho.cols()) throw NotDensityMatrix("density matrix must be square");
    require_bipartition(rho.rows(), dimA, dimB);
    if (!all_finite(rho)) throw NotDensityMatrix("density matrix has non-finite entries");
    if (hermiticity_defect(rho) > kHermitianTolerance) throw NotDensityMatrix("density matrix is not Hermitian");
    const double trace = rho.trace().real();
    if (std::abs(trace - 1.0) > 1e-8) {
        throw NotDensityMatrix("density matrix trace is " + std::to_string(trace) + ", expected 1");
    }

    const HermitianEig eig = hermitian_eig(0.5 * (rho + rho.adjoint()));
    const Eigen::Index n = eig.values.size();
    if (eig.values(n - 1) < -1e-10) {
        throw NotDensityMatrix("density matrix has negative eigenvalue " + std::to_string(eig.values(n - 1)));
    }
    const double cutoff = rankTol * eig.values(0);
    Eigen::Index r = 0;
    while (r < n && eig.values(r) > cutoff) ++r;

    RealVector lambda = eig.values.head(r);
    lambda /= lambda.sum();
    ComplexMatrix factors = eig.vectors.leftCols(r) * lambda.cwiseSqrt().asDiagonal();
    return MixedState(dimA, dimB, std::move(factors), std::move(lambda), base);
}

MixedState MixedState::from_spectrum(const RealVector& weights, const ComplexMatrix& vectors, int dimA,
                                     int dimB, LogBase base) {
    require_bipartition(vectors.rows(), dimA, dimB);
    const Eigen::Index r = weights.size();
    if (r < 1 || vectors.cols() != r) throw BadDimensions("from_spectrum: weight count does not match vectors");
    if (weights.minCoeff() <= 0.0) throw NotDensityMatrix("from_spectrum: weights must be positive");
    if (std::abs(weights.sum() - 1.0) > 1e-10) throw NotDensityMatrix("from_spectrum: weights must sum to 1");
    const ComplexMatrix gram = vectors.adjoint() * vectors - ComplexMatrix::Identity(r, r);
    if (gram.cwiseAbs().maxCoeff() > 1e-10) throw NotDensityMatrix("from_spectrum: vectors are not orthonormal");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return weights(i) > weights(j); });

    RealVector lambda(r);
    ComplexMatrix factors(vectors.rows(), r);
    const double total = weights.sum();
    for (Eigen::Index j = 0; j < r; ++j) {
        lambda(j) = weights(order[j]) / total;
        factors.col(j) = vectors.col(order[j]) * std::sqrt(lambda(j));
    }
    return MixedState(dimA, dimB, std::move(factors), std::move(lambda), base);
}

MixedState MixedState::with_log_base(LogBase base) const {
    return MixedState(dimA_, dimB_, factors_, lambda_, base);
}

PureStateDecomposition hjw_decompose(const MixedState& state, const SemiUnitary& u) {
    if (u.r() != state.rank()) {
        throw RankMismatch("semi-unitary has " + std::to_string(u.r()) + " columns, state rank is " +
                           std::to_string(state.rank()));
    }
    PureStateDecomposition psd;
    psd.states = state.factors() * u.matrix().transpose();
    psd.probs = psd.states.colwise().squaredNorm().transpose();
    for (Eigen::Index i = 0; i < psd.size(); ++i) {
        if (psd.active(i)) {
            psd.states.col(i) /= std::sqrt(psd.probs(i));
        } else {
            psd.states.col(i).setZero();
        }
    }
    return psd;
}

double objective_j(const MixedState& state, const SemiUnitary& u) {
    if (u.r() != state.rank()) {
        throw RankMismatch("semi-unitary has " + std::to_string(u.r()) + " columns, state rank is " +
                           std::to_string(state.rank()));
    }
    const ComplexMatrix phi = state.factors() * u.matrix().transpose();
    double j = 0.0;
    for (Eigen::Index i = 0; i < phi.cols(); ++i) {
        const double p = phi.col(i).squaredNorm();
        if (p <= kZeroWeight) continue;
        j += p * scaled_pure_entanglement(phi.col(i), p, state.dim_a(), state.dim_b(), state.log_base());
    }
    return j;
}

double objective_j(const MixedState& state, const SemiUnitary& u, const PureMeasure& measure) {
    const PureStateDecomposition psd = hjw_decompose(state, u);
    double j = 0.0;
    for (Eigen::Index i = 0; i < psd.size(); ++i) {
        if (!psd.active(i)) continue;
        j += psd.probs(i) * measure(psd.states.col(i), state.dim_a(), state.dim_b());
    }
    return j;
}

double eigenbasis_average(const MixedState& state) {
    double j = 0.0;
    for (int i = 0; i < state.rank(); ++i) {
        j += state.eigenvalues()(i) *
             pure_entanglement(state.eigenvector(i), state.dim_a(), state.dim_b(), state.log_base());
    }
    return j;
}

ComplexMatrix reconstruct(const PureStateDecomposition& psd) {
    const Eigen::Index d = psd.states.rows();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < psd.size(); ++i) {
        if (!psd.active(i)) continue;
        rho.noalias() += psd.probs(i) * psd.states.col(i) * psd.states.col(i).adjoint();
    }
    return rho;
}

}  // namespace convroof
