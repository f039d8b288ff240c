#pragma once

#include <functional>

#include "convroof/linalg.hpp"
#include "convroof/monotones.hpp"

namespace convroof {

// Decomposition members with p_i at or below this weight are dropped from J.
inline constexpr double kZeroWeight = 1e-14;
inline constexpr double kDefaultRankTolerance = 1e-12;

/// A bipartite density matrix held as its low-rank spectral factorization.
///
/// Column j of factors() is sqrt(lambda_j) |v_j>. Basis index convention is
/// i = a * dimB + b (subsystem A major). Immutable once built.
class MixedState {
public:
    /// Validates rho (Hermitian, PSD within -1e-10, unit trace within 1e-8),
    /// keeps eigenpairs above rankTol * lambda_max and renormalizes them.
    static MixedState from_density(const ComplexMatrix& rho, int dimA, int dimB,
                                   double rankTol = kDefaultRankTolerance,
                                   LogBase base = LogBase::Natural);

    /// Builds directly from eigenpairs (weights > 0, orthonormal vectors). Used
    /// where the dense matrix would be too large to form.
    static MixedState from_spectrum(const RealVector& weights, const ComplexMatrix& vectors, int dimA,
                                    int dimB, LogBase base = LogBase::Natural);

    int dim() const { return dimA_ * dimB_; }
    int dim_a() const { return dimA_; }
    int dim_b() const { return dimB_; }
    int rank() const { return static_cast<int>(factors_.cols()); }
    LogBase log_base() const { return base_; }

    const ComplexMatrix& factors() const { return factors_; }
    const RealVector& eigenvalues() const { return lambda_; }
    ComplexVector eigenvector(int j) const { return factors_.col(j) / std::sqrt(lambda_(j)); }

    MixedState with_log_base(LogBase base) const;

    // Dense rho = F F^dagger.
    ComplexMatrix density() const { return factors_ * factors_.adjoint(); }

private:
    MixedState(int dimA, int dimB, ComplexMatrix factors, RealVector lambda, LogBase base)
        : dimA_(dimA), dimB_(dimB), factors_(std::move(factors)), lambda_(std::move(lambda)), base_(base) {}

    int dimA_;
    int dimB_;
    ComplexMatrix factors_;
    RealVector lambda_;
    LogBase base_;
};

inline MixedState spectral_factorize(const ComplexMatrix& rho, int dimA, int dimB,
                                     double rankTol = kDefaultRankTolerance) {
    return MixedState::from_density(rho, dimA, dimB, rankTol);
}

struct PureStateDecomposition {
    RealVector probs;      // p_i, sum to 1
    ComplexMatrix states;  // column i is |psi_i>, zero when p_i <= kZeroWeight

    Eigen::Index size() const { return probs.size(); }
    bool active(Eigen::Index i) const { return probs(i) > kZeroWeight; }
};

/// phi_i = sum_j U_ij sqrt(lambda_j) |v_j>, p_i = <phi_i|phi_i>, psi_i = phi_i / sqrt(p_i).
PureStateDecomposition hjw_decompose(const MixedState& state, const SemiUnitary& u);

/// A pure-state entanglement monotone m(psi; dimA, dimB).
using PureMeasure = std::function<double(const ComplexVector& psi, int dimA, int dimB)>;

/// J(U) = sum_i p_i m(psi_i) with the entropy of entanglement in the state's log base.
double objective_j(const MixedState& state, const SemiUnitary& u);
double objective_j(const MixedState& state, const SemiUnitary& u, const PureMeasure& measure);

/// sum_j lambda_j m(v_j), i.e. J at U = I.
double eigenbasis_average(const MixedState& state);

/// sum_i p_i |psi_i><psi_i|
ComplexMatrix reconstruct(const PureStateDecomposition& psd);

}  // namespace convroof
