#pragma once

#include "convroof/linalg.hpp"

namespace convroof {

enum class LogBase { Natural, Two };

// Multiplier converting a natural-log entropy to the requested base.
inline double log_scale(LogBase base) { return base == LogBase::Two ? 1.4426950408889634 : 1.0; }

/// Reduced density matrix of one party of a bipartite pure state.
struct ReducedState {
    ComplexMatrix matrix;
};

/// rho_A = Tr_B |psi><psi| with psi indexed a * dimB + b. Throws BadDimensions
/// on a size mismatch and InputError when psi is not normalized.
ReducedState reduced_from_pure(const ComplexVector& psi, int dimA, int dimB);

/// -sum lambda log lambda over the spectrum, eigenvalues clamped to [0, 1].
double entropy_of_spectrum(const RealVector& eigenvalues, LogBase base = LogBase::Natural);

double von_neumann_entropy(const ReducedState& rho, LogBase base = LogBase::Natural);

/// Entropy of entanglement of a normalized pure state.
double pure_entanglement(const ComplexVector& psi, int dimA, int dimB, LogBase base = LogBase::Natural);

/// Entropy of entanglement of phi / sqrt(norm2) where norm2 = <phi|phi> > 0.
/// Works on whichever reduced state is smaller; no validation (hot path).
double scaled_pure_entanglement(const Eigen::Ref<const ComplexVector>& phi, double norm2, int dimA,
                                int dimB, LogBase base = LogBase::Natural);

double binary_entropy(double p, LogBase base = LogBase::Natural);

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const ComplexMatrix& rho);

/// Two-qubit entanglement of formation from the concurrence.
double wootters_eof(const ComplexMatrix& rho, LogBase base = LogBase::Natural);

/// Entanglement of formation of the block-structured Gibbs state, obtained by
/// averaging the two-qubit EoF of each disjoint block with its thermal weight.
double blockwise_gibbs_eof_oracle(double K, double alpha, double Omega, double T,
                                  LogBase base = LogBase::Natural);

}  // namespace convroof
