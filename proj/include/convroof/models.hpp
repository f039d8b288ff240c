#pragma once

#include <vector>

#include "convroof/linalg.hpp"
#include "convroof/mixed_state.hpp"

namespace convroof {

// ---- Decohered Bell-like state confined to span{|01>, |10>} ----

struct Rho1Params {
    double b = 1.0 / 3.0;
    Complex x = 1.0 / 3.0;
};

struct Rho1Model {
    MixedState state;
    ComplexMatrix density;
    double analyticEoF;       // closed form, concurrence 2|x|
    double spectralEntropy;   // -lambda1 log lambda1 - lambda2 log lambda2
};

ComplexMatrix rho1_matrix(const Rho1Params& p);
Rho1Model make_rho1(const Rho1Params& p, LogBase base = LogBase::Natural);

// ---- Two qubits under dephasing and an |11><11| interaction ----

struct Rho2Params {
    double c = 1.0;
    double omega = 1.0;
    double t = 0.0;
};

ComplexMatrix rho2_matrix(const Rho2Params& p);
MixedState make_rho2(const Rho2Params& p, LogBase base = LogBase::Natural);

// ---- Dephased qubit coupled to Ne environment qubits ----

struct QubitEnvParams {
    double d = 1.0;
    int ne = 2;
    double t = 0.0;
};

// omega_k = 2 pi / k, k = 1..ne
double qubit_env_frequency(int k);

// Smallest t > 0 with omega_k t in 2 pi Z for every k, i.e. lcm(1..ne).
double qubit_env_revival_time(int ne);

// w_1(t)|0...0> = prod_k (cos(omega_k t)|0> + i sin(omega_k t)|1>)
ComplexVector qubit_env_branch(int ne, double t);

/// Rank <= 2 state of dimension 2^(ne+1), built from its eigenvectors
/// U(t)(|+-> (x) |0...0>) without forming the density matrix.
MixedState make_qubit_env(const QubitEnvParams& p, LogBase base = LogBase::Natural);

// ---- Gibbs state of a block Hamiltonian on disjoint environment subspaces ----

struct GibbsParams {
    double K = 1.0;
    double alpha = 1.0;
    double Omega = 5.0;
    double T = 1.0;
};

// m = -K, -K + 1, ..., K (K integer or half-integer)
std::vector<double> gibbs_block_labels(double K);

// H_m in the block basis {|0 m>, |0 m_perp>, |1 m>, |1 m_perp>}.
ComplexMatrix gibbs_block_hamiltonian(const GibbsParams& p, double m);

// e^{-(H_m - E_0)/T} for every block, E_0 the global ground energy. Not normalized.
std::vector<ComplexMatrix> gibbs_block_weights(const GibbsParams& p);

struct GibbsModel {
    MixedState state;     // dimA = 2, dimB = 2(2K+1)
    ComplexMatrix hamiltonian;
    ComplexMatrix density;
};

GibbsModel make_gibbs(const GibbsParams& p, LogBase base = LogBase::Natural);

// ---- Fixtures ----

ComplexVector bell_psi_plus();   // (|01> + |10>)/sqrt 2
ComplexVector bell_psi_minus();  // (|01> - |10>)/sqrt 2
ComplexMatrix sep1_matrix();     // (|Psi+><Psi+| + |Psi-><Psi-|)/2
ComplexMatrix sep2_matrix();     // |00><00|/4 + |11><11|/4 + |Psi+><Psi+|/2
ComplexMatrix projector(const ComplexVector& psi);

}  // namespace convroof
