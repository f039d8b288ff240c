#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "convroof/linalg.hpp"
#include "convroof/mixed_state.hpp"

namespace convroof {

enum class Projection { QR, Polar };

/// Hyperparameters of unitary differential evolution.
struct DEConfig {
    double F = 0.1;             // mutation weight, (0, 2)
    double CR = 0.9;            // crossover ratio, (0, 1)
    int npop = 30;              // population size, >= 4
    int maxGenerations = 1024;  // Nmax
    int k = 0;                  // decomposition size; 0 means k = rank
    Projection projection = Projection::QR;
    std::uint64_t seed = 0;
    bool parallelEval = false;
    int threads = 0;            // 0: hardware concurrency (only with parallelEval)
    int stallGenerations = 0;   // stop after this many generations without a 1e-12 gain; 0 = off

    void validate() const;  // throws InputError
};

struct DEResult {
    SemiUnitary bestU;
    double bestJ;
    std::vector<double> history;  // best J after each generation
    std::size_t evaluations = 0;
    std::size_t resampled = 0;    // rank-deficient mutants replaced by fresh Haar draws
    std::uint64_t seed = 0;
    int generations = 0;
};

// Real parameterization of a k x r complex matrix: (re, im) interleaved per
// entry, entries in row-major order. Length 2kr.
RealVector agent_from_matrix(const ComplexMatrix& u);
ComplexMatrix matrix_from_agent(const RealVector& x, Eigen::Index k, Eigen::Index r);

/// Per component j: z_j = a_j + F (b_j - c_j) if u_j < CR else d_j, u_j ~ U[0, 1).
RealVector differential_mutation(const RealVector& a, const RealVector& b, const RealVector& c,
                                 const RealVector& d, double F, double CR, Rng& rng);

std::optional<SemiUnitary> project(const ComplexMatrix& a, Projection mode);

using UnitaryObjective = std::function<double(const SemiUnitary&)>;

/// Unitary differential evolution over U(k, r) for an arbitrary objective.
///
/// Every member owns a random stream derived from (seed, generation, member),
/// so the trajectory is identical in sequential and parallel mode.
DEResult evolve(const UnitaryObjective& objective, Eigen::Index k, Eigen::Index r, const DEConfig& config);

/// Minimizes J(U) for the state's entropy-of-entanglement objective.
DEResult evolve(const MixedState& state, const DEConfig& config);

struct KSweepEntry {
    int k;
    DEResult result;
};

struct KSweepResult {
    std::vector<KSweepEntry> runs;  // k = rank .. kMax
    std::size_t best = 0;           // index into runs with the smallest bestJ
};

/// Runs evolve for every k in [rank, kMax], each with seed derive_seed(seed, k).
KSweepResult sweep_k(const MixedState& state, const DEConfig& config, int kMax);

}  // namespace convroof
