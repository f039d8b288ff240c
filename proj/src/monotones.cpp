#include "convroof/monotones.hpp"

#include <algorithm>
#include <cmath>

#include "convroof/errors.hpp"
#include "convroof/models.hpp"

namespace convroof {

ReducedState reduced_from_pure(const ComplexVector& psi, int dimA, int dimB) {
    if (dimA < 1 || dimB < 1 || psi.size() != static_cast<Eigen::Index>(dimA) * dimB) {
        throw BadDimensions("reduced_from_pure: vector length does not match dimA * dimB");
    }
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) throw InputError("reduced_from_pure: state is not normalized");
    // Column-major view: mt(b, a) = psi[a * dimB + b].
    Eigen::Map<const ComplexMatrix> mt(psi.data(), dimB, dimA);
    return ReducedState{mt.transpose() * mt.conjugate()};
}

double entropy_of_spectrum(const RealVector& eigenvalues, LogBase base) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double l = std::clamp(eigenvalues(i), 0.0, 1.0);
        if (l > 0.0) s -= l * std::log(l);
    }
    return s * log_scale(base);
}

double von_neumann_entropy(const ReducedState& rho, LogBase base) {
    return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix), base);
}

double pure_entanglement(const ComplexVector& psi, int dimA, int dimB, LogBase base) {
    if (dimA < 1 || dimB < 1 || psi.size() != static_cast<Eigen::Index>(dimA) * dimB) {
        throw BadDimensions("pure_entanglement: vector length does not match dimA * dimB");
    }
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) throw InputError("pure_entanglement: state is not normalized");
    return scaled_pure_entanglement(psi, 1.0, dimA, dimB, base);
}

namespace {

double entropy_term(double l) {
    l = std::clamp(l, 0.0, 1.0);
    return l > 0.0 ? -l * std::log(l) : 0.0;
}

// Entropy of the 2x2 Hermitian matrix [[a, b], [b*, d]].
double entropy_2x2(double a, double d, Complex b, LogBase base) {
    const double half_gap = 0.5 * (a - d);
    const double disc = std::sqrt(half_gap * half_gap + std::norm(b));
    const double mean = 0.5 * (a + d);
    return (entropy_term(mean + disc) + entropy_term(mean - disc)) * log_scale(base);
}

// Gram matrix of a qubit factor accumulated without temporaries. `stride` and
// `step` walk the two qubit slices of phi.
double qubit_side_entropy(const Complex* phi, Eigen::Index count, Eigen::Index stride, Eigen::Index step,
                          double norm2, LogBase base) {
    double g00 = 0.0;
    double g11 = 0.0;
    Complex g01 = 0.0;
    for (Eigen::Index i = 0; i < count; ++i) {
        const Complex u = phi[i * step];
        const Complex v = phi[i * step + stride];
        g00 += std::norm(u);
        g11 += std::norm(v);
        g01 += std::conj(u) * v;
    }
    return entropy_2x2(g00 / norm2, g11 / norm2, g01 / norm2, base);
}

}  // namespace

double scaled_pure_entanglement(const Eigen::Ref<const ComplexVector>& phi, double norm2, int dimA,
                                int dimB, LogBase base) {
    if (dimA == 1 || dimB == 1) return 0.0;
    // Qubit A: slices psi(0, .) and psi(1, .) are contiguous blocks of length dimB.
    if (dimA == 2) return qubit_side_entropy(phi.data(), dimB, dimB, 1, norm2, base);
    // Qubit B: slices psi(., 0) and psi(., 1) interleave.
    if (dimB == 2) return qubit_side_entropy(phi.data(), dimA, 1, 2, norm2, base);
    Eigen::Map<const ComplexMatrix> mt(phi.data(), dimB, dimA);
    // Either Gram matrix has the nonzero spectrum of the reduced state.
    ComplexMatrix g = dimA <= dimB ? ComplexMatrix(mt.adjoint() * mt) : ComplexMatrix(mt * mt.adjoint());
    g /= norm2;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(g, Eigen::EigenvaluesOnly);
    return entropy_of_spectrum(solver.eigenvalues(), base);
}

double binary_entropy(double p, LogBase base) {
    RealVector l(2);
    l << p, 1.0 - p;
    return entropy_of_spectrum(l, base);
}

namespace {

void require_two_qubit_density(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw NotDensityMatrix("two-qubit state must be 4x4");
    if (!all_finite(rho)) throw NotDensityMatrix("two-qubit state has non-finite entries");
    if (hermiticity_defect(rho) > kHermitianTolerance) throw NotDensityMatrix("two-qubit state is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8) throw NotDensityMatrix("two-qubit state does not have unit trace");
}

}  // namespace

double concurrence(const ComplexMatrix& rho) {
    require_two_qubit_density(rho);
    const HermitianEig eig = hermitian_eig(0.5 * (rho + rho.adjoint()));
    if (eig.values(3) < -1e-10) throw NotDensityMatrix("two-qubit state is not positive semidefinite");

    // With rho = F F^dagger the mu_i are the singular values of F^T (sy x sy) F,
    // which avoids square roots of roundoff-level eigenvalues.
    const ComplexMatrix f = eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().asDiagonal();

    ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const ComplexMatrix tau = f.transpose() * yy * f;
    const RealVector mu = Eigen::JacobiSVD<ComplexMatrix>(tau).singularValues();
    return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double wootters_eof(const ComplexMatrix& rho, LogBase base) {
    const double c = std::min(1.0, concurrence(rho));
    if (c <= 0.0) return 0.0;
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)), base);
}

double blockwise_gibbs_eof_oracle(double K, double alpha, double Omega, double T, LogBase base) {
    if (!(T > 0.0)) throw InputError("blockwise_gibbs_eof_oracle: temperature must be positive");
    const std::vector<ComplexMatrix> weights = gibbs_block_weights(GibbsParams{K, alpha, Omega, T});
    double z = 0.0;
    for (const auto& w : weights) z += w.trace().real();

    double eof = 0.0;
    for (const auto& w : weights) {
        const double tr = w.trace().real();
        if (tr <= 0.0) continue;
        eof += (tr / z) * wootters_eof(w / tr, base);
    }
    return eof;
}

}  // namespace convroof
