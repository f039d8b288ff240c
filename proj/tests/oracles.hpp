#pragma once

// Independent reference computations for the tests. Deliberately naive: plain
// loops and general (non-Hermitian) eigensolvers rather than the library paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "convroof/linalg.hpp"

namespace oracle {

using convroof::Complex;
using convroof::ComplexMatrix;
using convroof::ComplexVector;

inline ComplexMatrix kron_loop(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// rho_A(a, a') = sum_b psi(a, b) conj(psi(a', b))
inline ComplexMatrix partial_trace_b(const ComplexVector& psi, int dimA, int dimB) {
    ComplexMatrix out = ComplexMatrix::Zero(dimA, dimA);
    for (int a = 0; a < dimA; ++a)
        for (int ap = 0; ap < dimA; ++ap)
            for (int b = 0; b < dimB; ++b) out(a, ap) += psi(a * dimB + b) * std::conj(psi(ap * dimB + b));
    return out;
}

inline ComplexMatrix partial_trace_a(const ComplexVector& psi, int dimA, int dimB) {
    ComplexMatrix out = ComplexMatrix::Zero(dimB, dimB);
    for (int b = 0; b < dimB; ++b)
        for (int bp = 0; bp < dimB; ++bp)
            for (int a = 0; a < dimA; ++a) out(b, bp) += psi(a * dimB + b) * std::conj(psi(a * dimB + bp));
    return out;
}

// Entropy through the general complex eigensolver.
inline double entropy(const ComplexMatrix& rho) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i).real();
        if (l > 1e-300) s -= l * std::log(l);
    }
    return s;
}

inline double binary_h(double p) {
    double s = 0.0;
    if (p > 0) s -= p * std::log(p);
    if (p < 1) s -= (1 - p) * std::log(1 - p);
    return s;
}

// Wootters from the square roots of the (non-Hermitian) rho * rho_tilde
// spectrum, in long double so that roundoff-level eigenvalues stay small
// after the square root.
inline double wootters(const ComplexMatrix& rho) {
    using CL = std::complex<long double>;
    using ML = Eigen::Matrix<CL, Eigen::Dynamic, Eigen::Dynamic>;
    ML sy(2, 2);
    sy << CL(0), CL(0, -1), CL(0, 1), CL(0);
    ML yy(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) yy(2 * i + k, 2 * j + l) = sy(i, j) * sy(k, l);
    const ML r = rho.cast<CL>();
    const ML tilde = yy * r.conjugate() * yy;
    Eigen::ComplexEigenSolver<ML> es(r * tilde);
    std::vector<long double> l;
    for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0L, es.eigenvalues()(i).real())));
    std::sort(l.rbegin(), l.rend());
    const double c = static_cast<double>(std::max(0.0L, l[0] - l[1] - l[2] - l[3]));
    return binary_h((1 + std::sqrt(std::max(0.0, 1 - c * c))) / 2);
}

inline ComplexVector random_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(n(rng), n(rng));
    return v / v.norm();
}

// Random density matrix of given rank from Ginibre factors.
inline ComplexMatrix random_density(int dim, int rank, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    ComplexMatrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = Complex(n(rng), n(rng));
    ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace();
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Target value for b = x = 1/3 from the eigenvalue formula
// lambda = (1 +- sqrt(4b^2 - 4b + 4|x|^2 + 1)) / 2.
inline double rho1_target() {
    const double b = 1.0 / 3.0, x = 1.0 / 3.0;
    const double s = std::sqrt(4 * b * b - 4 * b + 4 * x * x + 1);
    return binary_h((1 + s) / 2);
}

inline constexpr double kRho1Target = 0.381264053728103;

}  // namespace oracle
