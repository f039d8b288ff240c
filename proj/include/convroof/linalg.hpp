#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Dense>

namespace convroof {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

// Relative threshold on |R_jj| (QR) or singular values (polar) below which a
// matrix is treated as column-rank deficient.
inline constexpr double kRankThreshold = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;

bool all_finite(const ComplexMatrix& a);

// ||A - A^dagger||_F / ||A||_F (0 for the zero matrix).
double hermiticity_defect(const ComplexMatrix& a);

struct HermitianEig {
    RealVector values;     // descending
    ComplexMatrix vectors; // column j pairs with values[j]
};

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Throws NotHermitian or NoConvergence.
HermitianEig hermitian_eig(const ComplexMatrix& a);

/// Eigenvalues only, descending.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

/// A k x r complex matrix with orthonormal columns (U^dagger U = I_r).
///
/// Instances are only produced by the projections below, by haar_random, or by
/// the checked factory, so the invariant holds for every live object.
class SemiUnitary {
public:
    static SemiUnitary identity(Eigen::Index k, Eigen::Index r);

    // Accepts `m` if ||m^dagger m - I||_max <= tol, else throws InputError.
    static SemiUnitary checked(ComplexMatrix m, double tol = 1e-10);

    Eigen::Index k() const { return m_.rows(); }
    Eigen::Index r() const { return m_.cols(); }
    const ComplexMatrix& matrix() const { return m_; }

    // max |(U^dagger U - I)_ij|
    double unitarity_defect() const;

private:
    explicit SemiUnitary(ComplexMatrix m) : m_(std::move(m)) {}

    friend std::optional<SemiUnitary> try_project_qr(const ComplexMatrix& a);
    friend std::optional<SemiUnitary> try_project_polar(const ComplexMatrix& a);

    ComplexMatrix m_;
};

/// Thin QR with diag(R) forced real-positive; returns the first r columns of Q.
/// nullopt when the smallest |R_jj| is below kRankThreshold * largest.
std::optional<SemiUnitary> try_project_qr(const ComplexMatrix& a);
SemiUnitary project_qr(const ComplexMatrix& a);  // throws RankDeficient

/// Polar factor V W^dagger of the thin SVD A = V S W^dagger.
std::optional<SemiUnitary> try_project_polar(const ComplexMatrix& a);
SemiUnitary project_polar(const ComplexMatrix& a);  // throws RankDeficient

/// k x r matrix of i.i.d. standard complex Gaussians.
ComplexMatrix complex_gaussian(Eigen::Index k, Eigen::Index r, Rng& rng);

/// Haar-distributed semi-unitary: QR projection of a complex Gaussian matrix.
SemiUnitary haar_random(Eigen::Index k, Eigen::Index r, Rng& rng);

/// Kronecker product; entry (i*rows(B)+k, j*cols(B)+l) = A_ij * B_kl.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace convroof
