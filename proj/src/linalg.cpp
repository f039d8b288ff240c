#include "convroof/linalg.hpp"

#include <cmath>
#include <limits>

#include "convroof/errors.hpp"

namespace convroof {

bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
        }
    }
    return true;
}

double hermiticity_defect(const ComplexMatrix& a) {
    const double norm = a.norm();
    if (norm == 0.0) return 0.0;
    return (a - a.adjoint()).norm() / norm;
}

HermitianEig hermitian_eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw NotHermitian("hermitian_eig: matrix is not square");
    if (!all_finite(a)) throw NonFinite("hermitian_eig: non-finite entry");
    if (hermiticity_defect(a) > kHermitianTolerance) {
        throw NotHermitian("hermitian_eig: matrix is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success) throw NoConvergence("hermitian_eig: solver did not converge");

    HermitianEig out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw NotHermitian("hermitian_eigenvalues: matrix is not square");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NoConvergence("hermitian_eigenvalues: solver did not converge");
    return solver.eigenvalues().reverse();
}

SemiUnitary SemiUnitary::identity(Eigen::Index k, Eigen::Index r) {
    if (k < r || r < 1) throw InputError("SemiUnitary::identity: need k >= r >= 1");
    return SemiUnitary(ComplexMatrix::Identity(k, r));
}

SemiUnitary SemiUnitary::checked(ComplexMatrix m, double tol) {
    if (m.rows() < m.cols() || m.cols() < 1) throw InputError("SemiUnitary: need k >= r >= 1");
    SemiUnitary u(std::move(m));
    if (!(u.unitarity_defect() <= tol)) throw InputError("SemiUnitary: columns are not orthonormal");
    return u;
}

double SemiUnitary::unitarity_defect() const {
    const ComplexMatrix g = m_.adjoint() * m_ - ComplexMatrix::Identity(m_.cols(), m_.cols());
    return g.cwiseAbs().maxCoeff();
}

std::optional<SemiUnitary> try_project_qr(const ComplexMatrix& a) {
    const Eigen::Index k = a.rows();
    const Eigen::Index r = a.cols();
    if (k < r || r < 1) throw BadDimensions("project_qr: need k >= r >= 1");
    if (!all_finite(a)) return std::nullopt;

    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    const ComplexMatrix& packed = qr.matrixQR();
    double largest = 0.0;
    double smallest = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < r; ++j) {
        const double d = std::abs(packed(j, j));
        largest = std::max(largest, d);
        smallest = std::min(smallest, d);
    }
    if (!(largest > 0.0) || smallest <= kRankThreshold * largest) return std::nullopt;

    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(k, r);
    // Q R = (Q D)(D^* R) with D = diag(R_jj / |R_jj|) makes diag(R) positive.
    for (Eigen::Index j = 0; j < r; ++j) {
        const Complex d = packed(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return SemiUnitary(std::move(q));
}

SemiUnitary project_qr(const ComplexMatrix& a) {
    auto u = try_project_qr(a);
    if (!u) throw RankDeficient("project_qr: matrix is numerically column-rank deficient");
    return *std::move(u);
}

std::optional<SemiUnitary> try_project_polar(const ComplexMatrix& a) {
    const Eigen::Index k = a.rows();
    const Eigen::Index r = a.cols();
    if (k < r || r < 1) throw BadDimensions("project_polar: need k >= r >= 1");
    if (!all_finite(a)) return std::nullopt;

    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    if (!(s(0) > 0.0) || s(r - 1) <= kRankThreshold * s(0)) return std::nullopt;
    return SemiUnitary(svd.matrixU() * svd.matrixV().adjoint());
}

SemiUnitary project_polar(const ComplexMatrix& a) {
    auto u = try_project_polar(a);
    if (!u) throw RankDeficient("project_polar: matrix is numerically column-rank deficient");
    return *std::move(u);
}

ComplexMatrix complex_gaussian(Eigen::Index k, Eigen::Index r, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(k, r);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

SemiUnitary haar_random(Eigen::Index k, Eigen::Index r, Rng& rng) {
    if (k < r || r < 1) throw BadDimensions("haar_random: need k >= r >= 1");
    for (;;) {
        if (auto u = try_project_qr(complex_gaussian(k, r, rng))) return *std::move(u);
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace convroof
