#include "convroof/models.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>

#include "convroof/errors.hpp"

namespace convroof {

ComplexMatrix rho1_matrix(const Rho1Params& p) {
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(1, 1) = p.b;
    rho(1, 2) = p.x;
    rho(2, 1) = std::conj(p.x);
    rho(2, 2) = 1.0 - p.b;
    return rho;
}

Rho1Model make_rho1(const Rho1Params& p, LogBase base) {
    if (!(p.b >= 0.0 && p.b <= 1.0)) throw NotDensityMatrix("rho1: b must lie in [0, 1]");
    const double x2 = std::norm(p.x);
    if (x2 > p.b * (1.0 - p.b) + 1e-12) throw NotDensityMatrix("rho1: |x|^2 > b(1-b), matrix is not PSD");

    ComplexMatrix rho = rho1_matrix(p);
    MixedState state = MixedState::from_density(rho, 2, 2, kDefaultRankTolerance, base);

    const double root = std::sqrt(std::max(0.0, 4.0 * p.b * p.b - 4.0 * p.b + 4.0 * x2 + 1.0));
    const double spectral = binary_entropy(0.5 * (1.0 + root), base);
    const double c = 2.0 * std::sqrt(x2);
    const double eof = c > 0.0 ? binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))), base) : 0.0;
    return Rho1Model{std::move(state), std::move(rho), eof, spectral};
}

ComplexMatrix rho2_matrix(const Rho2Params& p) {
    const double c = p.c;
    const Complex e = std::polar(1.0, p.omega * p.t);
    ComplexMatrix rho(4, 4);
    // clang-format off
    rho << 1.0,                c,                  c,                  c * c * e,
           c,                  1.0,                c * c,              c * e,
           c,                  c * c,              1.0,                c * e,
           c * c * std::conj(e), c * std::conj(e), c * std::conj(e),   1.0;
    // clang-format on
    return rho / 4.0;
}

MixedState make_rho2(const Rho2Params& p, LogBase base) {
    if (!(p.c >= 0.0 && p.c <= 1.0)) throw InputError("rho2: c must lie in [0, 1]");
    return MixedState::from_density(rho2_matrix(p), 2, 2, kDefaultRankTolerance, base);
}

double qubit_env_frequency(int k) { return 2.0 * std::numbers::pi / k; }

double qubit_env_revival_time(int ne) {
    std::uint64_t l = 1;
    for (std::uint64_t k = 2; k <= static_cast<std::uint64_t>(ne); ++k) l = std::lcm(l, k);
    return static_cast<double>(l);
}

ComplexVector qubit_env_branch(int ne, double t) {
    ComplexMatrix branch = ComplexMatrix::Ones(1, 1);
    for (int k = 1; k <= ne; ++k) {
        const double theta = qubit_env_frequency(k) * t;
        ComplexMatrix local(2, 1);
        local << std::cos(theta), Complex(0.0, std::sin(theta));
        branch = kron(branch, local);
    }
    return branch.col(0);
}

MixedState make_qubit_env(const QubitEnvParams& p, LogBase base) {
    if (p.ne < 1) throw InputError("qubit-env: need at least one environment qubit");
    if (!(p.d >= 0.0 && p.d <= 1.0)) throw InputError("qubit-env: d must lie in [0, 1]");

    const Eigen::Index env = Eigen::Index{1} << p.ne;
    const ComplexVector branch = qubit_env_branch(p.ne, p.t);
    const double s = 1.0 / std::numbers::sqrt2;

    const double plus = 0.5 * (1.0 + p.d);
    const double minus = 0.5 * (1.0 - p.d);
    const bool pure = minus <= kDefaultRankTolerance * plus;

    ComplexMatrix vectors = ComplexMatrix::Zero(2 * env, pure ? 1 : 2);
    RealVector weights(pure ? 1 : 2);
    vectors(0, 0) = s;
    vectors.col(0).tail(env) = s * branch;
    weights(0) = plus;
    if (!pure) {
        vectors(0, 1) = s;
        vectors.col(1).tail(env) = -s * branch;
        weights(1) = minus;
    }
    weights /= weights.sum();
    return MixedState::from_spectrum(weights, vectors, 2, static_cast<int>(env), base);
}

std::vector<double> gibbs_block_labels(double K) {
    const double twice = 2.0 * K;
    if (!(K >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
        throw InputError("gibbs: K must be a non-negative integer or half-integer");
    }
    const int count = static_cast<int>(std::lround(twice)) + 1;
    std::vector<double> labels;
    labels.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) labels.push_back(-K + i);
    return labels;
}

ComplexMatrix gibbs_block_hamiltonian(const GibbsParams& p, double m) {
    const double a = p.alpha;
    const double e1 = a * (m + 0.5 * p.Omega);
    const double e2 = -a * (m + 1.0 + 0.5 * p.Omega);
    const double em = 0.5 * (e1 + e2);
    const double mm = a * std::sqrt(std::max(0.0, p.K * (p.K + 1.0) - m * (m + 1.0)));
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h(0, 0) = e1;
    h(1, 1) = em;
    h(2, 2) = em;
    h(3, 3) = e2;
    h(0, 3) = mm;
    h(3, 0) = mm;
    return h;
}

std::vector<ComplexMatrix> gibbs_block_weights(const GibbsParams& p) {
    if (!(p.T > 0.0)) throw InputError("gibbs: temperature must be positive");
    std::vector<HermitianEig> eigs;
    double ground = std::numeric_limits<double>::infinity();
    for (double m : gibbs_block_labels(p.K)) {
        eigs.push_back(hermitian_eig(gibbs_block_hamiltonian(p, m)));
        ground = std::min(ground, eigs.back().values.minCoeff());
    }
    std::vector<ComplexMatrix> weights;
    weights.reserve(eigs.size());
    for (const auto& e : eigs) {
        const RealVector boltzmann = (-(e.values.array() - ground) / p.T).exp().matrix();
        weights.push_back(e.vectors * boltzmann.asDiagonal() * e.vectors.adjoint());
    }
    return weights;
}

GibbsModel make_gibbs(const GibbsParams& p, LogBase base) {
    const std::vector<double> labels = gibbs_block_labels(p.K);
    const std::vector<ComplexMatrix> weights = gibbs_block_weights(p);
    const int blocks = static_cast<int>(labels.size());
    const int dimB = 2 * blocks;
    const int dim = 2 * dimB;

    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (int b = 0; b < blocks; ++b) {
        // Block basis {|0 m>, |0 m_perp>, |1 m>, |1 m_perp>} -> qubit-major global index.
        const int idx[4] = {2 * b, 2 * b + 1, dimB + 2 * b, dimB + 2 * b + 1};
        const ComplexMatrix hm = gibbs_block_hamiltonian(p, labels[static_cast<std::size_t>(b)]);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                h(idx[i], idx[j]) = hm(i, j);
                rho(idx[i], idx[j]) = weights[static_cast<std::size_t>(b)](i, j);
            }
        }
    }
    rho /= rho.trace().real();
    MixedState state = MixedState::from_density(rho, 2, dimB, kDefaultRankTolerance, base);
    return GibbsModel{std::move(state), std::move(h), std::move(rho)};
}

ComplexVector bell_psi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = v(2) = 1.0 / std::numbers::sqrt2;
    return v;
}

ComplexVector bell_psi_minus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = 1.0 / std::numbers::sqrt2;
    v(2) = -1.0 / std::numbers::sqrt2;
    return v;
}

ComplexMatrix projector(const ComplexVector& psi) { return psi * psi.adjoint(); }

ComplexMatrix sep1_matrix() { return 0.5 * projector(bell_psi_plus()) + 0.5 * projector(bell_psi_minus()); }

ComplexMatrix sep2_matrix() {
    ComplexMatrix rho = 0.5 * projector(bell_psi_plus());
    rho(0, 0) += 0.25;
    rho(3, 3) += 0.25;
    return rho;
}

}  // namespace convroof
