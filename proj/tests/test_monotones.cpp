#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convroof/errors.hpp"
#include "convroof/models.hpp"
#include "convroof/monotones.hpp"
#include "oracles.hpp"

using namespace convroof;

namespace {

const double kLn2 = std::log(2.0);

ComplexVector basis(int dim, int i) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(i) = 1;
    return v;
}

}  // namespace

TEST_CASE("reduced_from_pure: product and Bell") {
    std::mt19937_64 rng(1);
    const ComplexVector chi = oracle::random_state(3, rng);
    ComplexVector psi = ComplexVector::Zero(6);
    psi.head(3) = chi;
    const ComplexMatrix r = reduced_from_pure(psi, 2, 3).matrix;
    CHECK(std::abs(r(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(r(1, 1)) < 1e-14);

    const ComplexMatrix bell = reduced_from_pure(bell_psi_plus(), 2, 2).matrix;
    CHECK(oracle::max_abs(bell - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("reduced_from_pure: partial-trace loop oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexVector psi = oracle::random_state(12, rng);
        CHECK(oracle::max_abs(reduced_from_pure(psi, 3, 4).matrix - oracle::partial_trace_b(psi, 3, 4)) < 1e-14);
    }
}

TEST_CASE("reduced_from_pure: errors") {
    CHECK_THROWS_AS(reduced_from_pure(ComplexVector::Ones(5) / std::sqrt(5.0), 2, 2), BadDimensions);
    CHECK_THROWS_AS(reduced_from_pure(ComplexVector::Ones(4), 2, 2), InputError);
}

TEST_CASE("von_neumann_entropy: named values") {
    ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
    pure(0, 0) = 1;
    CHECK(von_neumann_entropy({pure}) == doctest::Approx(0.0));
    CHECK(std::abs(von_neumann_entropy({ComplexMatrix::Identity(2, 2) / 2.0}) - kLn2) < 1e-15);
    CHECK(std::abs(von_neumann_entropy({ComplexMatrix::Identity(2, 2) / 2.0}, LogBase::Two) - 1.0) < 1e-15);

    const double s = std::sqrt(5.0 / 9.0);
    RealVector spectrum(2);
    spectrum << (1 + s) / 2, (1 - s) / 2;
    CHECK(std::abs(entropy_of_spectrum(spectrum) - oracle::kRho1Target) < 1e-15);
}

TEST_CASE("entropy_of_spectrum: clamps roundoff") {
    RealVector spectrum(3);
    spectrum << 1.0 + 1e-16, -1e-17, 0.0;
    const double s = entropy_of_spectrum(spectrum);
    CHECK(std::isfinite(s));
    CHECK(s >= 0.0);
    CHECK(s < 1e-14);
}

TEST_CASE("pure_entanglement: named states") {
    CHECK(std::abs(pure_entanglement(bell_psi_plus(), 2, 2) - kLn2) < 1e-15);
    CHECK(pure_entanglement(basis(4, 0), 2, 2) == 0.0);
    ComplexVector psi(4);
    psi << 0.5, 0.5, 0.5, -0.5;
    CHECK(std::abs(pure_entanglement(psi, 2, 2) - kLn2) < 1e-14);
}

TEST_CASE("pure_entanglement: symmetric in the two parties") {
    std::mt19937_64 rng(99);
    const int dims[][2] = {{2, 2}, {2, 3}, {3, 2}, {3, 4}, {2, 8}, {4, 4}};
    for (auto [da, db] : dims) {
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexVector psi = oracle::random_state(da * db, rng);
            const double sa = oracle::entropy(oracle::partial_trace_b(psi, da, db));
            const double sb = oracle::entropy(oracle::partial_trace_a(psi, da, db));
            CHECK(std::abs(sa - sb) < 1e-10);
            CHECK(std::abs(pure_entanglement(psi, da, db) - sa) < 1e-10);
        }
    }
}

TEST_CASE("scaled_pure_entanglement: scale invariance") {
    std::mt19937_64 rng(5);
    for (auto [da, db] : {std::pair{2, 4}, std::pair{4, 2}, std::pair{3, 3}}) {
        const ComplexVector psi = oracle::random_state(da * db, rng);
        const ComplexVector phi = 0.37 * psi;
        CHECK(std::abs(scaled_pure_entanglement(phi, phi.squaredNorm(), da, db) - pure_entanglement(psi, da, db)) <
              1e-13);
    }
    CHECK(scaled_pure_entanglement(ComplexVector::Ones(5), 5.0, 1, 5) == 0.0);
}

TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(std::abs(binary_entropy(0.5) - kLn2) < 1e-15);
    CHECK(std::abs(binary_entropy(0.5, LogBase::Two) - 1.0) < 1e-15);
}

TEST_CASE("wootters_eof: named states") {
    CHECK(std::abs(concurrence(projector(bell_psi_plus())) - 1.0) < 1e-12);
    CHECK(std::abs(wootters_eof(projector(bell_psi_plus())) - kLn2) < 1e-12);
    CHECK(wootters_eof(sep1_matrix()) < 1e-12);
    CHECK(concurrence(sep2_matrix()) < 1e-12);
    CHECK(wootters_eof(sep2_matrix()) < 1e-12);
}

TEST_CASE("wootters_eof: matches the non-Hermitian form on random states") {
    std::mt19937_64 rng(17);
    for (int rank = 1; rank <= 4; ++rank) {
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix rho = oracle::random_density(4, rank, rng);
            CHECK(std::abs(wootters_eof(rho) - oracle::wootters(rho)) < 1e-9);
        }
    }
}

TEST_CASE("wootters_eof: pure states reduce to the entanglement entropy") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexVector psi = oracle::random_state(4, rng);
        CHECK(std::abs(wootters_eof(projector(psi)) - pure_entanglement(psi, 2, 2)) < 1e-9);
    }
}

TEST_CASE("wootters_eof: mixtures of product states are separable") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
        double total = 0;
        for (int j = 0; j < 3; ++j) {
            const ComplexVector a = oracle::random_state(2, rng);
            const ComplexVector b = oracle::random_state(2, rng);
            ComplexVector ab(4);
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) ab(2 * i + k) = a(i) * b(k);
            const double w = u(rng);
            total += w;
            rho += w * ab * ab.adjoint();
        }
        rho /= total;
        CHECK(concurrence(rho) < 1e-9);
    }
}

TEST_CASE("wootters_eof: input checks") {
    CHECK_THROWS_AS(concurrence(ComplexMatrix::Identity(3, 3) / 3.0), NotDensityMatrix);
    CHECK_THROWS_AS(concurrence(ComplexMatrix::Identity(4, 4)), NotDensityMatrix);
    ComplexMatrix h = ComplexMatrix::Identity(4, 4) / 4.0;
    h(0, 1) = Complex(0, 0.1);
    CHECK_THROWS_AS(concurrence(h), NotDensityMatrix);
}

TEST_CASE("blockwise_gibbs_eof_oracle: limits") {
    CHECK(blockwise_gibbs_eof_oracle(1, 1, 5, 1e6) < 1e-6);
    CHECK(blockwise_gibbs_eof_oracle(1, 0, 5, 1.0) < 1e-12);
    const double v = blockwise_gibbs_eof_oracle(1, 1, 5, 1.0);
    CHECK(v >= 0.0);
    CHECK(v <= kLn2);
}

TEST_CASE("blockwise_gibbs_eof_oracle: equals the Wootters average over blocks") {
    const GibbsParams p{1, 1, 5, 0.7};
    const auto weights = gibbs_block_weights(p);
    double z = 0;
    for (const auto& w : weights) z += w.trace().real();
    double avg = 0;
    for (const auto& w : weights) {
        const double pm = w.trace().real() / z;
        if (pm > 0) avg += pm * oracle::wootters(w / w.trace());
    }
    CHECK(std::abs(blockwise_gibbs_eof_oracle(1, 1, 5, 0.7) - avg) < 1e-9);
}
