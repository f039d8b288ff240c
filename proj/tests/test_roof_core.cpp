#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convroof/errors.hpp"
#include "convroof/mixed_state.hpp"
#include "convroof/models.hpp"
#include "oracles.hpp"

using namespace convroof;

TEST_CASE("spectral_factorize: Bell state is rank one") {
    const MixedState s = spectral_factorize(projector(bell_psi_plus()), 2, 2);
    CHECK(s.rank() == 1);
    CHECK(std::abs(s.eigenvalues()(0) - 1.0) < 1e-14);
    const Complex overlap = s.eigenvector(0).dot(bell_psi_plus());
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-14);
}

TEST_CASE("spectral_factorize: sep1 and rho1") {
    const MixedState s1 = spectral_factorize(sep1_matrix(), 2, 2);
    CHECK(s1.rank() == 2);
    CHECK(std::abs(s1.eigenvalues()(0) - 0.5) < 1e-14);
    CHECK(std::abs(s1.eigenvalues()(1) - 0.5) < 1e-14);

    const MixedState r1 = spectral_factorize(rho1_matrix({}), 2, 2);
    CHECK(r1.rank() == 2);
    const double s = std::sqrt(5.0 / 9.0);
    CHECK(std::abs(r1.eigenvalues()(0) - (1 + s) / 2) < 1e-14);
    CHECK(std::abs(r1.eigenvalues()(1) - (1 - s) / 2) < 1e-14);
    CHECK(oracle::max_abs(r1.density() - rho1_matrix({})) < 1e-14);
}

TEST_CASE("spectral_factorize: input errors") {
    CHECK_THROWS_AS(spectral_factorize(ComplexMatrix::Identity(4, 4) / 4.0, 3, 2), BadBipartition);
    CHECK_THROWS_AS(spectral_factorize(ComplexMatrix::Identity(4, 4), 2, 2), NotDensityMatrix);
    ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(spectral_factorize(neg, 2, 2), NotDensityMatrix);
    ComplexMatrix nh = ComplexMatrix::Identity(4, 4) / 4.0;
    nh(0, 3) = 0.2;
    CHECK_THROWS_AS(spectral_factorize(nh, 2, 2), NotDensityMatrix);
}

TEST_CASE("spectral_factorize: truncation renormalizes") {
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = 1.0 - 1e-15;
    rho(3, 3) = 1e-15;
    const MixedState s = spectral_factorize(rho, 2, 2);
    CHECK(s.rank() == 1);
    CHECK(s.eigenvalues().sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hjw_decompose: identity recovers the eigenbasis") {
    const MixedState s = spectral_factorize(rho1_matrix({}), 2, 2);
    const auto psd = hjw_decompose(s, SemiUnitary::identity(2, 2));
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(psd.probs(i) - s.eigenvalues()(i)) < 1e-14);
        CHECK((psd.states.col(i) - s.eigenvector(i)).norm() < 1e-14);
    }
}

TEST_CASE("hjw_decompose: pure state gives copies of one vector") {
    const MixedState s = spectral_factorize(projector(bell_psi_plus()), 2, 2);
    Rng rng(4);
    const SemiUnitary u = haar_random(4, 1, rng);
    const auto psd = hjw_decompose(s, u);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(psd.probs(i) - std::norm(u.matrix()(i, 0))) < 1e-14);
        CHECK(std::abs(std::abs(psd.states.col(i).dot(s.eigenvector(0))) - 1.0) < 1e-12);
    }
}

TEST_CASE("hjw_decompose: reconstruction on sep1") {
    const MixedState s = spectral_factorize(sep1_matrix(), 2, 2);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psd = hjw_decompose(s, haar_random(4, 2, rng));
        CHECK(std::abs(psd.probs.sum() - 1.0) < 1e-13);
        CHECK(oracle::max_abs(reconstruct(psd) - sep1_matrix()) < 1e-12);
    }
}

TEST_CASE("hjw_decompose: rank mismatch") {
    const MixedState s = spectral_factorize(sep1_matrix(), 2, 2);
    CHECK_THROWS_AS(hjw_decompose(s, SemiUnitary::identity(3, 3)), RankMismatch);
}

TEST_CASE("reconstruct: pure and identity decompositions") {
    std::mt19937_64 g(2);
    const ComplexVector psi = oracle::random_state(6, g);
    PureStateDecomposition one{RealVector::Ones(1), psi};
    CHECK(oracle::max_abs(reconstruct(one) - psi * psi.adjoint()) < 1e-15);

    const ComplexMatrix rho = oracle::random_density(6, 3, g);
    const MixedState s = spectral_factorize(rho, 2, 3);
    CHECK(oracle::max_abs(reconstruct(hjw_decompose(s, SemiUnitary::identity(3, 3))) - rho) < 1e-13);
}

TEST_CASE("objective_j: pure state is decomposition independent") {
    std::mt19937_64 g(12);
    const ComplexVector psi = oracle::random_state(6, g);
    const MixedState s = spectral_factorize(psi * psi.adjoint(), 2, 3);
    Rng rng(1);
    const double e = pure_entanglement(s.eigenvector(0), 2, 3);
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(objective_j(s, haar_random(k, 1, rng)) - e) < 1e-12);
}

TEST_CASE("objective_j: rho1 at the identity and the target value") {
    const MixedState s = spectral_factorize(rho1_matrix({}), 2, 2);
    const double j = objective_j(s, SemiUnitary::identity(2, 2));
    CHECK(std::abs(j - eigenbasis_average(s)) < 1e-15);
    // The eigenvectors are entangled, so the eigenbasis average lies above the roof.
    CHECK(j > oracle::kRho1Target + 0.1);
    // A decomposition attaining the target exists and is never undercut.
    Rng rng(6);
    for (int i = 0; i < 200; ++i) CHECK(objective_j(s, haar_random(2, 2, rng)) >= oracle::kRho1Target - 1e-12);
}

TEST_CASE("objective_j: sep1 with the Hadamard mixing is zero") {
    // The spectrum is degenerate, so fix the eigenbasis to the two Bell states.
    ComplexMatrix bells(4, 2);
    bells << bell_psi_plus(), bell_psi_minus();
    const MixedState s = MixedState::from_spectrum(RealVector::Constant(2, 0.5), bells, 2, 2);
    CHECK(oracle::max_abs(s.density() - sep1_matrix()) < 1e-15);
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const SemiUnitary u = SemiUnitary::checked(h);
    const auto psd = hjw_decompose(s, u);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(psd.probs(i) - 0.5) < 1e-14);
    // phi_i are |01> and |10> up to phase, so both members are product states.
    CHECK(objective_j(s, u) < 1e-14);
}

TEST_CASE("objective_j: invariant under row permutation of U") {
    std::mt19937_64 g(77);
    const MixedState s = spectral_factorize(oracle::random_density(8, 3, g), 2, 4);
    Rng rng(13);
    const SemiUnitary u = haar_random(5, 3, rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
    perm.indices() << 3, 0, 4, 1, 2;
    const SemiUnitary v = SemiUnitary::checked(perm * u.matrix());
    CHECK(std::abs(objective_j(s, u) - objective_j(s, v)) < 1e-13);
}

TEST_CASE("objective_j: custom measure matches the fast path") {
    std::mt19937_64 g(3);
    const MixedState s = spectral_factorize(oracle::random_density(6, 2, g), 3, 2);
    Rng rng(3);
    const SemiUnitary u = haar_random(4, 2, rng);
    const PureMeasure m = [](const ComplexVector& psi, int da, int db) {
        return oracle::entropy(oracle::partial_trace_b(psi, da, db));
    };
    CHECK(std::abs(objective_j(s, u, m) - objective_j(s, u)) < 1e-12);
}

TEST_CASE("objective_j: log base two scales") {
    const MixedState s = spectral_factorize(rho1_matrix({}), 2, 2);
    const MixedState s2 = s.with_log_base(LogBase::Two);
    const SemiUnitary u = SemiUnitary::identity(2, 2);
    CHECK(std::abs(objective_j(s2, u) - objective_j(s, u) / std::log(2.0)) < 1e-14);
}

TEST_CASE("from_spectrum: checks") {
    RealVector w(2);
    w << 0.5, 0.5;
    ComplexMatrix v = ComplexMatrix::Identity(4, 2);
    CHECK_NOTHROW(MixedState::from_spectrum(w, v, 2, 2));
    v(1, 0) = 0.5;
    CHECK_THROWS_AS(MixedState::from_spectrum(w, v, 2, 2), InputError);
    w << 0.5, 0.4;
    CHECK_THROWS_AS(MixedState::from_spectrum(w, ComplexMatrix::Identity(4, 2), 2, 2), InputError);
}
