#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcorr/ccm.hpp"
#include "qcorr/random.hpp"
#include "qcorr/spin_models.hpp"

namespace {

using namespace qcorr;

// Independent assembly: I x ... x P_i x ... x I by explicit Kronecker products.
ComplexMatrix site_operator(int n, int site, const ComplexMatrix& p) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) out = kron(out, q == site ? p : ComplexMatrix::Identity(2, 2));
    return out;
}

ComplexMatrix reference_hamiltonian(const SpinChainSpec& s) {
    const int n = s.num_spins;
    const auto d = static_cast<Eigen::Index>(dimension_of(n));
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        h -= s.jx * site_operator(n, i, pauli_x()) * site_operator(n, j, pauli_x());
        h -= s.jy * site_operator(n, i, pauli_y()) * site_operator(n, j, pauli_y());
        h -= s.jz * site_operator(n, i, pauli_z()) * site_operator(n, j, pauli_z());
        h -= s.h * site_operator(n, i, pauli_z());
    }
    return h;
}

/// Permutation matrix of the cyclic shift q -> q+1.
ComplexMatrix cyclic_shift(int n) {
    const auto d = static_cast<std::uint32_t>(dimension_of(n));
    ComplexMatrix t = ComplexMatrix::Zero(d, d);
    for (std::uint32_t s = 0; s < d; ++s) {
        const std::uint32_t rotated = ((s >> 1) | ((s & 1u) << (n - 1))) & (d - 1);
        t(rotated, s) = 1.0;
    }
    return t;
}

ComplexMatrix total_sz(int n) {
    const auto d = static_cast<Eigen::Index>(dimension_of(n));
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (int q = 0; q < n; ++q) z += site_operator(n, q, pauli_z());
    return z;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a * b - b * a); }

TEST(BuildHamiltonian, MatchesKroneckerAssembly) {
    Rng rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 2; n <= 5; ++n) {
        const SpinChainSpec spec{n, u(rng), u(rng), u(rng), u(rng), true};
        EXPECT_LE(max_abs(build_hamiltonian(spec) - reference_hamiltonian(spec)), 1e-12) << n;
    }
}

TEST(BuildHamiltonian, TwoSpinsDoubleCountTheBond) {
    const ComplexMatrix h = build_hamiltonian({2, 1.0, 0.0, 0.0, 0.0, true});
    EXPECT_LE(max_abs(h + 2.0 * kron(pauli_x(), pauli_x())), 1e-15);
}

TEST(BuildHamiltonian, ZZChainIsDiagonal) {
    const ComplexMatrix h = build_hamiltonian({3, 0.0, 0.0, 1.0, 0.0, true});
    const ComplexMatrix off = h - ComplexMatrix(h.diagonal().asDiagonal());
    EXPECT_EQ(max_abs(off), 0.0);
    EXPECT_EQ(h(0, 0), Complex(-3.0));
}

TEST(BuildHamiltonian, ExactlyHermitian) {
    EXPECT_EQ(hermiticity_error(build_hamiltonian({5, 0.3, -1.1, 0.7, 0.25, true})), 0.0);
    EXPECT_EQ(hermiticity_error(build_ising(6, 0.8)), 0.0);
    EXPECT_EQ(hermiticity_error(build_xxz(6, -0.4)), 0.0);
}

TEST(BuildHamiltonian, Guards) {
    EXPECT_THROW(build_hamiltonian({15, 1.0, 0.0, 0.0, 0.0, true}), Error);
    EXPECT_THROW(build_hamiltonian({1, 1.0, 0.0, 0.0, 0.0, true}), Error);
    EXPECT_THROW(build_hamiltonian({3, 1.0, 0.0, 0.0, 0.0, false}), Error);
    EXPECT_THROW(build_hamiltonian({3, std::nan(""), 0.0, 0.0, 0.0, true}), Error);
    try {
        build_hamiltonian({15, 1.0, 0.0, 0.0, 0.0, true});
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
    }
}

TEST(Xxz, HeisenbergPointConservesMagnetization) {
    EXPECT_LE(commutator_norm(build_xxz(5, 1.0), total_sz(5)), 1e-10);
}

TEST(Xxz, MapsToGenericCouplings) {
    EXPECT_EQ(max_abs(build_xxz(4, 0.0) - build_hamiltonian({4, 0.5, 0.5, 0.0, 0.0, true})), 0.0);
    EXPECT_EQ(max_abs(build_xxz(5, -0.7) - build_hamiltonian({5, 0.5, 0.5, -0.35, 0.0, true})), 0.0);
    const double e_specialized = hermitian_eigenvalues(build_xxz(4, -1.0))(0);
    const double e_reference = hermitian_eigenvalues(reference_hamiltonian({4, 0.5, 0.5, -0.5, 0.0, true}))(0);
    EXPECT_NEAR(e_specialized, e_reference, 1e-10);
}

TEST(Ising, MapsToGenericCouplings) {
    EXPECT_EQ(max_abs(build_ising(5, 0.6) - build_hamiltonian({5, 1.0, 0.0, 0.0, 0.6, true})), 0.0);
}

TEST(Ising, ZeroFieldGroundEnergy) {
    EXPECT_NEAR(ground_state_info(build_ising(4, 0.0)).energy, -4.0, 1e-10);
}

TEST(Ising, StrongFieldPolarizesAlongZ) {
    const auto rho = ground_state(build_ising(4, 1000.0));
    EXPECT_GE(rho(0, 0).real(), 0.999);
}

TEST(DoubleXxz, SpectrumIsPairwiseSums) {
    const int n = 3;
    const RealVector a = hermitian_eigenvalues(build_xxz(n, -0.3));
    const RealVector b = hermitian_eigenvalues(build_xxz(n, 0.6));
    std::vector<double> sums;
    for (double x : a) {
        for (double y : b) sums.push_back(x + y);
    }
    std::sort(sums.begin(), sums.end());
    const RealVector c = hermitian_eigenvalues(build_double_xxz(n, -0.3, 0.6));
    ASSERT_EQ(static_cast<std::size_t>(c.size()), sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) EXPECT_NEAR(c(static_cast<Eigen::Index>(i)), sums[i], 1e-10);
}

TEST(DoubleXxz, ChainSwapSymmetryAtEqualAnisotropy) {
    const int n = 3;
    const auto d = static_cast<std::uint32_t>(dimension_of(n));
    ComplexMatrix swap = ComplexMatrix::Zero(d * d, d * d);
    for (std::uint32_t a = 0; a < d; ++a) {
        for (std::uint32_t b = 0; b < d; ++b) swap(b * d + a, a * d + b) = 1.0;
    }
    EXPECT_LE(commutator_norm(build_double_xxz(n, 0.4, 0.4), swap), 1e-12);
    EXPECT_GT(commutator_norm(build_double_xxz(n, 0.4, -0.4), swap), 1e-3);
}

TEST(DoubleXxz, GroundStateIsProductOfChainGroundStates) {
    // Odd rings are frustrated; use 2+2 for unique chain ground states.
    const auto a = ground_state_info(build_xxz(2, -0.5));
    const auto b = ground_state_info(build_xxz(2, 0.3));
    ASSERT_EQ(a.degeneracy, 1);
    ASSERT_EQ(b.degeneracy, 1);
    const auto joint = ground_state(build_double_xxz(2, -0.5, 0.3));
    EXPECT_LE(max_abs(joint.matrix() - tensor_product(a.state, b.state).matrix()), 1e-8);
    EXPECT_THROW(build_double_xxz(7, 0.0, 0.0), Error);
}

TEST(GroundState, UniqueDiagonal) {
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h.diagonal() << 0, 1, 2, 3;
    for (auto mode : {DegeneracyMode::subspace_mixture, DegeneracyMode::first_vector}) {
        const auto rho = ground_state(h, {mode, 1e-9});
        EXPECT_LE(max_abs(rho.matrix() - DensityOperator::basis_state(2, 0).matrix()), 1e-12);
    }
}

TEST(GroundState, DegenerateDiagonalMixture) {
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h.diagonal() << 0, 0, 5, 9;
    const auto info = ground_state_info(h);
    EXPECT_EQ(info.degeneracy, 2);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(1, 1) = 0.5;
    EXPECT_LE(max_abs(info.state.matrix() - expected), 1e-12);
}

TEST(GroundState, ModesAgreeWhenUnique) {
    const auto info = ground_state_info(build_xxz(6, -0.5));
    ASSERT_EQ(info.degeneracy, 1);
    EXPECT_GT(info.gap, 1e-3);
    const auto first = ground_state(build_xxz(6, -0.5), {DegeneracyMode::first_vector, 1e-9});
    EXPECT_LE(max_abs(info.state.matrix() - first.matrix()), 1e-8);
}

TEST(GroundState, FirstVectorPhaseIsCanonical) {
    // The projector is pure and reproducible run to run.
    const auto rho = ground_state(build_ising(4, 0.7), {DegeneracyMode::first_vector, 1e-9});
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_NEAR((rho.matrix() * rho.matrix()).trace().real(), 1.0, 1e-10);
    const auto again = ground_state(build_ising(4, 0.7), {DegeneracyMode::first_vector, 1e-9});
    EXPECT_EQ(max_abs(rho.matrix() - again.matrix()), 0.0);
}

TEST(GroundState, VariationalBound) {
    Rng rng(3);
    const ComplexMatrix h = build_xxz(4, 0.3);
    const auto g = ground_state(h);
    const double e0 = (h * g.matrix()).trace().real();
    for (int t = 0; t < 20; ++t) {
        const auto rho = random_density(4, rng);
        EXPECT_LE(e0, (h * rho.matrix()).trace().real() + 1e-8);
    }
}

TEST(ModelProperties, TranslationInvariance) {
    for (int n : {3, 4, 6}) {
        const ComplexMatrix t = cyclic_shift(n);
        EXPECT_LE(commutator_norm(build_xxz(n, -0.8), t), 1e-9);
        EXPECT_LE(commutator_norm(build_ising(n, 1.3), t), 1e-9);
        EXPECT_LE(commutator_norm(build_hamiltonian({n, 0.2, -0.4, 0.9, 0.1, true}), t), 1e-9);
    }
}

TEST(ModelProperties, DoubleChainAdditivityOfCcm) {
    const int n = 3;
    for (auto [delta, lambda] : {std::pair{-0.5, 0.3}, std::pair{-1.2, -0.2}}) {
        const auto a = ground_state_info(build_xxz(n, delta));
        const auto b = ground_state_info(build_xxz(n, lambda));
        const auto joint = ground_state(build_double_xxz(n, delta, lambda));
        const double sum = ccm(a.state).value + ccm(b.state).value;
        EXPECT_NEAR(ccm(joint).value, sum, 1e-6) << delta << ' ' << lambda;
    }
}

}  // namespace
