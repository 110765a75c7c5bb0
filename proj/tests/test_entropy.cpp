#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qcorr/entropy.hpp"
#include "qcorr/random.hpp"

namespace {

using namespace qcorr;

const double kHalfRoot2 = std::sqrt(2.0) / 2.0;

DensityOperator bell() { return make_state_from_kets({{0, kHalfRoot2}, {3, kHalfRoot2}}, 2).to_density(); }

DensityOperator classical_ghz(int n) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dimension_of(n)),
                                          static_cast<Eigen::Index>(dimension_of(n)));
    m(0, 0) = 0.5;
    m(m.rows() - 1, m.cols() - 1) = 0.5;
    return DensityOperator::from_matrix(m);
}

TEST(VonNeumannEntropy, PureStateIsZero) {
    Rng rng(1);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(von_neumann_entropy(random_pure_state(n, rng).to_density()), 0.0, 1e-10);
}

TEST(VonNeumannEntropy, MaximallyMixedQubitIsOneBit) {
    EXPECT_NEAR(von_neumann_entropy(DensityOperator::maximally_mixed(1)), 1.0, 1e-14);
    EXPECT_NEAR(von_neumann_entropy(DensityOperator::maximally_mixed(3)), 3.0, 1e-13);
}

TEST(VonNeumannEntropy, ReducedGhzThree) {
    const auto reduced = partial_trace(make_ghz(3).to_density(), QubitSubset::from_qubits(3, {0, 1}));
    EXPECT_NEAR(von_neumann_entropy(reduced), 1.0, 1e-14);
}

TEST(VonNeumannEntropy, BoundedByQubitCount) {
    Rng rng(4);
    for (int n = 1; n <= 4; ++n) {
        const double s = von_neumann_entropy(random_density(n, rng));
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, n + 1e-12);
    }
}

TEST(RelativeEntropy, SelfIsZero) {
    Rng rng(2);
    const auto rho = random_density(2, rng);
    EXPECT_NEAR(relative_entropy(rho, rho, DistanceUnit::bits), 0.0, 1e-10);
}

TEST(RelativeEntropy, PureAgainstMaximallyMixed) {
    const auto zero = DensityOperator::basis_state(1, 0);
    EXPECT_NEAR(relative_entropy(zero, DensityOperator::maximally_mixed(1), DistanceUnit::bits), 1.0, 1e-14);
    EXPECT_NEAR(relative_entropy(zero, DensityOperator::maximally_mixed(1), DistanceUnit::normalized), 0.5, 1e-14);
}

TEST(RelativeEntropy, DisjointSupportIsInfinite) {
    const double v = relative_entropy(DensityOperator::basis_state(1, 0), DensityOperator::basis_state(1, 1));
    EXPECT_EQ(v, std::numeric_limits<double>::infinity());
}

TEST(RelativeEntropy, DimensionMismatch) {
    try {
        relative_entropy(DensityOperator::maximally_mixed(1), DensityOperator::maximally_mixed(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(MutualInformation, BellPair) {
    const auto a = QubitSubset::from_qubits(2, {0});
    EXPECT_NEAR(mutual_information(bell(), a, DistanceUnit::bits), 2.0, 1e-13);
    EXPECT_NEAR(mutual_information(bell(), a, DistanceUnit::normalized), 1.0, 1e-13);
}

TEST(MutualInformation, ProductIsZero) {
    Rng rng(6);
    const auto rho = tensor_product(random_density(2, rng), random_density(1, rng));
    EXPECT_NEAR(mutual_information(rho, QubitSubset::from_qubits(3, {0, 1})), 0.0, 1e-10);
}

TEST(MutualInformation, ClassicalGhzEveryBipartition) {
    const auto rho = classical_ghz(3);
    for (std::uint32_t mask = 1; mask < 7; ++mask) {
        EXPECT_NEAR(mutual_information(rho, {mask}, DistanceUnit::bits), 1.0, 1e-13);
        EXPECT_NEAR(mutual_information(rho, {mask}, DistanceUnit::normalized), 0.5, 1e-13);
    }
}

TEST(MutualInformation, InvalidBipartition) {
    const auto rho = DensityOperator::maximally_mixed(2);
    for (std::uint32_t bad : {0u, 3u, 4u}) {
        try {
            mutual_information(rho, {bad});
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidBipartition);
        }
    }
}

TEST(MultiInformation, Examples) {
    Rng rng(8);
    EXPECT_NEAR(multi_information_tv(random_product_density(4, rng)), 0.0, 1e-9);
    EXPECT_NEAR(multi_information_tv(make_ghz(2).to_density(), DistanceUnit::bits), 2.0, 1e-13);
    EXPECT_NEAR(multi_information_tv(make_ghz(2).to_density()), 1.0, 1e-13);
    EXPECT_NEAR(multi_information_tv(make_ghz(3).to_density(), DistanceUnit::bits), 3.0, 1e-13);
    EXPECT_NEAR(multi_information_tv(make_ghz(3).to_density()), 1.5, 1e-13);
}

TEST(MultiInformation, EqualsRelativeEntropyToProductOfMarginals) {
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random_density(3, rng);
        DensityOperator product = partial_trace(rho, QubitSubset::from_qubits(3, {0}));
        for (int q = 1; q < 3; ++q) product = tensor_product(product, partial_trace(rho, QubitSubset::from_qubits(3, {q})));
        EXPECT_NEAR(multi_information_tv(rho), relative_entropy(rho, product), 1e-7);
        EXPECT_GE(multi_information_tv(rho), 0.0);
    }
}

// Property checks on seeded ensembles.

TEST(EntropyProperties, AdditiveOverTensorProducts) {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_density(2, rng);
        const auto b = random_density(2, rng);
        EXPECT_NEAR(von_neumann_entropy(tensor_product(a, b)), von_neumann_entropy(a) + von_neumann_entropy(b), 1e-8);
    }
}

TEST(EntropyProperties, UnitaryInvariance) {
    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = random_density(3, rng);
        const double s = von_neumann_entropy(rho);
        const auto local = apply_local_unitary(rho, random_local_unitaries(3, rng));
        const ComplexMatrix u = random_unitary(8, rng);
        const auto global = DensityOperator::trusted(3, u * rho.matrix() * u.adjoint());
        EXPECT_NEAR(von_neumann_entropy(local), s, 1e-8);
        EXPECT_NEAR(von_neumann_entropy(global), s, 1e-8);
    }
}

TEST(EntropyProperties, MutualInformationMatchesRelativeEntropy) {
    Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rho = random_density(3, rng);
        const QubitSubset a{1u + static_cast<std::uint32_t>(trial % 6)};
        const double mi = mutual_information(rho, a, DistanceUnit::bits);
        EXPECT_GE(mi, 0.0);
        EXPECT_NEAR(mi, relative_entropy(rho, product_of_marginals(rho, a), DistanceUnit::bits), 1e-7);
    }
}

TEST(ProductOfMarginals, LeadingBlockIsPlainKroneckerProduct) {
    Rng rng(17);
    const auto rho = random_density(3, rng);
    const QubitSubset a{0b110u};
    const auto expected = tensor_product(partial_trace(rho, a), partial_trace(rho, a.complement(3)));
    EXPECT_LE(max_abs(product_of_marginals(rho, a).matrix() - expected.matrix()), 1e-15);
}

TEST(ProductOfMarginals, InterleavedBlockOnProductState) {
    // rho = r0 x r1 x r2; splitting {0,2} | {1} must give rho back.
    Rng rng(18);
    const auto rho = random_product_density(3, rng);
    EXPECT_LE(max_abs(product_of_marginals(rho, QubitSubset::from_qubits(3, {0, 2})).matrix() - rho.matrix()), 1e-12);
}

TEST(EntropyProperties, StrongSubadditivity) {
    Rng rng(16);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rho = trial % 2 ? random_density(3, rng) : random_pure_state(3, rng).to_density();
        const auto rho_ab = partial_trace(rho, QubitSubset::from_qubits(3, {0, 1}));
        const double i_a_b = mutual_information(rho_ab, QubitSubset::from_qubits(2, {0}));
        const double i_a_bc = mutual_information(rho, QubitSubset::from_qubits(3, {0}));
        EXPECT_LE(i_a_b, i_a_bc + 1e-8);
    }
}

}  // namespace
