#pragma once

// Seeded random states, unitaries and channels for property checks.
// Pure states come from normalized complex Gaussian vectors; mixed states
// are A A^dagger / Tr(A A^dagger) with complex Gaussian A.

#include <random>
#include <vector>

#include "qcorr/state.hpp"

namespace qcorr {

using Rng = std::mt19937_64;

inline ComplexMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

inline PureState random_pure_state(int num_qubits, Rng& rng) {
    const auto d = static_cast<Eigen::Index>(dimension_of(num_qubits));
    return PureState::normalized(num_qubits, random_gaussian_matrix(d, 1, rng).col(0));
}

/// Full-rank (almost surely) mixed state.
inline DensityOperator random_density(int num_qubits, Rng& rng) {
    const auto d = static_cast<Eigen::Index>(dimension_of(num_qubits));
    const ComplexMatrix a = random_gaussian_matrix(d, d, rng);
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator::trusted(num_qubits, std::move(rho));
}

/// rho_1 x ... x rho_n with independent random single-qubit factors.
inline DensityOperator random_product_density(int num_qubits, Rng& rng) {
    DensityOperator out = random_density(1, rng);
    for (int q = 1; q < num_qubits; ++q) out = tensor_product(out, random_density(1, rng));
    return out;
}

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
inline ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
    const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Complex diag = r(i, i);
        q.col(i) *= diag / std::abs(diag);
    }
    return q;
}

inline std::vector<ComplexMatrix> random_local_unitaries(int num_qubits, Rng& rng) {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(num_qubits));
    for (int q = 0; q < num_qubits; ++q) out.push_back(random_unitary(2, rng));
    return out;
}

/// Random single-qubit Kraus set: E_k = G_k S^{-1/2} with S = sum G_k^dagger G_k.
inline std::vector<ComplexMatrix> random_kraus_operators(int count, Rng& rng) {
    std::vector<ComplexMatrix> g;
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    for (int k = 0; k < count; ++k) {
        g.push_back(random_gaussian_matrix(2, 2, rng));
        s += g.back().adjoint() * g.back();
    }
    s = 0.5 * (s + s.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    const ComplexMatrix inv_sqrt = es.eigenvectors() *
                                   es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                                   es.eigenvectors().adjoint();
    for (auto& e : g) e = e * inv_sqrt;
    return g;
}

}  // namespace qcorr
