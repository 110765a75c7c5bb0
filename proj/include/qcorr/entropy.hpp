#pragma once

// Entropy kernels. Logarithms are base 2; the "normalized" unit is half of
// the bit value, so a Bell pair's mutual information is exactly 1.

#include <cmath>
#include <limits>
#include <string_view>

#include "qcorr/state.hpp"

namespace qcorr {

enum class DistanceUnit { bits, normalized };

constexpr double unit_factor(DistanceUnit unit) {
    return unit == DistanceUnit::normalized ? 0.5 : 1.0;
}

constexpr std::string_view to_string(DistanceUnit unit) {
    return unit == DistanceUnit::normalized ? "normalized" : "bits";
}

/// Eigenvalues at or below this count as outside the support.
inline constexpr double kSupportThreshold = 1e-12;

/// -sum p log2 p over a spectrum; entries <= 1e-12 contribute nothing.
inline double shannon_bits(const RealVector& spectrum) {
    double s = 0.0;
    for (double p : spectrum) {
        if (p > kSupportThreshold) s -= p * std::log2(p);
    }
    return s;
}

inline double von_neumann_entropy(const DensityOperator& rho) {
    return shannon_bits(rho.clamped_spectrum());
}

/// Entropy of a raw Hermitian matrix, used for reduced states built internally.
inline double entropy_of_matrix(const ComplexMatrix& m) {
    return shannon_bits(hermitian_eigenvalues(m).cwiseMax(0.0));
}

/// S(rho || sigma) = Tr rho (log rho - log sigma). +infinity when the support
/// of rho is not contained in the support of sigma.
inline double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma,
                               DistanceUnit unit = DistanceUnit::normalized,
                               double support_threshold = kSupportThreshold) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "relative entropy of operators of different size");
    }
    const double neg_entropy = -von_neumann_entropy(rho);  // Tr rho log rho
    const EigenSystem es = hermitian_eigensystem(sigma.matrix());
    double cross = 0.0;  // Tr rho log sigma
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
        const auto v = es.vectors.col(j);
        const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
        if (es.values(j) <= support_threshold) {
            if (weight > support_threshold) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(es.values(j));
    }
    return std::max(0.0, neg_entropy - cross) * unit_factor(unit);
}

namespace detail {

inline void require_bipartition(int num_qubits, QubitSubset part) {
    if (part.empty() || !part.within(num_qubits) || part == QubitSubset::full(num_qubits)) {
        throw Error(ErrorKind::InvalidBipartition, "part must be a proper non-empty subset");
    }
}

}  // namespace detail

/// rho_A x rho_B laid out in the original register order, for any
/// bipartition (A need not be a leading block).
inline DensityOperator product_of_marginals(const DensityOperator& rho, QubitSubset part_a) {
    const int n = rho.num_qubits();
    detail::require_bipartition(n, part_a);
    const QubitSubset part_b = part_a.complement(n);
    const ComplexMatrix a = partial_trace(rho, part_a).matrix();
    const ComplexMatrix b = partial_trace(rho, part_b).matrix();
    const auto a_idx = detail::scatter_table(part_a.mask);
    const auto b_idx = detail::scatter_table(part_b.mask);
    ComplexMatrix out(rho.dim(), rho.dim());
    for (std::size_t ac = 0; ac < a_idx.size(); ++ac) {
        for (std::size_t bc = 0; bc < b_idx.size(); ++bc) {
            const auto col = static_cast<Eigen::Index>(a_idx[ac] | b_idx[bc]);
            for (std::size_t ar = 0; ar < a_idx.size(); ++ar) {
                for (std::size_t br = 0; br < b_idx.size(); ++br) {
                    const auto row = static_cast<Eigen::Index>(a_idx[ar] | b_idx[br]);
                    out(row, col) = a(static_cast<Eigen::Index>(ar), static_cast<Eigen::Index>(ac)) *
                                    b(static_cast<Eigen::Index>(br), static_cast<Eigen::Index>(bc));
                }
            }
        }
    }
    return DensityOperator::trusted(n, std::move(out));
}

/// S(A) + S(B) - S(AB) with B the complement of `part_a`.
inline double mutual_information(const DensityOperator& rho, QubitSubset part_a,
                                 DistanceUnit unit = DistanceUnit::normalized) {
    detail::require_bipartition(rho.num_qubits(), part_a);
    const double s_a = von_neumann_entropy(partial_trace(rho, part_a));
    const double s_b = von_neumann_entropy(partial_trace(rho, part_a.complement(rho.num_qubits())));
    const double s_ab = von_neumann_entropy(rho);
    return (s_a + s_b - s_ab) * unit_factor(unit);
}

/// Multi-information S(rho || rho_1 x ... x rho_n) = sum_i S(rho_i) - S(rho).
inline double multi_information_tv(const DensityOperator& rho, DistanceUnit unit = DistanceUnit::normalized) {
    if (rho.num_qubits() < 2) throw Error(ErrorKind::InvalidBipartition, "need at least two qubits");
    double sum = 0.0;
    for (int q = 0; q < rho.num_qubits(); ++q) {
        sum += von_neumann_entropy(partial_trace(rho, QubitSubset::from_qubits(rho.num_qubits(), {q})));
    }
    return (sum - von_neumann_entropy(rho)) * unit_factor(unit);
}

}  // namespace qcorr
