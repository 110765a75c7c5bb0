#pragma once

// Periodic nearest-neighbour spin-1/2 chains
//
//   H = - sum_{i=1}^{N} ( Jx sx_i sx_{i+1} + Jy sy_i sy_{i+1} + Jz sz_i sz_{i+1} + h sz_i ),
//
// with site N+1 identified with site 1, assembled densely.

#include <cmath>
#include <cstdint>
#include <string>

#include "qcorr/state.hpp"

namespace qcorr {

struct SpinChainSpec {
    int num_spins = 2;
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
    double h = 0.0;
    bool periodic = true;
};

/// Largest chain the dense builders accept.
inline constexpr int kMaxSpins = kMaxQubits;

namespace detail {

inline void validate(const SpinChainSpec& spec) {
    if (spec.num_spins < 2) throw Error(ErrorKind::InvalidState, "chain needs at least two spins");
    if (spec.num_spins > kMaxSpins) throw Error(ErrorKind::TooLarge, "chain longer than 14 spins");
    if (!std::isfinite(spec.jx) || !std::isfinite(spec.jy) || !std::isfinite(spec.jz) || !std::isfinite(spec.h)) {
        throw Error(ErrorKind::InvalidState, "non-finite coupling");
    }
    if (!spec.periodic) throw Error(ErrorKind::InvalidState, "only periodic chains are supported");
}

}  // namespace detail

/// Dense Hamiltonian. For N = 2 the bonds (1,2) and (2,1) are both summed.
inline ComplexMatrix build_hamiltonian(const SpinChainSpec& spec) {
    detail::validate(spec);
    const int n = spec.num_spins;
    const auto dim = static_cast<std::uint32_t>(dimension_of(n));
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);

    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const std::uint32_t bi = QubitSubset::bit_of(n, i);
        const std::uint32_t bj = QubitSubset::bit_of(n, j);
        for (std::uint32_t s = 0; s < dim; ++s) {
            const int zi = (s & bi) ? -1 : 1;
            const int zj = (s & bj) ? -1 : 1;
            // sz sz and field are diagonal.
            h(s, s) -= spec.jz * zi * zj + spec.h * zi;
            // sx sx and sy sy both flip bits i and j.
            // sy|b> = i (-1)^b |1-b>, so sy sy picks up -(-1)^(b_i + b_j) = -zi*zj.
            const std::uint32_t t = s ^ bi ^ bj;
            h(t, s) -= spec.jx - spec.jy * zi * zj;
        }
    }
    return h;
}

/// H_XXZ = -1/2 sum (sx sx + sy sy + delta sz sz): Jx = Jy = 1/2, Jz = delta/2, h = 0.
inline ComplexMatrix build_xxz(int num_spins, double delta) {
    return build_hamiltonian({num_spins, 0.5, 0.5, delta / 2.0, 0.0, true});
}

/// Two independent XXZ rings: anisotropy `delta` on qubits 0..n-1 and
/// `lambda` on qubits n..2n-1.
inline ComplexMatrix build_double_xxz(int spins_per_chain, double delta, double lambda) {
    if (2 * spins_per_chain > 12) throw Error(ErrorKind::TooLarge, "double chain limited to 12 qubits");
    const ComplexMatrix a = build_xxz(spins_per_chain, delta);
    const ComplexMatrix b = build_xxz(spins_per_chain, lambda);
    const auto d = a.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    return kron(a, id) + kron(id, b);
}

/// H_Ising = - sum (sx sx + lambda sz): Jx = 1, Jy = Jz = 0, h = lambda.
inline ComplexMatrix build_ising(int num_spins, double lambda) {
    return build_hamiltonian({num_spins, 1.0, 0.0, 0.0, lambda, true});
}

// ---------------------------------------------------------------------------
// Ground states

enum class DegeneracyMode { subspace_mixture, first_vector };

struct GroundStatePolicy {
    DegeneracyMode mode = DegeneracyMode::subspace_mixture;
    double degeneracy_rtol = 1e-9;  // relative to the spectral span
};

struct GroundStateInfo {
    DensityOperator state;
    double energy;
    int degeneracy;  // eigenvalues within the tolerance of the minimum
    double gap;      // first eigenvalue above the ground manifold minus the minimum
};

/// Ground state with its degeneracy bookkeeping.
inline GroundStateInfo ground_state_info(const ComplexMatrix& h, const GroundStatePolicy& policy = {}) {
    if (!(policy.degeneracy_rtol > 0.0)) throw Error(ErrorKind::OutOfRange, "degeneracy_rtol must be > 0");
    const EigenSystem es = hermitian_eigensystem(h);
    const int n = static_cast<int>(std::countr_zero(static_cast<std::uint64_t>(h.rows())));
    const Eigen::Index dim = es.values.size();
    const double lo = es.values(0);
    const double span = es.values(dim - 1) - lo;
    const double cut = lo + policy.degeneracy_rtol * span;

    Eigen::Index rank = 0;
    while (rank < dim && es.values(rank) <= cut) ++rank;
    const double gap = rank < dim ? es.values(rank) - lo : 0.0;

    ComplexMatrix rho;
    if (policy.mode == DegeneracyMode::subspace_mixture) {
        const auto block = es.vectors.leftCols(rank);
        rho = block * block.adjoint() / static_cast<double>(rank);
    } else {
        ComplexVector v = es.vectors.col(0);
        Eigen::Index pivot = 0;
        v.cwiseAbs().maxCoeff(&pivot);
        v *= std::conj(v(pivot)) / std::abs(v(pivot));
        rho = v * v.adjoint();
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return {DensityOperator::trusted(n, std::move(rho)), lo, static_cast<int>(rank), gap};
}

inline DensityOperator ground_state(const ComplexMatrix& h, const GroundStatePolicy& policy = {}) {
    return ground_state_info(h, policy).state;
}

}  // namespace qcorr
