#pragma once

// Dense multi-qubit states and the linear algebra they need.
//
// Basis convention: qubit 0 is the most significant bit of a basis index,
// so |101> on three qubits is index 5. Subset masks use the same
// positions: qubit q of an n-qubit register is bit (n - 1 - q).

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/error.hpp"

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

/// Largest register the dense carrier accepts.
inline constexpr int kMaxQubits = 14;

inline std::size_t dimension_of(int num_qubits) { return std::size_t{1} << num_qubits; }

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

// ---------------------------------------------------------------------------
// QubitSubset

/// A sub-register of an n-qubit register, stored as a bitmask in basis-index
/// positions (qubit 0 = bit n-1).
struct QubitSubset {
    std::uint32_t mask = 0;

    static QubitSubset from_qubits(int num_qubits, std::initializer_list<int> qubits) {
        return from_qubits(num_qubits, std::span<const int>(qubits.begin(), qubits.size()));
    }

    static QubitSubset from_qubits(int num_qubits, std::span<const int> qubits) {
        QubitSubset s;
        for (int q : qubits) {
            if (q < 0 || q >= num_qubits) {
                throw Error(ErrorKind::InvalidSubset,
                            "qubit " + std::to_string(q) + " outside register of " +
                                std::to_string(num_qubits));
            }
            s.mask |= bit_of(num_qubits, q);
        }
        return s;
    }

    static QubitSubset full(int num_qubits) {
        return {static_cast<std::uint32_t>(dimension_of(num_qubits) - 1)};
    }

    static constexpr std::uint32_t bit_of(int num_qubits, int qubit) {
        return std::uint32_t{1} << (num_qubits - 1 - qubit);
    }

    int size() const { return std::popcount(mask); }
    bool empty() const { return mask == 0; }
    bool contains(int num_qubits, int qubit) const { return (mask & bit_of(num_qubits, qubit)) != 0; }
    bool within(int num_qubits) const { return (mask & ~full(num_qubits).mask) == 0; }

    QubitSubset complement(int num_qubits) const { return {full(num_qubits).mask & ~mask}; }

    /// Member qubit indices in ascending order.
    std::vector<int> qubits(int num_qubits) const {
        std::vector<int> out;
        for (int q = 0; q < num_qubits; ++q) {
            if (contains(num_qubits, q)) out.push_back(q);
        }
        return out;
    }

    friend bool operator==(QubitSubset, QubitSubset) = default;
};

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (backed by Eigen's self-adjoint solver)

struct EigenSystem {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // orthonormal columns
};

namespace detail {

inline void require_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::NotHermitian, "matrix is not square");
    }
    const double err = hermiticity_error(m);
    if (!(err <= kHermitianTol)) {
        throw Error(ErrorKind::NotHermitian, "asymmetry " + std::to_string(err));
    }
}

}  // namespace detail

inline EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    detail::require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "self-adjoint eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    detail::require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "self-adjoint eigensolver did not converge");
    }
    return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// DensityOperator

/// Hermitian, unit-trace, positive semidefinite operator on n qubits.
class DensityOperator {
public:
    /// Validates every invariant. Throws InvalidState on violation.
    static DensityOperator from_matrix(ComplexMatrix m) {
        if (m.rows() != m.cols() || m.rows() < 2 || !std::has_single_bit(static_cast<std::uint64_t>(m.rows()))) {
            throw Error(ErrorKind::InvalidState, "dimension must be a power of two >= 2");
        }
        const int n = std::countr_zero(static_cast<std::uint64_t>(m.rows()));
        if (n > kMaxQubits) throw Error(ErrorKind::TooLarge, "more than 14 qubits");
        if (!all_finite(m)) throw Error(ErrorKind::InvalidState, "non-finite entry");
        if (hermiticity_error(m) > kHermitianTol) throw Error(ErrorKind::InvalidState, "not Hermitian");
        if (std::abs(m.trace() - Complex(1.0)) > kTraceTol) {
            throw Error(ErrorKind::InvalidState, "trace is not 1");
        }
        const RealVector ev = hermitian_eigenvalues(m);
        if (ev.minCoeff() < -kPsdTol) {
            throw Error(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(ev.minCoeff()));
        }
        return DensityOperator(n, std::move(m));
    }

    /// For results of operations that preserve the invariants by construction.
    static DensityOperator trusted(int num_qubits, ComplexMatrix m) {
        return DensityOperator(num_qubits, std::move(m));
    }

    static DensityOperator maximally_mixed(int num_qubits) {
        const auto d = static_cast<Eigen::Index>(dimension_of(num_qubits));
        return DensityOperator(num_qubits, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
    }

    static DensityOperator basis_state(int num_qubits, std::size_t index) {
        const auto d = static_cast<Eigen::Index>(dimension_of(num_qubits));
        if (index >= static_cast<std::size_t>(d)) throw Error(ErrorKind::IndexOutOfRange, "basis index");
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
        return DensityOperator(num_qubits, std::move(m));
    }

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

    /// Eigenvalues with round-off negatives clamped to zero. Storage is untouched.
    RealVector clamped_spectrum() const {
        return hermitian_eigenvalues(matrix_).cwiseMax(0.0);
    }

private:
    DensityOperator(int n, ComplexMatrix m) : num_qubits_(n), matrix_(std::move(m)) {}

    int num_qubits_;
    ComplexMatrix matrix_;
};

// ---------------------------------------------------------------------------
// PureState

class PureState {
public:
    /// Normalizes `amplitudes`; throws ZeroVector for a null vector.
    static PureState normalized(int num_qubits, ComplexVector amplitudes) {
        if (static_cast<std::size_t>(amplitudes.size()) != dimension_of(num_qubits)) {
            throw Error(ErrorKind::DimensionMismatch, "amplitude count must be 2^n");
        }
        if (!all_finite(amplitudes)) throw Error(ErrorKind::InvalidState, "non-finite amplitude");
        const double norm = amplitudes.norm();
        if (!(norm > 0.0)) throw Error(ErrorKind::ZeroVector, "state vector has zero norm");
        amplitudes /= norm;
        return PureState(num_qubits, std::move(amplitudes));
    }

    /// Requires the squared norm to be within 1e-12 of one already.
    static PureState from_amplitudes(int num_qubits, ComplexVector amplitudes) {
        if (static_cast<std::size_t>(amplitudes.size()) != dimension_of(num_qubits)) {
            throw Error(ErrorKind::DimensionMismatch, "amplitude count must be 2^n");
        }
        if (!all_finite(amplitudes)) throw Error(ErrorKind::InvalidState, "non-finite amplitude");
        if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTol) {
            throw Error(ErrorKind::InvalidState, "squared norm differs from 1");
        }
        return PureState(num_qubits, std::move(amplitudes));
    }

    int num_qubits() const { return num_qubits_; }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    DensityOperator to_density() const {
        return DensityOperator::trusted(num_qubits_, amplitudes_ * amplitudes_.adjoint());
    }

private:
    PureState(int n, ComplexVector a) : num_qubits_(n), amplitudes_(std::move(a)) {}

    int num_qubits_;
    ComplexVector amplitudes_;
};

inline PureState make_state_from_kets(std::span<const std::pair<std::size_t, Complex>> terms,
                                      int num_qubits) {
    if (num_qubits < 1) throw Error(ErrorKind::InvalidState, "need at least one qubit");
    if (num_qubits > kMaxQubits) throw Error(ErrorKind::TooLarge, "more than 14 qubits");
    const std::size_t d = dimension_of(num_qubits);
    ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    for (const auto& [index, amplitude] : terms) {
        if (index >= d) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "basis index " + std::to_string(index) + " >= " + std::to_string(d));
        }
        amps(static_cast<Eigen::Index>(index)) += amplitude;
    }
    return PureState::normalized(num_qubits, std::move(amps));
}

inline PureState make_state_from_kets(std::initializer_list<std::pair<std::size_t, Complex>> terms,
                                      int num_qubits) {
    return make_state_from_kets(std::span(terms.begin(), terms.size()), num_qubits);
}

/// (|0...0> + |1...1>) / sqrt(2)
inline PureState make_ghz(int num_qubits) {
    if (num_qubits < 1) throw Error(ErrorKind::InvalidState, "need at least one qubit");
    const double a = std::sqrt(2.0) / 2.0;
    return make_state_from_kets({{0, a}, {dimension_of(num_qubits) - 1, a}}, num_qubits);
}

// ---------------------------------------------------------------------------
// Pauli matrices

inline ComplexMatrix pauli_x() { return (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished(); }
inline ComplexMatrix pauli_y() {
    return (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
}
inline ComplexMatrix pauli_z() { return (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished(); }

// ---------------------------------------------------------------------------
// Tensor products and partial traces

/// Kronecker product with `a` on the more significant positions.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
    if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
        throw Error(ErrorKind::TooLarge, "tensor product exceeds 14 qubits");
    }
    return DensityOperator::trusted(a.num_qubits() + b.num_qubits(), kron(a.matrix(), b.matrix()));
}

inline PureState tensor_product(const PureState& a, const PureState& b) {
    if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
        throw Error(ErrorKind::TooLarge, "tensor product exceeds 14 qubits");
    }
    ComplexVector v(a.amplitudes().size() * b.amplitudes().size());
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
    }
    return PureState::from_amplitudes(a.num_qubits() + b.num_qubits(), std::move(v));
}

namespace detail {

/// Scatter table: entry i is the full-register index whose bits at the
/// positions set in `mask` spell i (most significant first), all other bits 0.
inline std::vector<std::uint32_t> scatter_table(std::uint32_t mask) {
    std::vector<std::uint32_t> positions;  // low to high
    for (std::uint32_t m = mask; m != 0; m &= m - 1) positions.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
    std::vector<std::uint32_t> table(std::size_t{1} << positions.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        std::uint32_t full = 0;
        for (std::size_t b = 0; b < positions.size(); ++b) {
            if ((i >> b) & 1u) full |= std::uint32_t{1} << positions[b];
        }
        table[i] = full;
    }
    return table;
}

/// Partial trace of a raw matrix, keeping the qubits in `keep`.
inline ComplexMatrix partial_trace_matrix(const ComplexMatrix& rho, int num_qubits, std::uint32_t keep) {
    const std::uint32_t traced = QubitSubset::full(num_qubits).mask & ~keep;
    const auto kept_idx = scatter_table(keep);
    const auto traced_idx = scatter_table(traced);
    const auto dk = static_cast<Eigen::Index>(kept_idx.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index col = 0; col < dk; ++col) {
        for (Eigen::Index row = 0; row < dk; ++row) {
            Complex acc = 0.0;
            for (std::uint32_t t : traced_idx) {
                acc += rho(kept_idx[row] | t, kept_idx[col] | t);
            }
            out(row, col) = acc;
        }
    }
    return out;
}

/// m <- (U on qubit q) m
inline void apply_left(ComplexMatrix& m, const ComplexMatrix& u, int num_qubits, int qubit) {
    const Eigen::Index bit = Eigen::Index{1} << (num_qubits - 1 - qubit);
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r & bit) continue;
            const Complex x0 = m(r, c), x1 = m(r | bit, c);
            m(r, c) = u00 * x0 + u01 * x1;
            m(r | bit, c) = u10 * x0 + u11 * x1;
        }
    }
}

/// m <- m (U on qubit q)^dagger
inline void apply_right_adjoint(ComplexMatrix& m, const ComplexMatrix& u, int num_qubits, int qubit) {
    const Eigen::Index bit = Eigen::Index{1} << (num_qubits - 1 - qubit);
    const Complex c00 = std::conj(u(0, 0)), c01 = std::conj(u(0, 1));
    const Complex c10 = std::conj(u(1, 0)), c11 = std::conj(u(1, 1));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c & bit) continue;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const Complex x0 = m(r, c), x1 = m(r, c | bit);
            m(r, c) = x0 * c00 + x1 * c01;
            m(r, c | bit) = x0 * c10 + x1 * c11;
        }
    }
}

/// Returns (K on qubit q) m (K on qubit q)^dagger.
inline ComplexMatrix conjugate_on_qubit(const ComplexMatrix& m, const ComplexMatrix& k, int num_qubits,
                                        int qubit) {
    ComplexMatrix out = m;
    apply_left(out, k, num_qubits, qubit);
    apply_right_adjoint(out, k, num_qubits, qubit);
    return out;
}

}  // namespace detail

/// Reduced state on `keep`, qubits relabeled in ascending original order.
inline DensityOperator partial_trace(const DensityOperator& rho, QubitSubset keep) {
    if (keep.empty()) throw Error(ErrorKind::EmptySubset, "partial trace must keep at least one qubit");
    if (!keep.within(rho.num_qubits())) throw Error(ErrorKind::InvalidSubset, "subset outside register");
    if (keep == QubitSubset::full(rho.num_qubits())) return rho;
    return DensityOperator::trusted(keep.size(),
                                    detail::partial_trace_matrix(rho.matrix(), rho.num_qubits(), keep.mask));
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols()) return false;
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

/// (U_1 x ... x U_n) rho (U_1 x ... x U_n)^dagger, applied one factor at a time.
inline DensityOperator apply_local_unitary(const DensityOperator& rho, std::span<const ComplexMatrix> factors) {
    if (static_cast<int>(factors.size()) != rho.num_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "need one 2x2 factor per qubit");
    }
    ComplexMatrix m = rho.matrix();
    for (int q = 0; q < rho.num_qubits(); ++q) {
        const ComplexMatrix& u = factors[static_cast<std::size_t>(q)];
        if (u.rows() != 2 || !is_unitary(u)) {
            throw Error(ErrorKind::NotUnitary, "factor for qubit " + std::to_string(q));
        }
        detail::apply_left(m, u, rho.num_qubits(), q);
        detail::apply_right_adjoint(m, u, rho.num_qubits(), q);
    }
    return DensityOperator::trusted(rho.num_qubits(), std::move(m));
}

}  // namespace qcorr
