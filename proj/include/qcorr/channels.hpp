#pragma once

// Single-qubit Kraus channels applied independently to selected qubits.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/state.hpp"

namespace qcorr {

inline constexpr double kTracePreservationTol = 1e-10;

/// rho -> sum_i E_i rho E_i^dagger on one qubit. Construction enforces
/// sum_i E_i^dagger E_i = I.
class KrausChannel {
public:
    KrausChannel(std::vector<ComplexMatrix> operators, std::string label)
        : operators_(std::move(operators)), label_(std::move(label)) {
        if (operators_.empty()) throw Error(ErrorKind::NotTracePreserving, label_ + ": no Kraus operators");
        ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
        for (const auto& e : operators_) {
            if (e.rows() != 2 || e.cols() != 2) {
                throw Error(ErrorKind::DimensionMismatch, label_ + ": Kraus operators must be 2x2");
            }
            if (!all_finite(e)) throw Error(ErrorKind::NotTracePreserving, label_ + ": non-finite entry");
            sum += e.adjoint() * e;
        }
        certificate_error_ = max_abs(sum - ComplexMatrix::Identity(2, 2));
        if (certificate_error_ > kTracePreservationTol) {
            throw Error(ErrorKind::NotTracePreserving,
                        label_ + ": |sum E^dagger E - I| = " + std::to_string(certificate_error_));
        }
    }

    const std::vector<ComplexMatrix>& operators() const { return operators_; }
    const std::string& label() const { return label_; }
    /// max |sum E^dagger E - I| measured at construction.
    double certificate_error() const { return certificate_error_; }

private:
    std::vector<ComplexMatrix> operators_;
    std::string label_;
    double certificate_error_ = 0.0;
};

namespace detail {

inline void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "p must lie in [0, 1]");
}

}  // namespace detail

/// E0 = [[1, 0], [0, sqrt(1-p)]], E1 = [[0, 0], [0, sqrt(p)]].
/// Both operators are diagonal, so this damps coherences without moving population.
inline KrausChannel paper_damping_channel(double p) {
    detail::require_probability(p);
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - p);
    e1(1, 1) = std::sqrt(p);
    return KrausChannel({std::move(e0), std::move(e1)}, "paper-damping");
}

/// Textbook amplitude damping: E0 = [[1, 0], [0, sqrt(1-p)]], E1 = [[0, sqrt(p)], [0, 0]].
inline KrausChannel standard_amplitude_damping(double p) {
    detail::require_probability(p);
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - p);
    e1(0, 1) = std::sqrt(p);
    return KrausChannel({std::move(e0), std::move(e1)}, "amplitude-damping");
}

inline KrausChannel identity_channel() {
    return KrausChannel({ComplexMatrix::Identity(2, 2)}, "identity");
}

/// Applies `channel` on every qubit in `qubits`. Disjoint supports commute,
/// so the order is irrelevant.
inline DensityOperator apply_channel_local(const DensityOperator& rho, const KrausChannel& channel,
                                           QubitSubset qubits) {
    const int n = rho.num_qubits();
    if (!qubits.within(n)) throw Error(ErrorKind::InvalidSubset, "channel target outside register");
    ComplexMatrix m = rho.matrix();
    for (int q : qubits.qubits(n)) {
        ComplexMatrix next = ComplexMatrix::Zero(m.rows(), m.cols());
        for (const auto& e : channel.operators()) next += detail::conjugate_on_qubit(m, e, n, q);
        m = std::move(next);
    }
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityOperator::trusted(n, std::move(m));
}

inline DensityOperator apply_channel_all(const DensityOperator& rho, const KrausChannel& channel) {
    return apply_channel_local(rho, channel, QubitSubset::full(rho.num_qubits()));
}

}  // namespace qcorr
