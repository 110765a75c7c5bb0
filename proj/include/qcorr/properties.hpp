#pragma once

// Seeded property checks for the correlation measure: nonnegativity,
// product states, local-unitary invariance, ancilla invariance, contractivity
// under local channels, additivity, GHZ growth, and DP/recursion agreement.
// Shared by the `qcorr check` command and the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/ccm.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

struct PropertyResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    double worst = 0.0;       // largest violation margin observed (<= 0 means none)
    double tolerance = 0.0;

    bool passed() const { return trials > 0 && failures == 0; }
};

namespace detail {

/// Random state on n qubits: pure for even trials, full-rank mixed for odd ones.
inline DensityOperator random_test_state(int num_qubits, int trial, Rng& rng) {
    return trial % 2 == 0 ? random_pure_state(num_qubits, rng).to_density() : random_density(num_qubits, rng);
}

inline void record(PropertyResult& r, double violation) {
    ++r.trials;
    r.worst = r.trials == 1 ? violation : std::max(r.worst, violation);
    if (violation > 0.0) ++r.failures;
}

/// Cycles n through 2..max_qubits.
inline int cycle_size(int trial, int max_qubits) { return 2 + trial % (max_qubits - 1); }

}  // namespace detail

inline PropertyResult check_nonnegativity(int trials, std::uint64_t seed, int max_qubits = 5) {
    PropertyResult r{"P1 nonnegativity", 0, 0, 0.0, 1e-9};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const double c = ccm(detail::random_test_state(detail::cycle_size(t, max_qubits), t, rng)).value;
        detail::record(r, -c - r.tolerance);
    }
    return r;
}

inline PropertyResult check_product_states(int trials, std::uint64_t seed, int max_qubits = 5) {
    PropertyResult r{"P2 product states", 0, 0, 0.0, 1e-8};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const double c = ccm(random_product_density(detail::cycle_size(t, max_qubits), rng)).value;
        detail::record(r, std::abs(c) - r.tolerance);
    }
    return r;
}

inline PropertyResult check_local_unitary_invariance(int trials, std::uint64_t seed, int max_qubits = 5) {
    PropertyResult r{"P3 local-unitary invariance", 0, 0, 0.0, 1e-7};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int n = detail::cycle_size(t, max_qubits);
        const DensityOperator rho = detail::random_test_state(n, t, rng);
        const auto factors = random_local_unitaries(n, rng);
        const double before = ccm(rho).value;
        const double after = ccm(apply_local_unitary(rho, factors)).value;
        detail::record(r, std::abs(after - before) - r.tolerance);
    }
    return r;
}

inline PropertyResult check_ancilla_invariance(int trials, std::uint64_t seed, int max_qubits = 5) {
    PropertyResult r{"P4 uncorrelated ancillas", 0, 0, 0.0, 1e-7};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + t % std::max(1, max_qubits - 2);       // system: 2 .. max-1
        const int k = 1 + (t / 3) % std::max(1, max_qubits - n);  // ancillas keep total <= max
        const DensityOperator rho = detail::random_test_state(n, t, rng);
        const DensityOperator ancilla = random_product_density(k, rng);
        const double diff = ccm(tensor_product(rho, ancilla)).value - ccm(rho).value;
        detail::record(r, std::abs(diff) - r.tolerance);
    }
    return r;
}

inline PropertyResult check_contractivity(int trials, std::uint64_t seed, int max_qubits = 5) {
    PropertyResult r{"P5 local channels do not increase", 0, 0, 0.0, 1e-7};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int n = detail::cycle_size(t, max_qubits);
        const DensityOperator rho = detail::random_test_state(n, t, rng);
        DensityOperator out = rho;
        for (int q = 0; q < n; ++q) {
            const KrausChannel channel(random_kraus_operators(1 + (t + q) % 3, rng), "random");
            out = apply_channel_local(out, channel, QubitSubset::from_qubits(n, {q}));
        }
        detail::record(r, ccm(out).value - ccm(rho).value - r.tolerance);
    }
    return r;
}

inline PropertyResult check_additivity(int trials, std::uint64_t seed, int max_qubits = 5) {
    PropertyResult r{"P6 additivity", 0, 0, 0.0, 1e-7};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int n1 = 1 + t % std::max(1, max_qubits - 2);
        const int n2 = 1 + (t / 2) % std::max(1, max_qubits - n1);
        const DensityOperator phi = detail::random_test_state(n1, t, rng);
        const DensityOperator psi = detail::random_test_state(n2, t + 1, rng);
        const double diff = ccm(tensor_product(phi, psi)).value - ccm(phi).value - ccm(psi).value;
        detail::record(r, std::abs(diff) - r.tolerance);
    }
    return r;
}

/// Strict growth of the GHZ closed form for n = 2 .. max_n.
inline PropertyResult check_ghz_growth(int max_n = 10) {
    PropertyResult r{"P7 GHZ growth with dimension", 0, 0, 0.0, 0.0};
    for (int n = 3; n <= max_n; ++n) {
        const double gain = ghz_closed_form(n).value - ghz_closed_form(n - 1).value;
        detail::record(r, gain > 0.0 ? -gain : 1.0);
    }
    return r;
}

/// Fixed corpus of states on at most 4 qubits: GHZ family, the worked
/// 4-qubit examples, Bell/product states and the dephased GHZ mixture.
inline std::vector<DensityOperator> small_state_corpus() {
    const double a = std::sqrt(2.0) / 2.0;
    std::vector<DensityOperator> out;
    for (int n = 1; n <= 4; ++n) out.push_back(make_ghz(n).to_density());
    out.push_back(make_state_from_kets({{0, 0.5}, {3, 0.5}, {12, 0.5}, {15, 0.5}}, 4).to_density());
    out.push_back(make_state_from_kets({{0, a}, {14, a}}, 4).to_density());
    out.push_back(make_state_from_kets({{0, 1.0}}, 3).to_density());
    out.push_back(make_state_from_kets({{1, a}, {2, -a}}, 2).to_density());
    out.push_back(make_state_from_kets({{0, 1.0}, {5, 1.0}, {6, Complex(0, 1)}}, 3).to_density());
    out.push_back(DensityOperator::maximally_mixed(3));
    for (int n = 2; n <= 4; ++n) {
        ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dimension_of(n)),
                                              static_cast<Eigen::Index>(dimension_of(n)));
        m(0, 0) = 0.5;
        m(m.rows() - 1, m.cols() - 1) = 0.5;
        out.push_back(DensityOperator::trusted(n, std::move(m)));
    }
    return out;
}

/// DP against the literal recursion on the corpus plus `random_five` seeded
/// random 5-qubit mixed states.
inline PropertyResult check_dp_matches_naive(int random_five, std::uint64_t seed) {
    PropertyResult r{"DP equals literal recursion", 0, 0, 0.0, 1e-9};
    for (const auto& rho : small_state_corpus()) {
        detail::record(r, std::abs(ccm(rho).value - ccm_naive(rho)) - r.tolerance);
    }
    Rng rng(seed);
    for (int n = 2; n <= 4; ++n) {
        for (int t = 0; t < 10; ++t) {
            const DensityOperator rho = detail::random_test_state(n, t, rng);
            detail::record(r, std::abs(ccm(rho).value - ccm_naive(rho)) - r.tolerance);
        }
    }
    for (int t = 0; t < random_five; ++t) {
        const DensityOperator rho = random_density(5, rng);
        detail::record(r, std::abs(ccm(rho).value - ccm_naive(rho)) - r.tolerance);
    }
    return r;
}

inline std::vector<PropertyResult> run_property_suite(int trials, std::uint64_t seed) {
    return {
        check_nonnegativity(trials, seed),
        check_product_states(trials, seed + 1),
        check_local_unitary_invariance(trials, seed + 2),
        check_ancilla_invariance(trials, seed + 3),
        check_contractivity(trials, seed + 4),
        check_additivity(trials, seed + 5),
        check_ghz_growth(10),
        check_dp_matches_naive(std::max(1, trials / 4), seed + 6),
    };
}

}  // namespace qcorr
