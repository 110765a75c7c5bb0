#pragma once

// Cumulative correlation measure:
//
//   C(rho) = min_k [ 2^(m-2) D(rho, rho_Ak x rho_Bk) + C(rho_Ak) + C(rho_Bk) ]
//
// over unordered bipartitions (A_k, B_k) of the m qubits of rho, with
// C = 0 on a single qubit and D the relative entropy, evaluated through the
// mutual-information identity D = S(A) + S(B) - S(AB).

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "qcorr/entropy.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// One subset of the minimizing bipartition tree. Leaves (single qubits)
/// have empty parts and no children.
struct CcmNode {
    QubitSubset subset;
    QubitSubset part_a;
    QubitSubset part_b;
    double distance_term = 0.0;  // 2^(m-2) * D, already weighted
    double value = 0.0;          // distance_term + left.value + right.value
    int left = -1;               // index into CcmReport::tree
    int right = -1;

    bool is_leaf() const { return left < 0; }
};

struct CcmStats {
    std::uint64_t subsets_evaluated = 0;
    std::uint64_t entropies_computed = 0;
    std::uint64_t cache_hits = 0;  // memoized child-value lookups
};

struct CcmReport {
    double value = 0.0;
    DistanceUnit unit = DistanceUnit::normalized;
    int num_qubits = 0;
    std::vector<CcmNode> tree;  // preorder, root at index 0
    CcmStats stats;

    const CcmNode& root() const { return tree.front(); }
};

/// 2^(m-2) as a double for m >= 2.
inline double ccm_weight(int subset_size) {
    return subset_size >= 2 ? static_cast<double>(std::uint64_t{1} << (subset_size - 2)) : 0.0;
}

namespace detail {

inline int append_tree(std::vector<CcmNode>& tree, std::uint32_t mask, const std::vector<std::uint32_t>& best_a,
                       const std::vector<double>& value, const std::vector<double>& distance) {
    const int index = static_cast<int>(tree.size());
    CcmNode node;
    node.subset = {mask};
    node.value = value[mask];
    tree.push_back(node);
    if (std::popcount(mask) >= 2) {
        const std::uint32_t a = best_a[mask];
        const std::uint32_t b = mask ^ a;
        const int left = append_tree(tree, a, best_a, value, distance);
        const int right = append_tree(tree, b, best_a, value, distance);
        CcmNode& self = tree[static_cast<std::size_t>(index)];
        self.part_a = {a};
        self.part_b = {b};
        self.distance_term = distance[mask];
        self.left = left;
        self.right = right;
    }
    return index;
}

}  // namespace detail

/// Memoized dynamic program over qubit subsets of the original register.
///
/// Every subset's reduced-state entropy is computed once (2^n
/// eigendecompositions); each bipartition term is then three entropy lookups
/// and two cached child values, O(3^n) in total. Bipartitions are
/// canonicalized so A holds the subset's lowest-index qubit. Among equal
/// costs the numerically smallest A mask wins.
inline CcmReport ccm(const DensityOperator& rho, DistanceUnit unit = DistanceUnit::normalized) {
    const int n = rho.num_qubits();
    const std::uint32_t full = QubitSubset::full(n).mask;
    const double factor = unit_factor(unit);

    CcmReport report;
    report.unit = unit;
    report.num_qubits = n;

    std::vector<std::uint32_t> order;
    order.reserve(full);
    for (int size = 1; size <= n; ++size) {
        for (std::uint32_t s = 1; s <= full; ++s) {
            if (std::popcount(s) == size) order.push_back(s);
        }
    }

    std::vector<double> entropy(std::size_t{full} + 1, 0.0);
    std::vector<double> value(std::size_t{full} + 1, 0.0);
    std::vector<double> distance(std::size_t{full} + 1, 0.0);
    std::vector<std::uint32_t> best_a(std::size_t{full} + 1, 0);

    for (std::uint32_t s : order) {
        const ComplexMatrix reduced =
            s == full ? rho.matrix() : detail::partial_trace_matrix(rho.matrix(), n, s);
        entropy[s] = entropy_of_matrix(reduced);
        ++report.stats.entropies_computed;
    }

    for (std::uint32_t s : order) {
        ++report.stats.subsets_evaluated;
        const int m = std::popcount(s);
        if (m == 1) continue;

        const std::uint32_t top = std::uint32_t{1} << (31 - std::countl_zero(s));
        const std::uint32_t rest = s ^ top;
        const double weight = ccm_weight(m) * factor;

        double best = std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        double arg_distance = 0.0;
        // Ascending submasks of `rest`, excluding `rest` itself (A would be all of s).
        std::uint32_t sub = 0;
        while (true) {
            if (sub == rest) break;
            const std::uint32_t a = top | sub;
            const std::uint32_t b = s ^ a;
            const double d = weight * (entropy[a] + entropy[b] - entropy[s]);
            const double cost = d + value[a] + value[b];
            report.stats.cache_hits += 2;
            if (arg == 0 || cost < best - 1e-12 * std::max(1.0, std::abs(best))) {
                best = cost;
                arg = a;
                arg_distance = d;
            }
            sub = (sub - rest) & rest;
        }
        value[s] = best;
        best_a[s] = arg;
        distance[s] = arg_distance;
    }

    report.value = value[full];
    detail::append_tree(report.tree, full, best_a, value, distance);
    return report;
}

/// Largest register `ccm_naive` accepts.
inline constexpr int kNaiveMaxQubits = 6;

namespace detail {

inline double ccm_naive_impl(const DensityOperator& rho, double factor) {
    const int n = rho.num_qubits();
    if (n == 1) return 0.0;
    const double s_whole = von_neumann_entropy(rho);
    const std::uint32_t full = QubitSubset::full(n).mask;
    const std::uint32_t top = QubitSubset::bit_of(n, 0);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t sub = 0; (top | sub) != full; ++sub) {
        const QubitSubset a{top | sub};
        const QubitSubset b = a.complement(n);
        const DensityOperator rho_a = partial_trace(rho, a);
        const DensityOperator rho_b = partial_trace(rho, b);
        const double d = ccm_weight(n) * factor *
                         (von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - s_whole);
        best = std::min(best, d + ccm_naive_impl(rho_a, factor) + ccm_naive_impl(rho_b, factor));
    }
    return best;
}

}  // namespace detail

/// Literal recursion with no caching; an independent check on `ccm`.
inline double ccm_naive(const DensityOperator& rho, DistanceUnit unit = DistanceUnit::normalized) {
    if (rho.num_qubits() > kNaiveMaxQubits) {
        throw Error(ErrorKind::TooLarge, "naive recursion limited to 6 qubits");
    }
    return detail::ccm_naive_impl(rho, unit_factor(unit));
}

/// Weighted distance term of one bipartition: 2^(n-2) * I(A:B).
inline double ccm_distance_term(const DensityOperator& rho, QubitSubset part_a,
                                DistanceUnit unit = DistanceUnit::normalized) {
    return ccm_weight(rho.num_qubits()) * mutual_information(rho, part_a, unit);
}

// ---------------------------------------------------------------------------
// GHZ closed form

/// C(GHZ_n) = F(1, n) = x_coefficient + d_coefficient * d, where d is the
/// distance between any reduced GHZ block and the product of its marginals.
struct GhzClosedForm {
    int n = 0;
    double d = 0.0;
    std::int64_t x_coefficient = 0;
    std::int64_t d_coefficient = 0;
    double value = 0.0;
};

namespace detail {

/// F(x, n) = x_coeff * x + d_coeff * d.
struct GhzLinear {
    std::int64_t x_coeff;
    std::int64_t d_coeff;
};

inline GhzLinear ghz_recursion(int n) {
    if (n == 2) return {1, 0};
    if (n == 3) return {2, 1};
    // Inner blocks are evaluated at x = d, so their whole value lands on d.
    const auto inner = [](int k) {
        const GhzLinear f = ghz_recursion(k);
        return f.x_coeff + f.d_coeff;
    };
    const std::int64_t lead = std::int64_t{1} << (n - 2);
    if (n % 2 == 0) return {lead, 2 * inner(n / 2)};
    return {lead, inner((n - 1) / 2) + inner((n + 1) / 2)};
}

}  // namespace detail

inline GhzClosedForm ghz_closed_form(int n, double d = 0.5) {
    if (n < 2) throw Error(ErrorKind::BadArity, "GHZ closed form needs n >= 2");
    if (n > 62) throw Error(ErrorKind::TooLarge, "GHZ closed form coefficients overflow");
    if (!(d >= 0.0) || !std::isfinite(d)) throw Error(ErrorKind::OutOfRange, "d must be finite and >= 0");
    const detail::GhzLinear f = detail::ghz_recursion(n);
    return {n, d, f.x_coeff, f.d_coeff,
            static_cast<double>(f.x_coeff) + static_cast<double>(f.d_coeff) * d};
}

}  // namespace qcorr
