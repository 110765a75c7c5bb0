#pragma once

// JSON form of a CcmReport:
//
//   { "value": 5.0, "unit": "normalized", "num_qubits": 4,
//     "tree": { "mask": 15, "qubits": [0,1,2,3], "value": 5.0,
//               "mask_a": 12, "mask_b": 3, "distance_term": 4.0,
//               "left": {...}, "right": {...} },
//     "stats": { "subsets_evaluated": 15, "entropies_computed": 15, "cache_hits": 50 } }
//
// Leaf nodes carry only "mask", "qubits" and "value".

#include <json.hpp>

#include "qcorr/ccm.hpp"

namespace qcorr {

namespace detail {

inline nlohmann::json node_to_json(const CcmReport& report, int index) {
    const CcmNode& node = report.tree[static_cast<std::size_t>(index)];
    nlohmann::json j;
    j["mask"] = node.subset.mask;
    j["qubits"] = node.subset.qubits(report.num_qubits);
    j["value"] = node.value;
    if (!node.is_leaf()) {
        j["mask_a"] = node.part_a.mask;
        j["mask_b"] = node.part_b.mask;
        j["distance_term"] = node.distance_term;
        j["left"] = node_to_json(report, node.left);
        j["right"] = node_to_json(report, node.right);
    }
    return j;
}

}  // namespace detail

inline nlohmann::json to_json(const CcmReport& report) {
    nlohmann::json j;
    j["value"] = report.value;
    j["unit"] = std::string(to_string(report.unit));
    j["num_qubits"] = report.num_qubits;
    j["tree"] = detail::node_to_json(report, 0);
    j["stats"] = {{"subsets_evaluated", report.stats.subsets_evaluated},
                  {"entropies_computed", report.stats.entropies_computed},
                  {"cache_hits", report.stats.cache_hits}};
    return j;
}

}  // namespace qcorr
