#pragma once

#include <map>
#include <span>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/placement.hpp"

namespace ccsim {

// Grouping of one file's bits by the exact subset of a node family caching
// each bit. Subsets are bitmasks over the ordered family (bit k = family[k]);
// only non-empty classes are stored, and bit lists stay sorted so payload
// extraction is canonical.
struct SubfilePartition {
    int file = 0;  // 1-based
    std::vector<NodeId> family;
    std::map<uint32_t, std::vector<uint32_t>> classes;

    // Bit list of one subset; empty classes come back as an empty list.
    const std::vector<uint32_t>& bits(uint32_t mask) const;
};

// Classifies every bit of `file` by which family members cache it. Family
// must be non-empty, distinct, and within topology bounds (at most 24 nodes,
// so class keys fit a 32-bit mask).
SubfilePartition partition(const ValidatedConfig&, const CacheAllocation&, int file,
                           std::span<const NodeId> family);

// One partition class split by membership in a pivot node's cache.
struct SubfileSplit {
    std::vector<uint32_t> in_part;   // cached at the pivot
    std::vector<uint32_t> out_part;  // not cached at the pivot
};

// Pivot must not belong to the partition's family.
SubfileSplit split_by_pivot(const ValidatedConfig&, const SubfilePartition&,
                            uint32_t class_mask, NodeId pivot, const CacheAllocation&);

}  // namespace ccsim
