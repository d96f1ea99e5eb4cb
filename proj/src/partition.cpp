#include "ccsim/partition.hpp"

#include <algorithm>

namespace ccsim {

const std::vector<uint32_t>& SubfilePartition::bits(uint32_t mask) const {
    static const std::vector<uint32_t> kEmpty;
    auto it = classes.find(mask);
    return it == classes.end() ? kEmpty : it->second;
}

SubfilePartition partition(const ValidatedConfig& cfg, const CacheAllocation& alloc,
                           int file, std::span<const NodeId> family) {
    if (family.empty()) throw ConfigError("partition family must be non-empty");
    if (family.size() > 24) throw ConfigError("partition family larger than 24 nodes");
    for (size_t a = 0; a < family.size(); ++a)
        for (size_t b = a + 1; b < family.size(); ++b)
            if (family[a] == family[b])
                throw ConfigError("partition family has duplicate node " + family[a].str());

    SubfilePartition out;
    out.file = file;
    out.family.assign(family.begin(), family.end());

    std::vector<const BitVector*> caches;
    caches.reserve(family.size());
    for (const NodeId& node : family) caches.push_back(&alloc.cache_of(cfg, node, file));

    for (int64_t b = 0; b < alloc.file_bits; ++b) {
        uint32_t mask = 0;
        for (size_t k = 0; k < caches.size(); ++k)
            mask |= static_cast<uint32_t>(caches[k]->test(b)) << k;
        out.classes[mask].push_back(static_cast<uint32_t>(b));
    }
    return out;
}

SubfileSplit split_by_pivot(const ValidatedConfig& cfg, const SubfilePartition& part,
                            uint32_t class_mask, NodeId pivot,
                            const CacheAllocation& alloc) {
    if (std::find(part.family.begin(), part.family.end(), pivot) != part.family.end())
        throw PivotInFamily("pivot " + pivot.str() + " belongs to the partition family");

    const BitVector& pivot_cache = alloc.cache_of(cfg, pivot, part.file);
    SubfileSplit split;
    for (uint32_t b : part.bits(class_mask)) {
        if (pivot_cache.test(b))
            split.in_part.push_back(b);
        else
            split.out_part.push_back(b);
    }
    return split;
}

}  // namespace ccsim
