#include "ccsim/delivery.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ccsim/partition.hpp"

namespace ccsim {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::SC:
            return "sc";
        case Scheme::A:
            return "a";
        case Scheme::B:
            return "b";
        case Scheme::Hybrid:
            return "hybrid";
    }
    return "?";
}

int64_t Transcript::total_bits() const {
    int64_t sum = 0;
    for (const auto& m : messages) sum += m.length;
    return sum;
}

namespace {

// Content readable only at cached positions. Decoders go through this so
// they cannot touch library bits the node never stored.
struct CacheView {
    const BitVector* cached;
    const BitVector* content;
    bool bit(int64_t b) const {
        if (!cached->test(b))
            throw InvariantViolation("cache view read outside the cached set");
        return content->test(b);
    }
};

struct KnownBits {
    BitVector have, value;
    explicit KnownBits(int64_t n) : have(n), value(n) {}
};

// All nonempty subsets of [0, n): popcount ascending, numeric ascending
// within one popcount (Gosper's hack).
template <typename F>
void for_each_subset(int n, F&& f) {
    for (int s = 1; s <= n; ++s) {
        uint64_t mask = (uint64_t{1} << s) - 1;
        const uint64_t limit = uint64_t{1} << n;
        while (mask < limit) {
            f(static_cast<uint32_t>(mask));
            uint64_t c = mask & (~mask + 1);
            uint64_t r = mask + c;
            if (r >= limit) break;
            mask = r | (((mask ^ r) >> 2) / c);
        }
    }
}

int demand_of(const ValidatedConfig& cfg, const std::vector<int>& demands, int i, int j) {
    return demands[static_cast<size_t>(user_flat(cfg, i, j))];
}

using PartMap = std::map<int, SubfilePartition>;  // demanded file -> partition

PartMap partition_demanded(const ValidatedConfig& cfg, const CacheAllocation& alloc,
                           const std::vector<int>& files,
                           std::span<const NodeId> family) {
    PartMap parts;
    for (int d : files)
        if (!parts.count(d)) parts.emplace(d, partition(cfg, alloc, d, family));
    return parts;
}

void xor_content(BitVector& payload, const BitVector& content,
                 const std::vector<uint32_t>& idx) {
    for (size_t t = 0; t < idx.size(); ++t)
        if (content.test(idx[t])) payload.flip(static_cast<int64_t>(t));
}

//==========================================================================
// Two-layer engine (schemes S&C and A)
//==========================================================================

// Bits helper i contributes to first-layer message (mask, j): its class
// V_{d(i,j), mask\{i}} over the helper family, minus the bits user (i,j)
// already caches when stripping (the S&C pruning).
std::vector<uint32_t> layer1_list(const ValidatedConfig& cfg, const CacheAllocation& alloc,
                                  const PartMap& parts, const std::vector<int>& demands,
                                  uint32_t mask, int i, int j, bool strip) {
    int d = demand_of(cfg, demands, i, j);
    const SubfilePartition& part = parts.at(d);
    uint32_t cls_mask = mask & ~(uint32_t{1} << (i - 1));
    if (!strip) return part.bits(cls_mask);
    return split_by_pivot(cfg, part, cls_mask, NodeId::user(i, j), alloc).out_part;
}

std::vector<Message> two_layer_server(const ValidatedConfig& cfg,
                                      const CacheAllocation& alloc,
                                      const std::vector<BitVector>& content,
                                      const std::vector<int>& demands,
                                      const PartMap& parts, bool strip, int tag) {
    std::vector<Message> msgs;
    for_each_subset(cfg.k1(), [&](uint32_t mask) {
        for (int j = 1; j <= cfg.k2(); ++j) {
            std::vector<std::pair<int, std::vector<uint32_t>>> lists;
            int64_t len = 0;
            for (int i = 1; i <= cfg.k1(); ++i) {
                if (!((mask >> (i - 1)) & 1u)) continue;
                lists.emplace_back(i, layer1_list(cfg, alloc, parts, demands, mask, i, j, strip));
                len = std::max(len, static_cast<int64_t>(lists.back().second.size()));
            }
            if (len == 0) continue;
            Message m{Message::Layer::ServerLink, 0, tag, mask, j, len, BitVector(len)};
            for (const auto& [i, idx] : lists)
                xor_content(m.payload, content[static_cast<size_t>(
                                           demand_of(cfg, demands, i, j) - 1)],
                            idx);
            msgs.push_back(std::move(m));
        }
    });
    return msgs;
}

// Helper i's first-layer recovery: cancel the other participants out of each
// XOR with bits from its own cache, keeping its missing subfile parts.
std::vector<KnownBits> helper_recover(const ValidatedConfig& cfg,
                                      const CacheAllocation& alloc,
                                      const std::vector<BitVector>& content,
                                      const std::vector<int>& demands, const PartMap& parts,
                                      bool strip, int i,
                                      const std::vector<Message>& server_msgs) {
    std::vector<KnownBits> known(static_cast<size_t>(cfg.k2()),
                                 KnownBits(alloc.file_bits));
    for (const Message& m : server_msgs) {
        if (!((m.subset_mask >> (i - 1)) & 1u)) continue;
        BitVector residual = m.payload;
        for (int i2 = 1; i2 <= cfg.k1(); ++i2) {
            if (i2 == i || !((m.subset_mask >> (i2 - 1)) & 1u)) continue;
            auto idx = layer1_list(cfg, alloc, parts, demands, m.subset_mask, i2, m.j, strip);
            int d2 = demand_of(cfg, demands, i2, m.j);
            // bits of V_{d2, mask\{i2}} are cached at every helper in mask\{i2},
            // in particular at helper i
            CacheView view{&alloc.helper_bits[static_cast<size_t>(i - 1)]
                                             [static_cast<size_t>(d2 - 1)],
                           &content[static_cast<size_t>(d2 - 1)]};
            for (size_t t = 0; t < idx.size(); ++t)
                if (view.bit(idx[t])) residual.flip(static_cast<int64_t>(t));
        }
        auto own = layer1_list(cfg, alloc, parts, demands, m.subset_mask, i, m.j, strip);
        KnownBits& k = known[static_cast<size_t>(m.j - 1)];
        for (size_t t = 0; t < own.size(); ++t) {
            k.have.set(own[t]);
            k.value.set(own[t], residual.test(static_cast<int64_t>(t)));
        }
    }
    return known;
}

std::vector<Message> two_layer_helper(const ValidatedConfig& cfg,
                                      const CacheAllocation& alloc,
                                      const std::vector<BitVector>& content,
                                      const std::vector<int>& demands, int i,
                                      const std::vector<KnownBits>& known, int tag) {
    std::vector<NodeId> family;
    std::vector<int> row_files;
    for (int j = 1; j <= cfg.k2(); ++j) {
        family.push_back(NodeId::user(i, j));
        row_files.push_back(demand_of(cfg, demands, i, j));
    }
    PartMap uparts = partition_demanded(cfg, alloc, row_files, family);

    std::vector<Message> msgs;
    for_each_subset(cfg.k2(), [&](uint32_t umask) {
        std::vector<std::pair<int, const std::vector<uint32_t>*>> lists;
        int64_t len = 0;
        for (int j = 1; j <= cfg.k2(); ++j) {
            if (!((umask >> (j - 1)) & 1u)) continue;
            int d = demand_of(cfg, demands, i, j);
            const auto& cls = uparts.at(d).bits(umask & ~(uint32_t{1} << (j - 1)));
            lists.emplace_back(j, &cls);
            len = std::max(len, static_cast<int64_t>(cls.size()));
        }
        if (len == 0) return;
        Message m{Message::Layer::HelperLink, i, tag, umask, 0, len, BitVector(len)};
        for (const auto& [j, cls] : lists) {
            int d = demand_of(cfg, demands, i, j);
            const BitVector& hcache =
                alloc.helper_bits[static_cast<size_t>(i - 1)][static_cast<size_t>(d - 1)];
            CacheView hview{&hcache, &content[static_cast<size_t>(d - 1)]};
            const KnownBits& k = known[static_cast<size_t>(j - 1)];
            for (size_t t = 0; t < cls->size(); ++t) {
                uint32_t b = (*cls)[t];
                bool v;
                if (hcache.test(b))
                    v = hview.bit(b);
                else if (k.have.test(b))
                    v = k.value.test(b);
                else
                    throw HelperMissingBits(
                        "helper " + std::to_string(i) + " owns neither cached nor " +
                        "recovered content for file " + std::to_string(d) + " bit " +
                        std::to_string(b));
                if (v) m.payload.flip(static_cast<int64_t>(t));
            }
        }
        msgs.push_back(std::move(m));
    });
    return msgs;
}

BitVector two_layer_decode(const ValidatedConfig& cfg, const CacheAllocation& alloc,
                           const std::vector<BitVector>& content,
                           const std::vector<int>& demands, int i, int j,
                           const std::vector<Message>& helper_msgs, int tag) {
    int d = demand_of(cfg, demands, i, j);
    size_t flat = static_cast<size_t>(user_flat(cfg, i, j));
    BitVector out(alloc.file_bits);

    const BitVector& own_cache = alloc.user_bits[flat][static_cast<size_t>(d - 1)];
    CacheView own{&own_cache, &content[static_cast<size_t>(d - 1)]};
    for (uint32_t b : own_cache.set_indices()) out.set(b, own.bit(b));

    std::vector<NodeId> family;
    std::vector<int> row_files;
    for (int j2 = 1; j2 <= cfg.k2(); ++j2) {
        family.push_back(NodeId::user(i, j2));
        row_files.push_back(demand_of(cfg, demands, i, j2));
    }
    PartMap uparts = partition_demanded(cfg, alloc, row_files, family);

    for (const Message& m : helper_msgs) {
        if (m.subsystem != tag || m.helper != i) continue;
        if (!((m.subset_mask >> (j - 1)) & 1u)) continue;
        BitVector residual = m.payload;
        for (int j2 = 1; j2 <= cfg.k2(); ++j2) {
            if (j2 == j || !((m.subset_mask >> (j2 - 1)) & 1u)) continue;
            int d2 = demand_of(cfg, demands, i, j2);
            const auto& cls2 = uparts.at(d2).bits(m.subset_mask & ~(uint32_t{1} << (j2 - 1)));
            // user (i,j) caches every bit of V_{d2, S\{j2}} since j is in S\{j2}
            CacheView view{&alloc.user_bits[flat][static_cast<size_t>(d2 - 1)],
                           &content[static_cast<size_t>(d2 - 1)]};
            size_t limit = std::min(cls2.size(), static_cast<size_t>(m.length));
            for (size_t t = 0; t < limit; ++t)
                if (view.bit(cls2[t])) residual.flip(static_cast<int64_t>(t));
        }
        const auto& cls = uparts.at(d).bits(m.subset_mask & ~(uint32_t{1} << (j - 1)));
        for (size_t t = 0; t < cls.size(); ++t)
            out.set(cls[t], residual.test(static_cast<int64_t>(t)));
    }
    return out;
}

//==========================================================================
// Cross-layer engine (scheme B)
//==========================================================================

std::vector<NodeId> all_users(const ValidatedConfig& cfg) {
    std::vector<NodeId> family;
    for (int i = 1; i <= cfg.k1(); ++i)
        for (int j = 1; j <= cfg.k2(); ++j) family.push_back(NodeId::user(i, j));
    return family;
}

std::vector<Message> cross_layer_server(const ValidatedConfig& cfg,
                                        const std::vector<BitVector>& content,
                                        const std::vector<int>& demands,
                                        const PartMap& gparts, int tag) {
    std::vector<Message> msgs;
    for_each_subset(cfg.users(), [&](uint32_t mask) {
        std::vector<std::pair<int, const std::vector<uint32_t>*>> lists;
        int64_t len = 0;
        for (int u = 0; u < cfg.users(); ++u) {
            if (!((mask >> u) & 1u)) continue;
            int d = demands[static_cast<size_t>(u)];
            const auto& cls = gparts.at(d).bits(mask & ~(uint32_t{1} << u));
            lists.emplace_back(u, &cls);
            len = std::max(len, static_cast<int64_t>(cls.size()));
        }
        if (len == 0) return;
        Message m{Message::Layer::ServerLink, 0, tag, mask, 0, len, BitVector(len)};
        for (const auto& [u, cls] : lists)
            xor_content(m.payload,
                        content[static_cast<size_t>(demands[static_cast<size_t>(u)] - 1)],
                        *cls);
        msgs.push_back(std::move(m));
    });
    return msgs;
}

// Helper i forwards each server message truncated to the longest subfile of
// its attached participants; messages serving none of them are dropped.
std::vector<Message> cross_layer_forward(const ValidatedConfig& cfg,
                                         const std::vector<int>& demands,
                                         const PartMap& gparts, int i,
                                         const std::vector<Message>& server_msgs, int tag) {
    uint32_t attached = ((uint32_t{1} << cfg.k2()) - 1) << ((i - 1) * cfg.k2());
    std::vector<Message> msgs;
    for (const Message& m : server_msgs) {
        uint32_t mine = m.subset_mask & attached;
        if (!mine) continue;
        int64_t fwd = 0;
        for (int u = 0; u < cfg.users(); ++u) {
            if (!((mine >> u) & 1u)) continue;
            int d = demands[static_cast<size_t>(u)];
            fwd = std::max(fwd, static_cast<int64_t>(
                                    gparts.at(d).bits(m.subset_mask & ~(uint32_t{1} << u))
                                        .size()));
        }
        if (fwd == 0) continue;
        msgs.push_back({Message::Layer::HelperLink, i, tag, m.subset_mask, 0, fwd,
                        m.payload.slice(0, fwd)});
    }
    return msgs;
}

BitVector cross_layer_decode(const ValidatedConfig& cfg, const CacheAllocation& alloc,
                             const std::vector<BitVector>& content,
                             const std::vector<int>& demands, int i, int j,
                             const std::vector<Message>& helper_msgs, int tag) {
    int u0 = user_flat(cfg, i, j);
    int d = demands[static_cast<size_t>(u0)];
    BitVector out(alloc.file_bits);

    const BitVector& own_cache =
        alloc.user_bits[static_cast<size_t>(u0)][static_cast<size_t>(d - 1)];
    CacheView own{&own_cache, &content[static_cast<size_t>(d - 1)]};
    for (uint32_t b : own_cache.set_indices()) out.set(b, own.bit(b));

    auto family = all_users(cfg);
    PartMap gparts = partition_demanded(cfg, alloc, demands, family);

    for (const Message& m : helper_msgs) {
        if (m.subsystem != tag || m.helper != i) continue;
        if (!((m.subset_mask >> u0) & 1u)) continue;
        BitVector residual = m.payload;
        for (int u2 = 0; u2 < cfg.users(); ++u2) {
            if (u2 == u0 || !((m.subset_mask >> u2) & 1u)) continue;
            int d2 = demands[static_cast<size_t>(u2)];
            const auto& cls2 = gparts.at(d2).bits(m.subset_mask & ~(uint32_t{1} << u2));
            CacheView view{
                &alloc.user_bits[static_cast<size_t>(u0)][static_cast<size_t>(d2 - 1)],
                &content[static_cast<size_t>(d2 - 1)]};
            size_t limit = std::min(cls2.size(), static_cast<size_t>(m.length));
            for (size_t t = 0; t < limit; ++t)
                if (view.bit(cls2[t])) residual.flip(static_cast<int64_t>(t));
        }
        const auto& cls = gparts.at(d).bits(m.subset_mask & ~(uint32_t{1} << u0));
        for (size_t t = 0; t < cls.size(); ++t)
            out.set(cls[t], residual.test(static_cast<int64_t>(t)));
    }
    return out;
}

//==========================================================================
// Assembly
//==========================================================================

struct EngineResult {
    std::vector<Message> server;
    std::vector<std::vector<Message>> helper;
};

EngineResult run_engine(const ValidatedConfig& cfg, const SubsystemRun& part,
                        const std::vector<int>& demands) {
    EngineResult res;
    res.helper.resize(static_cast<size_t>(cfg.k1()));
    if (part.alloc.file_bits == 0) return res;

    if (part.scheme == Scheme::B) {
        auto family = all_users(cfg);
        PartMap gparts = partition_demanded(cfg, part.alloc, demands, family);
        res.server = cross_layer_server(cfg, part.content, demands, gparts, part.tag);
        for (int i = 1; i <= cfg.k1(); ++i)
            res.helper[static_cast<size_t>(i - 1)] =
                cross_layer_forward(cfg, demands, gparts, i, res.server, part.tag);
        return res;
    }

    bool strip = part.scheme == Scheme::SC;
    std::vector<NodeId> helpers;
    for (int i = 1; i <= cfg.k1(); ++i) helpers.push_back(NodeId::helper(i));
    PartMap parts = partition_demanded(cfg, part.alloc, demands, helpers);
    res.server = two_layer_server(cfg, part.alloc, part.content, demands, parts, strip,
                                  part.tag);
    for (int i = 1; i <= cfg.k1(); ++i) {
        auto known = helper_recover(cfg, part.alloc, part.content, demands, parts, strip, i,
                                    res.server);
        res.helper[static_cast<size_t>(i - 1)] =
            two_layer_helper(cfg, part.alloc, part.content, demands, i, known, part.tag);
    }
    return res;
}

// Decode one subsystem window for user (i, j).
BitVector decode_window(const ValidatedConfig& cfg, const SubsystemRun& part,
                        const std::vector<int>& demands, int i, int j,
                        const std::vector<Message>& helper_msgs) {
    if (part.alloc.file_bits == 0) return BitVector(0);
    if (part.scheme == Scheme::B)
        return cross_layer_decode(cfg, part.alloc, part.content, demands, i, j, helper_msgs,
                                  part.tag);
    return two_layer_decode(cfg, part.alloc, part.content, demands, i, j, helper_msgs,
                            part.tag);
}

DeliveryOutcome assemble(const ValidatedConfig& cfg, const SimulationConfig& sim,
                         Scheme scheme, std::shared_ptr<DeliveryContext> ctx) {
    DeliveryOutcome out;
    out.scheme = scheme;
    out.config = cfg.config();
    out.sim = sim;
    out.helper.resize(static_cast<size_t>(cfg.k1()));
    out.context = ctx;

    for (const SubsystemRun& part : ctx->parts) {
        EngineResult res = run_engine(cfg, part, sim.demands);
        for (auto& m : res.server) out.server.messages.push_back(std::move(m));
        for (int i = 0; i < cfg.k1(); ++i)
            for (auto& m : res.helper[static_cast<size_t>(i)])
                out.helper[static_cast<size_t>(i)].messages.push_back(std::move(m));
    }

    double f = static_cast<double>(sim.file_bits);
    out.measured.r1 = static_cast<double>(out.server.total_bits()) / f;
    int64_t worst = 0;
    for (const auto& t : out.helper) worst = std::max(worst, t.total_bits());
    out.measured.r2 = static_cast<double>(worst) / f;

    // decode everyone and verify against the library
    for (int i = 1; i <= cfg.k1(); ++i) {
        for (int j = 1; j <= cfg.k2(); ++j) {
            BitVector got = decode_user(out, i, j);
            int d = demand_of(cfg, sim.demands, i, j);
            for (const SubsystemRun& part : ctx->parts) {
                const BitVector& want = part.content[static_cast<size_t>(d - 1)];
                for (int64_t b = 0; b < part.alloc.file_bits; ++b) {
                    int64_t full = part.alloc.bit_offset + b;
                    if (got.test(full) != want.test(b))
                        throw DecodeFailure("user " + NodeId::user(i, j).str() +
                                                " decoded file " + std::to_string(d) +
                                                " incorrectly",
                                            full);
                }
            }
            out.decoded.push_back(std::move(got));
        }
    }
    return out;
}

std::shared_ptr<DeliveryContext> single_context(const ValidatedConfig& cfg,
                                                const SimulationConfig& sim, Scheme scheme,
                                                const CacheAllocation& alloc) {
    validate_sim(cfg, sim);
    if (alloc.file_bits != sim.file_bits || alloc.files != cfg.n())
        throw ConfigError("allocation shape does not match the simulation config");
    auto ctx = std::make_shared<DeliveryContext>();
    ctx->parts.push_back({scheme, 0, alloc, library_content(cfg, sim)});
    return ctx;
}

}  // namespace

DeliveryOutcome deliver_sc(const ValidatedConfig& cfg, const SimulationConfig& sim,
                           const CacheAllocation& alloc) {
    return assemble(cfg, sim, Scheme::SC, single_context(cfg, sim, Scheme::SC, alloc));
}

DeliveryOutcome deliver_scheme_a(const ValidatedConfig& cfg, const SimulationConfig& sim,
                                 const CacheAllocation& alloc) {
    return assemble(cfg, sim, Scheme::A, single_context(cfg, sim, Scheme::A, alloc));
}

DeliveryOutcome deliver_scheme_b(const ValidatedConfig& cfg, const SimulationConfig& sim,
                                 const CacheAllocation& alloc) {
    return assemble(cfg, sim, Scheme::B, single_context(cfg, sim, Scheme::B, alloc));
}

HybridAllocation place_hybrid(const ValidatedConfig& cfg, const SimulationConfig& sim,
                              double alpha, double beta) {
    validate_sim(cfg, sim);
    if (!std::isfinite(alpha) || alpha < 0 || alpha > 1 || !std::isfinite(beta) ||
        beta < 0 || beta > 1)
        throw InvalidShare("alpha and beta must lie in [0, 1]");

    HybridAllocation h;
    h.alpha = alpha;
    h.beta = beta;
    h.part1_bits = static_cast<int64_t>(
        std::floor(alpha * static_cast<double>(sim.file_bits)));
    int64_t part2 = sim.file_bits - h.part1_bits;
    h.subsystem1 = place_window(cfg, sim.seed, h.part1_bits, 0,
                                cache_quota(cfg.m1(), sim.file_bits, cfg.n()),
                                StreamTag::HelperCache,
                                cache_quota(beta * cfg.m2(), sim.file_bits, cfg.n()),
                                StreamTag::UserCache);
    h.subsystem2 = place_window(cfg, sim.seed, part2, h.part1_bits, 0,
                                StreamTag::HelperCache,
                                cache_quota((1.0 - beta) * cfg.m2(), sim.file_bits, cfg.n()),
                                StreamTag::UserCacheAux);
    return h;
}

DeliveryOutcome deliver_hybrid(const ValidatedConfig& cfg, const SimulationConfig& sim,
                               const HybridAllocation& halloc, double alpha, double beta) {
    validate_sim(cfg, sim);
    if (halloc.alpha != alpha || halloc.beta != beta)
        throw InvalidShare("hybrid allocation was placed for different (alpha, beta)");
    int64_t f1 = halloc.part1_bits;
    if (halloc.subsystem1.file_bits != f1 ||
        halloc.subsystem2.file_bits != sim.file_bits - f1 ||
        halloc.subsystem2.bit_offset != f1)
        throw ConfigError("hybrid allocation windows do not match the simulation config");

    auto lib = library_content(cfg, sim);
    std::vector<BitVector> part1, part2;
    for (const auto& fc : lib) {
        part1.push_back(fc.slice(0, f1));
        part2.push_back(fc.slice(f1, sim.file_bits - f1));
    }
    auto ctx = std::make_shared<DeliveryContext>();
    ctx->parts.push_back({Scheme::SC, 1, halloc.subsystem1, std::move(part1)});
    ctx->parts.push_back({Scheme::B, 2, halloc.subsystem2, std::move(part2)});
    return assemble(cfg, sim, Scheme::Hybrid, ctx);
}

BitVector decode_user(const DeliveryOutcome& out, int i, int j) {
    ValidatedConfig cfg = ValidatedConfig::validate(out.config);
    if (i < 1 || i > cfg.k1() || j < 1 || j > cfg.k2())
        throw UnknownNode("no such user U" + std::to_string(i) + "," + std::to_string(j));
    const auto& helper_msgs = out.helper[static_cast<size_t>(i - 1)].messages;

    BitVector result(out.sim.file_bits);
    for (const SubsystemRun& part : out.context->parts) {
        BitVector window = decode_window(cfg, part, out.sim.demands, i, j, helper_msgs);
        for (int64_t b = 0; b < window.size(); ++b)
            result.set(part.alloc.bit_offset + b, window.test(b));
    }
    return result;
}

}  // namespace ccsim
