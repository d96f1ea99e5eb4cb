#pragma once

#include <memory>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/placement.hpp"

namespace ccsim {

enum class Scheme { SC, A, B, Hybrid };

const char* scheme_name(Scheme);

// One coded message on one link. Payloads follow the zero-padding
// convention: length is the longest participant subfile, shorter
// contributions are padded with zeros.
struct Message {
    enum class Layer : uint8_t { ServerLink, HelperLink };
    Layer layer = Layer::ServerLink;
    int helper = 0;            // HelperLink: 1-based helper index
    int subsystem = 0;         // 0 whole system; 1 / 2 for the hybrid halves
    uint32_t subset_mask = 0;  // node subset this XOR serves, over the coding family
    int j = 0;                 // first-layer two-layer messages: user column, 1-based
    int64_t length = 0;        // bits
    BitVector payload;
};

struct Transcript {
    std::vector<Message> messages;
    int64_t total_bits() const;
};

// The hybrid's two placements: the S&C subsystem covers the first
// part1_bits of every file with helper and user caches, the cross-layer
// subsystem covers the remainder with user caches only.
struct HybridAllocation {
    double alpha = 1, beta = 1;
    int64_t part1_bits = 0;
    CacheAllocation subsystem1;
    CacheAllocation subsystem2;
};

HybridAllocation place_hybrid(const ValidatedConfig&, const SimulationConfig&, double alpha,
                              double beta);

// One delivery sub-run: a scheme applied to one bit window of the library.
struct SubsystemRun {
    Scheme scheme = Scheme::SC;  // SC, A, or B
    int tag = 0;                 // subsystem field on its messages
    CacheAllocation alloc;
    std::vector<BitVector> content;  // [N] window-relative file contents
};

struct DeliveryContext {
    std::vector<SubsystemRun> parts;
};

struct DeliveryOutcome {
    Scheme scheme = Scheme::SC;
    NetworkConfig config;
    SimulationConfig sim;
    Transcript server;
    std::vector<Transcript> helper;  // [K1]
    std::vector<BitVector> decoded;  // per user (flat order), full-file bits
    RatePair measured;               // r1 = server bits / F, r2 = max helper bits / F
    std::shared_ptr<const DeliveryContext> context;
};

// S&C: first-layer XORs carry only the parts the destination user lacks;
// each helper then serves its users with user-family XORs. An internal
// assertion checks every transmitted second-layer bit was either cached at
// the helper or recovered from the first layer (HelperMissingBits if not).
DeliveryOutcome deliver_sc(const ValidatedConfig&, const SimulationConfig&,
                           const CacheAllocation&);

// Per-layer decentralized delivery without the user-cache split.
DeliveryOutcome deliver_scheme_a(const ValidatedConfig&, const SimulationConfig&,
                                 const CacheAllocation&);

// Cross-layer delivery over all K1*K2 users; helpers forward each server
// message truncated to the longest subfile of their attached participants
// and drop messages serving none. Helper caches are not consulted.
DeliveryOutcome deliver_scheme_b(const ValidatedConfig&, const SimulationConfig&,
                                 const CacheAllocation&);

// S&C on subsystem 1, scheme B on subsystem 2; transcripts concatenate and
// users reassemble both file parts.
DeliveryOutcome deliver_hybrid(const ValidatedConfig&, const SimulationConfig&,
                               const HybridAllocation&, double alpha, double beta);

// Re-derives user (i,j)'s file from its own cache, helper i's transcript,
// and public placement metadata alone. deliver_* run this for every user
// and throw DecodeFailure on any mismatch with the library.
BitVector decode_user(const DeliveryOutcome&, int i, int j);

}  // namespace ccsim
