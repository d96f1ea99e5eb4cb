#include <doctest.h>

#include <cmath>

#include "ccsim/delivery.hpp"
#include "ccsim/rates.hpp"
#include "ccsim/rng.hpp"

using namespace ccsim;

namespace {

bool same_message(const Message& a, const Message& b, bool ignore_subsystem = false) {
    return a.layer == b.layer && a.helper == b.helper && a.subset_mask == b.subset_mask &&
           a.j == b.j && a.length == b.length && a.payload == b.payload &&
           (ignore_subsystem || a.subsystem == b.subsystem);
}

bool same_transcript(const Transcript& a, const Transcript& b,
                     bool ignore_subsystem = false) {
    if (a.messages.size() != b.messages.size()) return false;
    for (size_t k = 0; k < a.messages.size(); ++k)
        if (!same_message(a.messages[k], b.messages[k], ignore_subsystem)) return false;
    return true;
}

double rel_err(double got, double want) {
    return want == 0 ? std::abs(got) : std::abs(got - want) / want;
}

}  // namespace

TEST_CASE("helpers holding the whole library silence the server") {
    auto cfg = ValidatedConfig::validate({4, 2, 2, 4, 0});
    SimulationConfig sim{256, 5, {1, 2, 3, 4}};
    DeliveryOutcome out = deliver_sc(cfg, sim, place(cfg, sim));
    CHECK(out.server.messages.empty());
    CHECK(out.measured.r1 == 0.0);
    CHECK(out.measured.r2 == 2.0);  // uncached users need K2 whole files per helper
}

TEST_CASE("users holding the whole library silence everything") {
    auto cfg = ValidatedConfig::validate({4, 2, 2, 1, 4});
    SimulationConfig sim{256, 5, {1, 2, 3, 4}};
    for (auto deliver : {deliver_sc, deliver_scheme_b}) {
        DeliveryOutcome out = deliver(cfg, sim, place(cfg, sim));
        CHECK(out.server.messages.empty());
        for (const auto& t : out.helper) CHECK(t.messages.empty());
        CHECK(out.measured.r1 == 0.0);
        CHECK(out.measured.r2 == 0.0);
    }
    // the plain per-layer scheme ignores user caches on the first layer, so
    // its server keeps transmitting even though every user could self-serve
    DeliveryOutcome a = deliver_scheme_a(cfg, sim, place(cfg, sim));
    CHECK(!a.server.messages.empty());
    CHECK(a.measured.r1 > 0.0);
    for (const auto& t : a.helper) CHECK(t.messages.empty());
    CHECK(a.measured.r2 == 0.0);
}

TEST_CASE("without user caches the split scheme degenerates to the plain one") {
    auto cfg = ValidatedConfig::validate({4, 2, 3, 2, 0});
    SimulationConfig sim{512, 11, {1, 2, 3, 4, 1, 2}};
    CacheAllocation alloc = place(cfg, sim);
    DeliveryOutcome sc = deliver_sc(cfg, sim, alloc);
    DeliveryOutcome a = deliver_scheme_a(cfg, sim, alloc);
    CHECK(same_transcript(sc.server, a.server));
    for (int i = 0; i < 2; ++i)
        CHECK(same_transcript(sc.helper[static_cast<size_t>(i)],
                              a.helper[static_cast<size_t>(i)]));
}

TEST_CASE("splitting never lengthens the first layer") {
    Rng rng{47, 1};
    for (int trial = 0; trial < 10; ++trial) {
        NetworkConfig c{5, 2, 2, 0, 0};
        auto unit = [&] { return static_cast<double>(rng.below(1u << 30)) / (1u << 30); };
        c.helper_memory = unit() * 5;
        c.user_memory = unit() * 5;
        auto cfg = ValidatedConfig::validate(c);
        SimulationConfig sim{2048, rng.next(), uniform_random_demands(cfg, rng.next())};
        CacheAllocation alloc = place(cfg, sim);
        DeliveryOutcome sc = deliver_sc(cfg, sim, alloc);
        DeliveryOutcome a = deliver_scheme_a(cfg, sim, alloc);
        CHECK(sc.server.total_bits() <= a.server.total_bits());
        // the second layer is the same delivery in both schemes
        for (size_t i = 0; i < sc.helper.size(); ++i)
            CHECK(same_transcript(sc.helper[i], a.helper[i]));
    }
}

TEST_CASE("cross-layer delivery with empty user caches unicasts everything") {
    auto cfg = ValidatedConfig::validate({6, 2, 3, 2, 0});
    SimulationConfig sim{256, 5, {1, 2, 3, 4, 5, 6}};
    DeliveryOutcome out = deliver_scheme_b(cfg, sim, place(cfg, sim));
    CHECK(out.measured.r1 == 6.0);  // K1*K2 whole-file messages
    CHECK(out.measured.r2 == 3.0);  // each helper forwards its K2
    CHECK(out.server.messages.size() == 6);
}

TEST_CASE("transcripts are deterministic and canonically ordered") {
    auto cfg = ValidatedConfig::validate({5, 2, 3, 2, 1.5});
    SimulationConfig sim{1024, 99, uniform_random_demands(cfg, 99)};
    CacheAllocation alloc = place(cfg, sim);
    DeliveryOutcome one = deliver_sc(cfg, sim, alloc);
    DeliveryOutcome two = deliver_sc(cfg, sim, alloc);
    CHECK(same_transcript(one.server, two.server));

    auto key = [](const Message& m) {
        return std::tuple(std::popcount(m.subset_mask), m.subset_mask, m.j);
    };
    for (size_t k = 1; k < one.server.messages.size(); ++k)
        CHECK(key(one.server.messages[k - 1]) < key(one.server.messages[k]));
    for (const auto& t : one.helper)
        for (size_t k = 1; k < t.messages.size(); ++k)
            CHECK(key(t.messages[k - 1]) < key(t.messages[k]));
}

TEST_CASE("every emitted message carries payload") {
    Rng rng{47, 2};
    for (int trial = 0; trial < 8; ++trial) {
        NetworkConfig c{6, 2, 2, 0, 0};
        auto unit = [&] { return static_cast<double>(rng.below(1u << 30)) / (1u << 30); };
        c.helper_memory = unit() * 6;
        c.user_memory = unit() * 6;
        auto cfg = ValidatedConfig::validate(c);
        SimulationConfig sim{1024, rng.next(), uniform_random_demands(cfg, rng.next())};
        CacheAllocation alloc = place(cfg, sim);
        for (auto deliver : {deliver_sc, deliver_scheme_a, deliver_scheme_b}) {
            DeliveryOutcome out = deliver(cfg, sim, alloc);
            for (const auto& m : out.server.messages) CHECK(m.length > 0);
            for (const auto& t : out.helper)
                for (const auto& m : t.messages) CHECK(m.length > 0);
        }
    }
}

TEST_CASE("identical demands across all users decode fine") {
    auto cfg = ValidatedConfig::validate({6, 2, 3, 2, 2});
    SimulationConfig sim{4096, 13, std::vector<int>(6, 1)};
    CacheAllocation alloc = place(cfg, sim);
    CHECK_NOTHROW(deliver_sc(cfg, sim, alloc));
    CHECK_NOTHROW(deliver_scheme_a(cfg, sim, alloc));
    CHECK_NOTHROW(deliver_scheme_b(cfg, sim, alloc));
    CHECK_NOTHROW(
        deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, 0.5, 0.5), 0.5, 0.5));
}

TEST_CASE("standalone decode matches the recorded outcome") {
    auto cfg = ValidatedConfig::validate({6, 2, 3, 1.5, 2});
    SimulationConfig sim{2048, 21, uniform_random_demands(cfg, 21)};
    DeliveryOutcome out = deliver_sc(cfg, sim, place(cfg, sim));
    auto lib = library_content(cfg, sim);
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 3; ++j) {
            BitVector got = decode_user(out, i, j);
            int flat = user_flat(cfg, i, j);
            CHECK(got == out.decoded[static_cast<size_t>(flat)]);
            CHECK(got == lib[static_cast<size_t>(sim.demands[static_cast<size_t>(flat)] - 1)]);
        }
    }
    CHECK_THROWS_AS(decode_user(out, 3, 1), UnknownNode);
}

TEST_CASE("full-share hybrid reproduces the split scheme bit for bit") {
    auto cfg = ValidatedConfig::validate({6, 2, 3, 2, 2.5});
    SimulationConfig sim{4096, 31, uniform_random_demands(cfg, 31)};
    DeliveryOutcome sc = deliver_sc(cfg, sim, place(cfg, sim));
    DeliveryOutcome hybrid =
        deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, 1.0, 1.0), 1.0, 1.0);
    CHECK(same_transcript(hybrid.server, sc.server, true));
    for (size_t i = 0; i < sc.helper.size(); ++i)
        CHECK(same_transcript(hybrid.helper[i], sc.helper[i], true));
    CHECK(hybrid.measured.r1 == sc.measured.r1);
    CHECK(hybrid.measured.r2 == sc.measured.r2);
}

TEST_CASE("zero-share hybrid reproduces the cross-layer scheme bit for bit") {
    auto cfg = ValidatedConfig::validate({6, 2, 3, 2, 2.5});
    SimulationConfig sim{4096, 31, uniform_random_demands(cfg, 31)};
    // the hybrid's second subsystem draws user caches from the auxiliary stream
    CacheAllocation aux =
        place_window(cfg, sim.seed, sim.file_bits, 0, 0, StreamTag::HelperCache,
                     cache_quota(cfg.m2(), sim.file_bits, cfg.n()), StreamTag::UserCacheAux);
    DeliveryOutcome b = deliver_scheme_b(cfg, sim, aux);
    DeliveryOutcome hybrid =
        deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, 0.0, 0.0), 0.0, 0.0);
    CHECK(same_transcript(hybrid.server, b.server, true));
    for (size_t i = 0; i < b.helper.size(); ++i)
        CHECK(same_transcript(hybrid.helper[i], b.helper[i], true));
}

TEST_CASE("hybrid share validation") {
    auto cfg = ValidatedConfig::validate({6, 2, 3, 2, 2});
    SimulationConfig sim{512, 3, uniform_random_demands(cfg, 3)};
    CHECK_THROWS_AS(place_hybrid(cfg, sim, 1.5, 0.5), InvalidShare);
    HybridAllocation h = place_hybrid(cfg, sim, 0.5, 0.5);
    CHECK_THROWS_AS(deliver_hybrid(cfg, sim, h, 0.6, 0.5), InvalidShare);
}

TEST_CASE("decode trials across random memories and demands") {
    Rng rng{47, 3};
    for (int trial = 0; trial < 15; ++trial) {
        NetworkConfig c{6, 2, 3, 0, 0};
        auto unit = [&] { return static_cast<double>(rng.below(1u << 30)) / (1u << 30); };
        c.helper_memory = unit() * 6;
        c.user_memory = unit() * 6;
        auto cfg = ValidatedConfig::validate(c);
        SimulationConfig sim{4096, rng.next(), uniform_random_demands(cfg, rng.next())};
        CacheAllocation alloc = place(cfg, sim);
        CHECK_NOTHROW(deliver_sc(cfg, sim, alloc));
        CHECK_NOTHROW(deliver_scheme_a(cfg, sim, alloc));
        CHECK_NOTHROW(deliver_scheme_b(cfg, sim, alloc));
        double a = unit(), b = unit();
        CHECK_NOTHROW(deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, a, b), a, b));
    }
}

TEST_CASE("measured rates converge to the closed forms on wider shapes") {
    struct Shape {
        int n, k1, k2;
        double m1, m2;
    };
    for (Shape s : {Shape{8, 4, 2, 2, 4}, Shape{8, 2, 4, 4, 2}}) {
        auto cfg = ValidatedConfig::validate({s.n, s.k1, s.k2, s.m1, s.m2});
        SimulationConfig sim{1000000, 2024, uniform_random_demands(cfg, 2024)};
        CacheAllocation alloc = place(cfg, sim);

        DeliveryOutcome sc = deliver_sc(cfg, sim, alloc);
        CHECK(rel_err(sc.measured.r1, rate_sc(cfg).r1) <= 0.02);
        CHECK(rel_err(sc.measured.r2, rate_sc(cfg).r2) <= 0.02);

        DeliveryOutcome a = deliver_scheme_a(cfg, sim, alloc);
        CHECK(rel_err(a.measured.r1, rate_scheme_a(cfg).r1) <= 0.02);
        CHECK(rel_err(a.measured.r2, rate_scheme_a(cfg).r2) <= 0.02);

        DeliveryOutcome b = deliver_scheme_b(cfg, sim, alloc);
        CHECK(rel_err(b.measured.r1, rate_scheme_b(cfg).rates.r1) <= 0.02);
        CHECK(rel_err(b.measured.r2, rate_scheme_b(cfg).rates.r2) <= 0.02);

        DeliveryOutcome h =
            deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, 0.5, 0.5), 0.5, 0.5);
        CHECK(rel_err(h.measured.r1, rate_hybrid(cfg, 0.5, 0.5).r1) <= 0.02);
        CHECK(rel_err(h.measured.r2, rate_hybrid(cfg, 0.5, 0.5).r2) <= 0.02);
    }
}

TEST_CASE("allocation shape mismatches are rejected") {
    auto cfg = ValidatedConfig::validate({6, 2, 3, 2, 2});
    SimulationConfig sim{512, 3, uniform_random_demands(cfg, 3)};
    SimulationConfig other = sim;
    other.file_bits = 1024;
    CacheAllocation alloc = place(cfg, sim);
    CHECK_THROWS_AS(deliver_sc(cfg, other, alloc), ConfigError);
}
