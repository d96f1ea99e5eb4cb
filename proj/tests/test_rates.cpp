#include <doctest.h>

#include <cmath>

#include "ccsim/rates.hpp"
#include "ccsim/rng.hpp"

using namespace ccsim;

namespace {
const ValidatedConfig kFig3 = ValidatedConfig::validate({50, 10, 2, 10, 20});

ValidatedConfig random_cfg(Rng& rng) {
    NetworkConfig c;
    c.helper_count = 2 + static_cast<int>(rng.below(10));
    c.users_per_helper = 2 + static_cast<int>(rng.below(10));
    c.library_size = 1 + static_cast<int>(rng.below(80));
    auto unit = [&] { return static_cast<double>(rng.below(1u << 30)) / (1u << 30); };
    c.helper_memory = unit() * c.library_size;
    c.user_memory = unit() * c.library_size;
    return ValidatedConfig::validate(c);
}
}  // namespace

TEST_CASE("mau_rate limits and the worked value") {
    CHECK(mau_rate(0, 10, 4) == 4.0);
    CHECK(mau_rate(10, 10, 4) == 0.0);
    CHECK(mau_rate(20, 50, 2) == doctest::Approx(0.96).epsilon(1e-14));
}

TEST_CASE("mau_rate domain errors") {
    CHECK_THROWS_AS(mau_rate(-1, 10, 2), DomainError);
    CHECK_THROWS_AS(mau_rate(11, 10, 2), DomainError);
    CHECK_THROWS_AS(mau_rate(1, 0, 2), DomainError);
    CHECK_THROWS_AS(mau_rate(1, 10, 0), DomainError);
}

TEST_CASE("mau_rate stays within [0, min(k, n/m)]") {
    Rng rng{42, 1};
    for (int t = 0; t < 2000; ++t) {
        double n = 1.0 + rng.below(1000);
        double m = n * static_cast<double>(rng.below(1u << 20)) / (1u << 20);
        int k = 1 + static_cast<int>(rng.below(30));
        double r = mau_rate(m, n, k);
        CHECK(r >= 0.0);
        CHECK(r <= static_cast<double>(k) + 1e-12);
        if (m > 0) CHECK(r <= n / m + 1e-12);
    }
}

TEST_CASE("closed forms at the reference point") {
    CHECK(rate_sc(kFig3).r1 == doctest::Approx(4.28460392448).epsilon(1e-12));
    CHECK(rate_sc(kFig3).r2 == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(rate_scheme_a(kFig3).r1 == doctest::Approx(7.1410065408).epsilon(1e-12));
    auto b = rate_scheme_b(kFig3);
    CHECK(b.rates.r1 == doctest::Approx(1.499945157623399).epsilon(1e-12));
    CHECK(b.rates.r2 == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(b.printed_r1 == doctest::Approx(7.1410065408).epsilon(1e-12));
    CHECK(rate_hybrid(kFig3, 0.5, 0.5).r1 ==
          doctest::Approx(1.6445306229716995).epsilon(1e-12));
    CHECK(rate_hybrid(kFig3, 0.5, 0.5).r2 == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(rate_generalized(kFig3, 0.5, 0.5).r1 ==
          doctest::Approx(2.2409026524116995).epsilon(1e-12));
}

TEST_CASE("limit table") {
    auto at = [](double m1, double m2) {
        return ValidatedConfig::validate({50, 10, 2, m1, m2});
    };
    // M1 = 0: every first-layer class is a unicast, r1 = K1*K2*(1 - M2/N)
    CHECK(rate_sc(at(0, 20)).r1 == doctest::Approx(20.0 * 0.6).epsilon(1e-12));
    CHECK(rate_sc(at(50, 20)).r1 == 0.0);
    CHECK(rate_sc(at(10, 50)).r1 == 0.0);
    CHECK(rate_sc(at(10, 50)).r2 == 0.0);
    CHECK(rate_scheme_a(at(50, 20)).r1 == 0.0);
    CHECK(rate_scheme_b(at(10, 50)).rates.r1 == 0.0);
    CHECK(rate_scheme_b(at(10, 50)).rates.r2 == 0.0);
}

TEST_CASE("hybrid reductions at the share corners") {
    RatePair sc = rate_sc(kFig3);
    RatePair h11 = rate_hybrid(kFig3, 1, 1);
    CHECK(h11.r1 == doctest::Approx(sc.r1).epsilon(1e-12));
    CHECK(h11.r2 == doctest::Approx(sc.r2).epsilon(1e-12));

    auto b = rate_scheme_b(kFig3);
    RatePair h00 = rate_hybrid(kFig3, 0, 0);
    CHECK(h00.r1 == doctest::Approx(b.rates.r1).epsilon(1e-12));
    CHECK(h00.r2 == doctest::Approx(b.rates.r2).epsilon(1e-12));

    RatePair a = rate_scheme_a(kFig3);
    RatePair g11 = rate_generalized(kFig3, 1, 1);
    CHECK(g11.r1 == doctest::Approx(a.r1).epsilon(1e-12));
    CHECK(g11.r2 == doctest::Approx(a.r2).epsilon(1e-12));
}

TEST_CASE("hybrid degenerate shares") {
    // beta = 0 with alpha > 0: subsystem-1 users cache nothing, its
    // second-layer term degenerates to alpha*K2
    auto cfg = ValidatedConfig::validate({50, 10, 2, 10, 0});
    RatePair r = rate_hybrid(cfg, 0.5, 0.0);
    CHECK(r.r2 == doctest::Approx(0.5 * 2 + 0.5 * 2).epsilon(1e-12));

    // helper over-provisioned for subsystem 1 (M1 >= alpha*N): term1 clamps to 0
    RatePair clamped = rate_hybrid(kFig3, 0.2, 0.5);  // alpha*N = 10 = M1
    RatePair clamped2 = rate_hybrid(kFig3, 0.1, 0.5);  // alpha*N = 5 < M1
    RatePair b_like = rate_hybrid(kFig3, 0.0, 0.5);
    CHECK(clamped.r1 ==
          doctest::Approx(0.8 * mau_rate(0.5 * 20, 0.8 * 50, 20)).epsilon(1e-12));
    CHECK(clamped2.r1 ==
          doctest::Approx(0.9 * mau_rate(0.5 * 20, 0.9 * 50, 20)).epsilon(1e-12));
    CHECK(b_like.r1 == doctest::Approx(mau_rate(10, 50, 20)).epsilon(1e-12));
}

TEST_CASE("share validation") {
    CHECK_THROWS_AS(rate_hybrid(kFig3, -0.1, 0.5), InvalidShare);
    CHECK_THROWS_AS(rate_hybrid(kFig3, 0.5, 1.1), InvalidShare);
    CHECK_THROWS_AS(rate_generalized(kFig3, 2.0, 0.5), InvalidShare);
}

TEST_CASE("first-layer scaling identity on random configs") {
    Rng rng{42, 2};
    for (int t = 0; t < 1000; ++t) {
        auto cfg = random_cfg(rng);
        RatePair sc = rate_sc(cfg);
        RatePair a = rate_scheme_a(cfg);
        double want = (1.0 - cfg.m2() / cfg.n()) * a.r1;
        CHECK(std::abs(sc.r1 - want) <= 1e-12 * std::max(1.0, want));
        CHECK(sc.r2 == a.r2);
        CHECK(a.r2 == rate_scheme_b(cfg).rates.r2);
    }
}

TEST_CASE("memory-sharing dominance is pointwise on the share grid") {
    Rng rng{42, 3};
    for (int t = 0; t < 10; ++t) {
        auto cfg = random_cfg(rng);
        for (int ia = 0; ia <= 100; ++ia) {
            for (int ib = 0; ib <= 100; ++ib) {
                double a = ia / 100.0, b = ib / 100.0;
                RatePair h = rate_hybrid(cfg, a, b);
                RatePair g = rate_generalized(cfg, a, b);
                REQUIRE(h.r1 <= g.r1);
                REQUIRE(h.r2 == g.r2);
            }
        }
    }
}

TEST_CASE("hybrid rate is continuous across the share square") {
    auto max_adjacent_diff = [&](int res) {
        double worst = 0;
        for (int ia = 0; ia < res; ++ia) {
            for (int ib = 0; ib < res; ++ib) {
                double a = static_cast<double>(ia) / (res - 1);
                double b = static_cast<double>(ib) / (res - 1);
                double here = rate_hybrid(kFig3, a, b).r1;
                if (ia + 1 < res) {
                    double right =
                        rate_hybrid(kFig3, static_cast<double>(ia + 1) / (res - 1), b).r1;
                    worst = std::max(worst, std::abs(right - here));
                }
                if (ib + 1 < res) {
                    double up =
                        rate_hybrid(kFig3, a, static_cast<double>(ib + 1) / (res - 1)).r1;
                    worst = std::max(worst, std::abs(up - here));
                }
            }
        }
        return worst;
    };
    double coarse = max_adjacent_diff(101);
    double fine = max_adjacent_diff(201);
    CHECK(coarse < 2.0);                   // no jumps at step 0.01
    CHECK(fine <= 0.8 * coarse + 1e-9);    // halving the step shrinks the worst jump
}
