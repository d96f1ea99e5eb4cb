#include "ccsim/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "ccsim/delivery.hpp"
#include "ccsim/gap.hpp"
#include "ccsim/rates.hpp"
#include "ccsim/rng.hpp"

namespace ccsim {

namespace {

using Clock = std::chrono::steady_clock;

double rel_err(double got, double want) {
    if (want == 0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

double close_rel(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

ValidatedConfig random_config(Rng& rng) {
    NetworkConfig c;
    c.helper_count = 2 + static_cast<int>(rng.below(11));
    c.users_per_helper = 2 + static_cast<int>(rng.below(11));
    c.library_size = 1 + static_cast<int>(rng.below(100));
    auto unit = [&] { return static_cast<double>(rng.below(1u << 30)) / (1u << 30); };
    c.helper_memory = unit() * c.library_size;
    c.user_memory = unit() * c.library_size;
    return ValidatedConfig::validate(c);
}

const NetworkConfig kFig3{50, 10, 2, 10, 20};

CriterionResult criterion1() {
    CriterionResult res{1, "closed-form reproduction at the reference point", false, 0, ""};
    auto cfg = ValidatedConfig::validate(kFig3);
    struct Row {
        const char* what;
        double got, want;
    };
    Row rows[] = {
        {"r1_sc", rate_sc(cfg).r1, 4.284604},
        {"r1_a", rate_scheme_a(cfg).r1, 7.141007},
        {"r2_sc", rate_sc(cfg).r2, 0.96},
        {"r2_a", rate_scheme_a(cfg).r2, 0.96},
        {"r2_b", rate_scheme_b(cfg).rates.r2, 0.96},
        {"r1_hybrid(.5,.5)", rate_hybrid(cfg, 0.5, 0.5).r1, 1.644527},
        {"r1_generalized(.5,.5)", rate_generalized(cfg, 0.5, 0.5).r1, 2.240902},
    };
    res.pass = true;
    std::ostringstream os;
    for (const Row& r : rows) {
        if (std::abs(r.got - r.want) > 1e-5) {
            res.pass = false;
            os << r.what << "=" << r.got << " want " << r.want << "; ";
        }
    }

    // the evaluations themselves carry a sub-millisecond budget
    auto t0 = Clock::now();
    double sink = 0;
    constexpr int reps = 1000;
    for (int k = 0; k < reps; ++k) {
        sink += rate_sc(cfg).r1 + rate_scheme_a(cfg).r1 + rate_scheme_b(cfg).rates.r1 +
                rate_hybrid(cfg, 0.5, 0.5).r1 + rate_generalized(cfg, 0.5, 0.5).r1;
    }
    double per_eval = std::chrono::duration<double>(Clock::now() - t0).count() / reps;
    if (!(sink > 0) || per_eval > 1e-3) {
        res.pass = false;
        os << "evaluation took " << per_eval << "s; ";
    }
    res.detail = res.pass ? "7 values within 1e-5, eval " + std::to_string(per_eval) + "s"
                          : os.str();
    return res;
}

CriterionResult criterion2() {
    CriterionResult res{2, "first-layer scaling identity on random configs", false, 0, ""};
    Rng rng{0xacceb7ull, 2};
    int bad = 0;
    for (int k = 0; k < 10000; ++k) {
        auto cfg = random_config(rng);
        RatePair sc = rate_sc(cfg);
        RatePair a = rate_scheme_a(cfg);
        double want = (1.0 - cfg.m2() / cfg.n()) * a.r1;
        if (close_rel(sc.r1, want) > 1e-12 || sc.r2 != a.r2) ++bad;
    }
    res.pass = bad == 0;
    res.detail = std::to_string(bad) + " violations / 10000 configs";
    return res;
}

CriterionResult criterion3() {
    CriterionResult res{3, "memory-sharing dominance on (alpha,beta) grids", false, 0, ""};
    Rng rng{0xacceb7ull, 3};
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
        auto cfg = random_config(rng);
        for (int ia = 0; ia <= 100; ++ia) {
            for (int ib = 0; ib <= 100; ++ib) {
                double a = ia / 100.0, b = ib / 100.0;
                RatePair h = rate_hybrid(cfg, a, b);
                RatePair g = rate_generalized(cfg, a, b);
                if (h.r1 > g.r1 || h.r2 != g.r2) ++bad;
            }
        }
    }
    res.pass = bad == 0;
    res.detail = std::to_string(bad) + " violations / 100 configs * 101^2 points";
    return res;
}

CriterionResult criterion4() {
    CriterionResult res{4, "bit-exact decode across schemes", false, 0, ""};
    Rng meta{0xacceb7ull, 4};
    int ok = 0, total = 0;
    std::ostringstream os;
    for (int trial = 0; trial < 100; ++trial) {
        NetworkConfig c{6, 2, 3, 0, 0};
        auto unit = [&] { return static_cast<double>(meta.below(1u << 30)) / (1u << 30); };
        c.helper_memory = unit() * c.library_size;
        c.user_memory = unit() * c.library_size;
        auto cfg = ValidatedConfig::validate(c);

        SimulationConfig sim;
        sim.file_bits = 4096;
        sim.seed = meta.next();
        sim.demands = uniform_random_demands(cfg, sim.seed);

        try {
            CacheAllocation alloc = place(cfg, sim);
            deliver_scheme_a(cfg, sim, alloc);
            ++ok;
            deliver_scheme_b(cfg, sim, alloc);
            ++ok;
            deliver_sc(cfg, sim, alloc);
            ++ok;
            deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, 0.5, 0.5), 0.5, 0.5);
            ++ok;
        } catch (const InvariantViolation& e) {
            os << "trial " << trial << ": " << e.what() << "; ";
        }
        total += 4;
    }
    res.pass = ok == total;
    res.detail = std::to_string(ok) + "/" + std::to_string(total) + " exact decodes" +
                 (res.pass ? "" : ("; " + os.str()));
    return res;
}

CriterionResult criterion5() {
    CriterionResult res{5, "simulation-to-formula convergence", false, 0, ""};
    NetworkConfig c{8, 2, 2, 2, 2};
    auto cfg = ValidatedConfig::validate(c);
    SimulationConfig sim;
    sim.file_bits = 1000000;
    sim.seed = 20240817;
    sim.demands = uniform_random_demands(cfg, sim.seed);
    CacheAllocation alloc = place(cfg, sim);

    std::ostringstream os;
    bool pass = true;
    auto check = [&](const char* what, RatePair got, RatePair want) {
        double e1 = rel_err(got.r1, want.r1), e2 = rel_err(got.r2, want.r2);
        os << what << " r1 err " << e1 << " r2 err " << e2 << "; ";
        if (e1 > 0.02 || e2 > 0.02) pass = false;
    };
    check("sc", deliver_sc(cfg, sim, alloc).measured, rate_sc(cfg));
    check("a", deliver_scheme_a(cfg, sim, alloc).measured, rate_scheme_a(cfg));

    SchemeBRates b = rate_scheme_b(cfg);
    RatePair b_measured = deliver_scheme_b(cfg, sim, alloc).measured;
    check("b", b_measured, b.rates);
    // the measurement must arbitrate toward the consistent first-layer value,
    // not the published one
    if (rel_err(b_measured.r1, b.printed_r1) <= 0.02) {
        pass = false;
        os << "b r1 matches the published expression instead; ";
    }

    check("hybrid(.5,.5)",
          deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, 0.5, 0.5), 0.5, 0.5).measured,
          rate_hybrid(cfg, 0.5, 0.5));

    res.pass = pass;
    res.detail = os.str();
    return res;
}

CriterionResult criterion6(std::vector<SweepResult>& sweeps_out) {
    CriterionResult res{6, "order-optimality gap certification sweeps", false, 0, ""};
    const NetworkConfig shapes[] = {
        {20, 2, 2, 0, 0}, {36, 3, 3, 0, 0}, {64, 4, 4, 0, 0}, {50, 10, 2, 0, 0}};
    bool pass = true;
    std::ostringstream os;
    for (const NetworkConfig& shape : shapes) {
        SweepResult sr = sweep(shape, 41);
        os << "N=" << shape.library_size << " K1=" << shape.helper_count
           << " K2=" << shape.users_per_helper << ": " << sr.summary.theorem_failures
           << " theorem / " << sr.summary.case_failures << " case failures, min r1 slack "
           << sr.summary.min_slack_theorem_r1 << "; ";
        if (sr.summary.theorem_failures != 0 || sr.summary.case_failures != 0) pass = false;
        sweeps_out.push_back(std::move(sr));
    }
    res.pass = pass;
    res.detail = os.str();
    return res;
}

CriterionResult criterion7() {
    CriterionResult res{7, "bound scans against an independent maximizer", false, 0, ""};
    Rng rng{0xacceb7ull, 7};
    int bad = 0;
    for (int k = 0; k < 10000; ++k) {
        auto cfg = random_config(rng);
        double n = cfg.n(), m1 = cfg.m1(), m2 = cfg.m2();

        // oracle: reversed enumeration, >= update, tracking only the value
        double best1 = -std::numeric_limits<double>::infinity();
        for (int s2 = cfg.k2(); s2 >= 1; --s2)
            for (int s1 = cfg.k1(); s1 >= 1; --s1) {
                double v = s1 * s2 * (n - s1 * m1 - s1 * s2 * m2) / (n + s1 * s2);
                if (v >= best1) best1 = v;
            }
        double best2 = -std::numeric_limits<double>::infinity();
        for (int t = cfg.k2(); t >= 1; --t) {
            double v = t * (n - t * m2) / (n + t);
            if (v >= best2) best2 = v;
        }

        LowerBound1 lb1 = lower_bound_r1(cfg);
        LowerBound2 lb2 = lower_bound_r2(cfg);
        double w1 = lb1.s1 * lb1.s2 * (n - lb1.s1 * m1 - lb1.s1 * lb1.s2 * m2) /
                    (n + lb1.s1 * lb1.s2);
        double w2 = lb2.t * (n - lb2.t * m2) / (n + lb2.t);
        if (lb1.rate != std::max(best1, 0.0) || lb2.rate != std::max(best2, 0.0) ||
            w1 != best1 || w2 != best2)
            ++bad;
    }
    res.pass = bad == 0;
    res.detail = std::to_string(bad) + " mismatches / 10000 configs";
    return res;
}

CriterionResult criterion8(const std::vector<SweepResult>& sweeps) {
    CriterionResult res{8, "memory-sharing envelopes hold at every swept point", false, 0,
                        ""};
    int violations = 0, points = 0;
    for (const auto& sr : sweeps) {
        violations += sr.summary.envelope_failures;
        points += sr.summary.points;
    }
    res.pass = violations == 0 && !sweeps.empty();
    res.detail = std::to_string(violations) + " envelope violations / " +
                 std::to_string(points) + " points";
    return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> out;
    std::vector<SweepResult> sweeps;
    auto timed = [&](auto&& fn, double limit_s) {
        auto t0 = Clock::now();
        CriterionResult r = fn();
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (r.seconds > limit_s) {
            r.pass = false;
            r.detail += " [exceeded " + std::to_string(limit_s) + "s budget]";
        }
        out.push_back(std::move(r));
    };
    timed([] { return criterion1(); }, 1.0);
    timed([] { return criterion2(); }, 1.0);
    timed([] { return criterion3(); }, 10.0);
    timed([] { return criterion4(); }, 30.0);
    timed([] { return criterion5(); }, 120.0);
    timed([&] { return criterion6(sweeps); }, 60.0);
    timed([] { return criterion7(); }, 5.0);
    timed([&] { return criterion8(sweeps); }, 1.0);
    return out;
}

int run_acceptance_report(std::ostream& os) {
    int failures = 0;
    for (const CriterionResult& r : run_acceptance()) {
        os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name << " ("
           << r.seconds << "s) - " << r.detail << "\n";
        if (!r.pass) ++failures;
    }
    os << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
       << "\n";
    return failures;
}

}  // namespace ccsim
