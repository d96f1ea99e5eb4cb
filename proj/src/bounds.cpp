#include "ccsim/bounds.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccsim/rates.hpp"

namespace ccsim {

LowerBound1 lower_bound_r1(const ValidatedConfig& cfg) {
    double n = cfg.n();
    LowerBound1 best{0, 1, 1, -std::numeric_limits<double>::infinity()};
    for (int s1 = 1; s1 <= cfg.k1(); ++s1) {
        for (int s2 = 1; s2 <= cfg.k2(); ++s2) {
            double v = s1 * s2 * (n - s1 * cfg.m1() - s1 * s2 * cfg.m2()) / (n + s1 * s2);
            if (v > best.raw) best = {0, s1, s2, v};
        }
    }
    best.rate = std::max(best.raw, 0.0);
    return best;
}

LowerBound2 lower_bound_r2(const ValidatedConfig& cfg) {
    double n = cfg.n();
    LowerBound2 best{0, 1, -std::numeric_limits<double>::infinity()};
    for (int t = 1; t <= cfg.k2(); ++t) {
        double v = t * (n - t * cfg.m2()) / (n + t);
        if (v > best.raw) best = {0, t, v};
    }
    best.rate = std::max(best.raw, 0.0);
    return best;
}

namespace {

struct CaseDef {
    char id;
    double m1_lo, m1_hi;  // closed interval
    double m2_lo, m2_hi;  // closed interval; may depend on m1 (precomputed)
};

// Case tables at a given point. The M2 edges of cases F/G (and the high-band
// cases) depend on M1, so the table is built per point.
std::vector<CaseDef> case_table(const ValidatedConfig& cfg, Regime regime, MemBand band) {
    double n = cfg.n(), k1 = cfg.k1(), k2 = cfg.k2();
    double m1 = cfg.m1();
    if (regime == Regime::I && band == MemBand::Low) {
        return {
            {'A', 0, n / (2 * k1), 0, n / (k1 * k2)},
            {'B', 0, n / (2 * k1), n / (k1 * k2), n / (2 * k2)},
            {'C', 0, n / (2 * k1), n / (2 * k2), n / 2},
            {'D', n / (2 * k1), n / 4, 0, n / (4 * k2)},
            {'E', n / (2 * k1), n / 4, n / (4 * k2), n / 2},
            {'F', n / 4, n / 2, 0, (n - m1) / (2 * k2)},
            {'G', n / 4, n / 2, (n - m1) / (2 * k2), (n - m1) / k2},
        };
    }
    if (regime == Regime::I && band == MemBand::High) {
        return {
            {'A', n / 2, n, 0, (n - m1) / (2 * k2)},
            {'B', n / 2, n, (n - m1) / (2 * k2), (n - m1) / k2},
        };
    }
    if (regime == Regime::II && band == MemBand::Low) {
        return {
            {'A', 0, n / (2 * k1), n / (2 * k2), n / 2},
            {'B', 0, n / (2 * k1), n / 2, n},
            {'C', n / (2 * k1), n / 4, n / (4 * k2), n / 2},
            {'D', n / (2 * k1), n / 4, n / 2, n},
            {'E', n / 4, n / 2, (n - m1) / k2, (n - m1) / 2},
            {'F', n / 4, n / 2, (n - m1) / 2, n},
        };
    }
    return {
        {'A', n / 2, n, (n - m1) / k2, (n - m1) / 2},
        {'B', n / 2, n, (n - m1) / 2, n},
    };
}

Regime regime_of(const ValidatedConfig& cfg) {
    return cfg.m1() + cfg.k2() * cfg.m2() < cfg.n() ? Regime::I : Regime::II;
}
MemBand band_of(const ValidatedConfig& cfg) {
    return cfg.m1() < cfg.n() / 2.0 ? MemBand::Low : MemBand::High;
}

// The case intervals tile each (regime, band) exactly in real arithmetic but
// can leak at shared edges in doubles (the regime predicate and a case bound
// round in opposite directions). Interval matching therefore widens every
// edge by this guard band; points inside it match both neighbours and are
// flagged as boundary.
double edge_guard(const ValidatedConfig& cfg) { return 1e-12 * cfg.n(); }

// a/b with the natural closure: positive/0 -> +inf, 0/0 -> 0.
double ratio(double a, double b) {
    if (b > 0) return a / b;
    return a > 0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

std::vector<char> matching_cases(const ValidatedConfig& cfg) {
    Regime regime = regime_of(cfg);
    MemBand band = band_of(cfg);
    double eps = edge_guard(cfg);
    std::vector<char> out;
    for (const auto& c : case_table(cfg, regime, band)) {
        if (cfg.m1() >= c.m1_lo - eps && cfg.m1() <= c.m1_hi + eps &&
            cfg.m2() >= c.m2_lo - eps && cfg.m2() <= c.m2_hi + eps)
            out.push_back(c.id);
    }
    return out;
}

RegimeLabel classify(const ValidatedConfig& cfg) {
    Regime regime = regime_of(cfg);
    MemBand band = band_of(cfg);
    auto matches = matching_cases(cfg);
    if (matches.empty())
        throw std::logic_error("no sub-region case matched M1=" + std::to_string(cfg.m1()) +
                               " M2=" + std::to_string(cfg.m2()));
    double eps = edge_guard(cfg);
    bool on_regime_edge = std::abs(cfg.m1() + cfg.k2() * cfg.m2() - cfg.n()) <= eps;
    bool on_band_edge = std::abs(cfg.m1() - cfg.n() / 2.0) <= eps;
    return {regime, band, matches.back(),
            matches.size() > 1 || on_regime_edge || on_band_edge};
}

CaseConstants case_constants_r1(Regime regime, MemBand band, char case_id) {
    auto bad = [&]() -> CaseConstants {
        throw DomainError(std::string("unknown case id '") + case_id + "'");
    };
    if (regime == Regime::I && band == MemBand::Low) {
        switch (case_id) {
            case 'A':
            case 'B':
            case 'C':
                return {1.0 / 24, 0};
            case 'D':
                return {1.0 / 16, 0};
            case 'E':
                return {1.0 / 48, 0};
            case 'F':
                return {1.0 / 12, 0};
            case 'G':
                return {1.0 / 48, 0};
            default:
                return bad();
        }
    }
    if (regime == Regime::I && band == MemBand::High) {
        switch (case_id) {
            case 'A':
                return {1.0 / 6, 0};
            case 'B':
                return {1.0 / 24, 0};
            default:
                return bad();
        }
    }
    if (regime == Regime::II && band == MemBand::Low) {
        switch (case_id) {
            case 'A':
                return {1.0 / 24, 0};
            case 'B':
                return {1, 1};
            case 'C':
                return {1.0 / 48, 0};
            case 'D':
                return {1, 1};
            case 'E':
                return {1.0 / 20, 0};
            case 'F':
                return {1, 4};
            default:
                return bad();
        }
    }
    switch (case_id) {
        case 'A':
            return {1.0 / 20, 0};
        case 'B':
            return {1, 4};
        default:
            return bad();
    }
}

CaseConstants case_constants_r2(double m2, double n) {
    if (m2 < n / 2.0) return {1.0 / 20, 0};
    return {1, 4};
}

BoundSet compute_bound_set(const ValidatedConfig& cfg) {
    double n = cfg.n();
    double m1 = cfg.m1(), m2 = cfg.m2();
    Regime regime = regime_of(cfg);

    BoundSet out;
    auto lb1 = lower_bound_r1(cfg);
    auto lb2 = lower_bound_r2(cfg);
    out.r1_lb = lb1.rate;
    out.s1_star = lb1.s1;
    out.s2_star = lb1.s2;
    out.r2_lb = lb2.rate;
    out.t_star = lb2.t;

    // Memory-sharing tuples evaluated per regime; the one with the smallest
    // hybrid r1 wins, ties to the first listed.
    std::vector<std::pair<double, double>> tuples;
    if (regime == Regime::I) {
        double denom = m1 + cfg.k2() * m2;
        double a2 = denom > 0 ? m1 / denom : 1.0;  // all-memory-empty point: pure first layer
        tuples = {{m1 / n, m1 / n}, {a2, 0.0}, {1.0, 1.0}};
    } else {
        tuples = {{m1 / n, m1 / n}, {m1 / n, 0.5}};
    }
    bool first = true;
    for (auto [a, b] : tuples) {
        RatePair r = rate_hybrid(cfg, a, b);
        if (first || r.r1 < out.hybrid_r1) {
            out.alpha_star = a;
            out.beta_star = b;
            out.hybrid_r1 = r.r1;
            out.hybrid_r2 = r.r2;
            first = false;
        }
    }

    double common1 = std::min(static_cast<double>(cfg.users()), ratio(n - m2, m2));
    if (regime == Regime::I) {
        out.r1_ub = std::min({common1, ratio(n * cfg.k2(), m1 + m2 * cfg.k2()),
                              cfg.k2() * ratio(n - m1, m1)});
        out.r2_ub = std::min(static_cast<double>(cfg.k2()), ratio(n, m2));
    } else {
        out.r1_ub = std::min(common1, ratio(2 * (n - m1) * (n - m1), n * m2));
        out.r2_ub = 2 * std::min(static_cast<double>(cfg.k2()), ratio(n, m2));
    }

    out.envelope_slack_r1 = out.r1_ub - out.hybrid_r1;
    out.envelope_slack_r2 = out.r2_ub - out.hybrid_r2;
    return out;
}

BoundSet upper_bounds(const ValidatedConfig& cfg) {
    BoundSet out = compute_bound_set(cfg);
    if (!out.envelope_ok())
        throw EnvelopeViolation(
            "hybrid rate at the chosen tuple exceeds its envelope: r1 " +
            std::to_string(out.hybrid_r1) + " vs " + std::to_string(out.r1_ub) + ", r2 " +
            std::to_string(out.hybrid_r2) + " vs " + std::to_string(out.r2_ub));
    return out;
}

}  // namespace ccsim
