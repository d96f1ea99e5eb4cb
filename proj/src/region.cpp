#include "ccsim/region.hpp"

#include <algorithm>
#include <cmath>

#include "ccsim/rates.hpp"

namespace ccsim {

Frontier frontier(const ValidatedConfig& cfg, RegionScheme scheme, int resolution) {
    if (resolution < 2) throw ConfigError("frontier resolution must be >= 2 per axis");

    std::vector<FrontierPoint> cand;
    cand.reserve(static_cast<size_t>(resolution) * resolution);
    for (int ia = 0; ia < resolution; ++ia) {
        double a = static_cast<double>(ia) / (resolution - 1);
        for (int ib = 0; ib < resolution; ++ib) {
            double b = static_cast<double>(ib) / (resolution - 1);
            RatePair r = scheme == RegionScheme::Hybrid ? rate_hybrid(cfg, a, b)
                                                        : rate_generalized(cfg, a, b);
            cand.push_back({a, b, r.r1, r.r2});
        }
    }
    std::sort(cand.begin(), cand.end(), [](const FrontierPoint& x, const FrontierPoint& y) {
        if (x.r1 != y.r1) return x.r1 < y.r1;
        if (x.r2 != y.r2) return x.r2 < y.r2;
        if (x.alpha != y.alpha) return x.alpha < y.alpha;
        return x.beta < y.beta;
    });

    Frontier out;
    out.scheme = scheme;
    double best_r2 = std::numeric_limits<double>::infinity();
    for (const auto& p : cand) {
        if (p.r2 < best_r2) {
            out.points.push_back(p);
            best_r2 = p.r2;
        }
    }
    return out;
}

Dominance dominates(const Frontier& a, const Frontier& b) {
    for (const auto& p : b.points) {
        bool covered = false;
        for (const auto& q : a.points) {
            if (q.r1 > p.r1) break;  // a.points sorted by r1 ascending
            if (q.r2 <= p.r2) {
                covered = true;
                break;
            }
        }
        if (!covered) return {false, p};
    }
    return {true, std::nullopt};
}

std::vector<Fig3Row> fig3_table(const ValidatedConfig& cfg, SweepAxis axis, double fixed,
                                double lo, double hi, double step) {
    if (step <= 0) throw ConfigError("fig3 step must be > 0");
    std::vector<Fig3Row> rows;
    int count = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    for (int k = 0; k < count; ++k) {
        double v = lo + k * step;
        double a = axis == SweepAxis::Alpha ? v : fixed;
        double b = axis == SweepAxis::Alpha ? fixed : v;
        RatePair h = rate_hybrid(cfg, a, b);
        RatePair g = rate_generalized(cfg, a, b);
        rows.push_back({v, h.r1, g.r1, h.r2});
    }
    return rows;
}

}  // namespace ccsim
