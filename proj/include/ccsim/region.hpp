#pragma once

#include <optional>
#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

enum class RegionScheme { Hybrid, Generalized };

struct FrontierPoint {
    double alpha = 0, beta = 0;
    double r1 = 0, r2 = 0;
};

// Pareto-minimal (r1, r2) pairs over an (alpha, beta) grid, sorted by r1
// ascending (hence r2 descending). No point dominates another; equal rate
// pairs keep the lexicographically smallest (alpha, beta).
struct Frontier {
    RegionScheme scheme = RegionScheme::Hybrid;
    std::vector<FrontierPoint> points;
};

// resolution >= 2 points per axis (alpha and beta each on {k/(res-1)}).
Frontier frontier(const ValidatedConfig&, RegionScheme, int resolution);

struct Dominance {
    bool dominates = false;
    // a point of b no point of a weakly improves on, when !dominates
    std::optional<FrontierPoint> witness;
};

// True iff every point of b is matched by a point of a with r1 <= and r2 <=.
Dominance dominates(const Frontier& a, const Frontier& b);

enum class SweepAxis { Alpha, Beta };

struct Fig3Row {
    double varied = 0;
    double r1_hybrid = 0;
    double r1_generalized = 0;
    double r2 = 0;  // identical for the two schemes
};

// First-layer rate comparison series: the chosen axis runs over
// lo..hi in `step` increments while the other parameter stays fixed.
std::vector<Fig3Row> fig3_table(const ValidatedConfig&, SweepAxis axis, double fixed,
                                double lo = 0.2, double hi = 0.9, double step = 0.1);

}  // namespace ccsim
