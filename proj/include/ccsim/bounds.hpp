#pragma once

#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

// Memory regimes of the gap analysis. The regime boundary M1 + K2*M2 = N is
// assigned to Regime II; the band boundary M1 = N/2 to the high band.
enum class Regime { I, II };          // M1 + K2*M2 < N vs >= N
enum class MemBand { Low, High };     // M1 < N/2 vs >= N/2

struct RegimeLabel {
    Regime regime;
    MemBand band;
    char case_id;   // sub-region case letter within (regime, band)
    bool boundary;  // point sits on a shared case / regime / band boundary
};

struct CaseConstants {
    double mult = 1;
    double add = 0;
};

struct LowerBound1 {
    double rate;  // floored at 0
    int s1, s2;   // argmax witness of the raw maximization
    double raw;   // unfloored maximum (can be negative)
};
struct LowerBound2 {
    double rate;
    int t;
    double raw;
};

// max over s1 in [1..K1], s2 in [1..K2] of s1*s2*(N - s1*M1 - s1*s2*M2)/(N + s1*s2),
// by exhaustive scan; ties keep the first (s1, s2) in scan order.
LowerBound1 lower_bound_r1(const ValidatedConfig&);

// max over t in [1..K2] of t*(N - t*M2)/(N + t).
LowerBound2 lower_bound_r2(const ValidatedConfig&);

// Case letter per the per-sub-region inequality tables. Shared closed
// boundaries go to the later case; `boundary` is set when more than one case
// (or a regime/band edge) matches.
RegimeLabel classify(const ValidatedConfig&);

// Every case whose closed-interval predicate holds at this point, in listing
// order. classify() picks the last entry.
std::vector<char> matching_cases(const ValidatedConfig&);

CaseConstants case_constants_r1(Regime, MemBand, char case_id);
CaseConstants case_constants_r2(double m2, double n);

struct BoundSet {
    double r1_lb = 0, r2_lb = 0;
    double r1_ub = 0, r2_ub = 0;
    double alpha_star = 0, beta_star = 0;  // tuple minimizing the hybrid r1
    int s1_star = 1, s2_star = 1, t_star = 1;
    double hybrid_r1 = 0, hybrid_r2 = 0;   // hybrid rate at (alpha*, beta*)
    double envelope_slack_r1 = 0;          // r1_ub - hybrid_r1
    double envelope_slack_r2 = 0;

    bool envelope_ok() const {
        return envelope_slack_r1 >= -1e-9 && envelope_slack_r2 >= -1e-9;
    }
};

// Bounds, tuple choice, and envelope slacks; records envelope violations in
// the slacks instead of throwing (sweeps treat failures as data).
BoundSet compute_bound_set(const ValidatedConfig&);

// Same, but throws EnvelopeViolation if the achieved rate at the chosen
// tuple exceeds its closed-form envelope.
BoundSet upper_bounds(const ValidatedConfig&);

}  // namespace ccsim
