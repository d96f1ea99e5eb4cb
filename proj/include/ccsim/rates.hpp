#pragma once

#include "ccsim/model.hpp"

namespace ccsim {

// Rate of decentralized multicast delivery over one broadcast link with
// per-receiver memory m, library n, and k receivers:
//
//     (1 - m/n) * (n/m) * (1 - (1 - m/n)^k)
//
// with the limits k at m = 0 and 0 at m = n. Always within [0, min(k, n/m)].
// Throws DomainError outside 0 <= m <= n, n > 0, k >= 1.
double mau_rate(double m, double n, int k);

// S&C scheme: first-layer XORs carry only the parts the destination user has
// not cached, so r1 picks up the extra (1 - M2/N) factor.
RatePair rate_sc(const ValidatedConfig&);

// Per-layer decentralized delivery with no cross-layer pruning.
RatePair rate_scheme_a(const ValidatedConfig&);

struct SchemeBRates {
    RatePair rates;         // r1 as the delivery realizes it (and as the hybrid uses it)
    double printed_r1 = 0;  // the published first-layer expression, reported side by side
};

// Server-to-users delivery through transparent helpers. The published r1
// expression disagrees with both the delivery and the hybrid composition;
// rates.r1 carries the consistent value, printed_r1 the published one.
SchemeBRates rate_scheme_b(const ValidatedConfig&);

// Memory sharing between the S&C scheme (file fraction alpha, user memory
// fraction beta) and scheme B on the remainder.
RatePair rate_hybrid(const ValidatedConfig&, double alpha, double beta);

// Same split with scheme A in place of S&C: the first-layer term lacks the
// (1 - beta*M2/(alpha*N)) factor. r2 is the identical expression.
RatePair rate_generalized(const ValidatedConfig&, double alpha, double beta);

}  // namespace ccsim
