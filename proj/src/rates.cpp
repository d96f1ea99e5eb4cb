#include "ccsim/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ccsim {

double mau_rate(double m, double n, int k) {
    if (!(n > 0) || !std::isfinite(m) || m < 0 || m > n || k < 1)
        throw DomainError("mau_rate needs 0 <= m <= n, n > 0, k >= 1 (m=" +
                          std::to_string(m) + " n=" + std::to_string(n) +
                          " k=" + std::to_string(k) + ")");
    if (m == 0) return static_cast<double>(k);
    if (m == n) return 0.0;
    double q = m / n;
    // 1 - (1-q)^k, stable for small q
    double hit = -std::expm1(static_cast<double>(k) * std::log1p(-q));
    return (1.0 - q) * (n / m) * hit;
}

namespace {

// Subsystem variant: an empty sub-library or a memory covering the whole
// sub-library yields rate 0 instead of a domain error.
double capped_mau(double m, double n, int k) {
    if (!(n > 0)) return 0.0;
    if (m >= n) return 0.0;
    return mau_rate(m, n, k);
}

double clamp0(double x) { return x > 0 ? x : 0.0; }

struct HybridTerms {
    double term1_base;  // first-layer term without the cross-layer split factor
    double split;       // the (1 - beta*M2/(alpha*N)) factor, clamped to [0, 1]
    double term2;       // scheme-B term, shared by both schemes
    double r2;          // second-layer rate, identical for both schemes
};

// Both memory-sharing schemes assemble from the same parts so that
// hybrid r1 = term1_base*split + term2 <= term1_base + term2 = generalized r1
// holds exactly in floating point, and their r2 is the same value.
HybridTerms hybrid_terms(const ValidatedConfig& cfg, double alpha, double beta) {
    if (!std::isfinite(alpha) || alpha < 0 || alpha > 1 || !std::isfinite(beta) ||
        beta < 0 || beta > 1)
        throw InvalidShare("alpha and beta must lie in [0, 1], got alpha=" +
                           std::to_string(alpha) + " beta=" + std::to_string(beta));

    double n = cfg.n();
    double n1 = alpha * n, n2 = (1.0 - alpha) * n;
    double mu1 = beta * cfg.m2(), mu2 = (1.0 - beta) * cfg.m2();

    HybridTerms t{0, 1.0, 0, 0};
    if (alpha > 0) {
        t.split = std::min(1.0, clamp0(1.0 - mu1 / n1));
        t.term1_base = alpha * cfg.k2() * capped_mau(cfg.m1(), n1, cfg.k1());
        t.r2 += alpha * capped_mau(mu1, n1, cfg.k2());
    }
    if (alpha < 1) {
        t.term2 = (1.0 - alpha) * capped_mau(mu2, n2, cfg.users());
        t.r2 += (1.0 - alpha) * capped_mau(mu2, n2, cfg.k2());
    }
    return t;
}

}  // namespace

RatePair rate_sc(const ValidatedConfig& cfg) {
    double n = cfg.n();
    double r1 = cfg.k2() * (1.0 - cfg.m2() / n) * mau_rate(cfg.m1(), n, cfg.k1());
    return {r1, mau_rate(cfg.m2(), n, cfg.k2())};
}

RatePair rate_scheme_a(const ValidatedConfig& cfg) {
    double n = cfg.n();
    return {cfg.k2() * mau_rate(cfg.m1(), n, cfg.k1()), mau_rate(cfg.m2(), n, cfg.k2())};
}

SchemeBRates rate_scheme_b(const ValidatedConfig& cfg) {
    double n = cfg.n();
    SchemeBRates out;
    out.rates = {mau_rate(cfg.m2(), n, cfg.users()), mau_rate(cfg.m2(), n, cfg.k2())};
    out.printed_r1 = cfg.k2() * mau_rate(cfg.m1(), n, cfg.k1());
    return out;
}

RatePair rate_hybrid(const ValidatedConfig& cfg, double alpha, double beta) {
    auto t = hybrid_terms(cfg, alpha, beta);
    return {t.term1_base * t.split + t.term2, t.r2};
}

RatePair rate_generalized(const ValidatedConfig& cfg, double alpha, double beta) {
    auto t = hybrid_terms(cfg, alpha, beta);
    return {t.term1_base + t.term2, t.r2};
}

}  // namespace ccsim
