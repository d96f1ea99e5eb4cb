#include "ccsim/gap.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <thread>

namespace ccsim {

const GapCheck* GapReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool GapReport::enforced_pass() const {
    for (const auto& c : checks)
        if (c.enforced && !c.pass) return false;
    return true;
}

GapReport check_point(const ValidatedConfig& cfg) {
    if (!cfg.gap_eligible())
        throw NotGapEligible("gap certification needs N >= K1*K2, got N=" +
                             std::to_string(cfg.n()) + " K1*K2=" +
                             std::to_string(cfg.users()));

    GapReport rep;
    rep.config = cfg.config();
    rep.label = classify(cfg);
    rep.cases = matching_cases(cfg);
    rep.bounds = compute_bound_set(cfg);
    rep.r1_constants = case_constants_r1(rep.label.regime, rep.label.band, rep.label.case_id);
    rep.r2_constants = case_constants_r2(cfg.m2(), cfg.n());

    auto add = [&](std::string name, double slack, bool enforced) {
        rep.checks.push_back({std::move(name), slack, slack >= kGapSlackTolerance, enforced});
    };

    const BoundSet& b = rep.bounds;
    add("theorem1_r1", b.r1_lb - (b.r1_ub / 48.0 - 4.0), true);
    add("theorem1_r2", b.r2_lb - (b.r2_ub / 20.0 - 4.0), true);
    add("theorem1_r2_48", b.r2_lb - (b.r2_ub / 48.0 - 4.0), false);
    add("envelope_r1", b.envelope_slack_r1, true);
    add("envelope_r2", b.envelope_slack_r2, true);

    // Case inequalities: enforced only at interior points of a single case.
    bool interior = !rep.label.boundary;
    for (char id : rep.cases) {
        auto k = case_constants_r1(rep.label.regime, rep.label.band, id);
        add(std::string("case_r1_") + id, b.r1_lb - (k.mult * b.r1_ub - k.add), interior);
    }
    bool r2_interior = cfg.m2() != cfg.n() / 2.0;
    add("case_r2", b.r2_lb - (rep.r2_constants.mult * b.r2_ub - rep.r2_constants.add),
        r2_interior);

    return rep;
}

SweepResult sweep(const NetworkConfig& shape, int grid, int threads) {
    if (grid < 1) throw ConfigError("grid must be >= 1");
    if (threads <= 0) {
        if (const char* env = std::getenv("CCSIM_THREADS")) threads = std::atoi(env);
        if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }

    const double n = shape.library_size;
    auto grid_value = [&](int idx) {
        return grid == 1 ? 0.0 : n * static_cast<double>(idx) / (grid - 1);
    };

    SweepResult out;
    out.reports.resize(static_cast<size_t>(grid) * grid);
    auto worker = [&](int first, int last) {
        for (int p = first; p < last; ++p) {
            NetworkConfig c = shape;
            c.helper_memory = grid_value(p / grid);
            c.user_memory = grid_value(p % grid);
            out.reports[static_cast<size_t>(p)] =
                check_point(ValidatedConfig::validate(c));
        }
    };
    int total = grid * grid;
    threads = std::min(threads, total);
    {
        std::vector<std::thread> pool;
        int chunk = (total + threads - 1) / threads;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker, t * chunk, std::min(total, (t + 1) * chunk));
        for (auto& th : pool) th.join();
    }

    SweepSummary& s = out.summary;
    s.points = total;
    s.min_slack_theorem_r1 = std::numeric_limits<double>::infinity();
    s.min_slack_theorem_r2 = std::numeric_limits<double>::infinity();
    s.min_slack_case_r1 = std::numeric_limits<double>::infinity();
    for (const auto& rep : out.reports) {
        for (const auto& c : rep.checks) {
            if (c.name == "theorem1_r1") {
                if (!c.pass) ++s.theorem_failures;
                if (c.slack < s.min_slack_theorem_r1) {
                    s.min_slack_theorem_r1 = c.slack;
                    s.worst_r1_m1 = rep.config.helper_memory;
                    s.worst_r1_m2 = rep.config.user_memory;
                }
            } else if (c.name == "theorem1_r2") {
                if (!c.pass) ++s.theorem_failures;
                if (c.slack < s.min_slack_theorem_r2) {
                    s.min_slack_theorem_r2 = c.slack;
                    s.worst_r2_m1 = rep.config.helper_memory;
                    s.worst_r2_m2 = rep.config.user_memory;
                }
            } else if (c.name.rfind("envelope", 0) == 0) {
                if (!c.pass) ++s.envelope_failures;
            } else if (c.name.rfind("case_", 0) == 0) {
                if (!c.pass) ++(c.enforced ? s.case_failures
                                           : s.informational_case_failures);
                if (c.enforced && c.name.rfind("case_r1", 0) == 0)
                    s.min_slack_case_r1 = std::min(s.min_slack_case_r1, c.slack);
            }
        }
    }
    return out;
}

}  // namespace ccsim
