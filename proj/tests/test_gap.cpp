#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ccsim/gap.hpp"
#include "ccsim/io.hpp"
#include "ccsim/rng.hpp"

using namespace ccsim;

TEST_CASE("check_point at the reference configuration") {
    auto cfg = ValidatedConfig::validate({50, 10, 2, 10, 20});
    GapReport rep = check_point(cfg);

    const GapCheck* t1 = rep.find("theorem1_r1");
    REQUIRE(t1 != nullptr);
    // r1_lb = 20/51, r1_ub = 1.5: slack = 20/51 - (1.5/48 - 4)
    CHECK(t1->slack == doctest::Approx(20.0 / 51.0 + 4.0 - 1.5 / 48.0).epsilon(1e-12));
    CHECK(t1->pass);

    const GapCheck* t2 = rep.find("theorem1_r2");
    REQUIRE(t2 != nullptr);
    CHECK(t2->slack == doctest::Approx(30.0 / 51.0 + 4.0 - 4.0 / 20.0).epsilon(1e-12));
    CHECK(t2->pass);

    CHECK(rep.find("theorem1_r2_48") != nullptr);
    CHECK(rep.label.case_id == 'C');
    CHECK(rep.label.boundary);  // regime edge: case checks evaluated informationally
    CHECK(rep.enforced_pass());
}

TEST_CASE("check_point at the zero-memory corner of a square topology") {
    auto cfg = ValidatedConfig::validate({4, 2, 2, 0, 0});
    GapReport rep = check_point(cfg);
    CHECK(rep.bounds.r1_lb == doctest::Approx(2.0).epsilon(1e-12));  // N/2
    CHECK(rep.bounds.r1_ub == doctest::Approx(4.0).epsilon(1e-12));  // K1*K2
    CHECK(rep.label.case_id == 'A');
    const GapCheck* c = rep.find("case_r1_A");
    REQUIRE(c != nullptr);
    CHECK(c->enforced);
    CHECK(c->pass);  // N/2 >= N/24
}

TEST_CASE("check_point refuses ineligible topologies") {
    CHECK_THROWS_AS(check_point(ValidatedConfig::validate({8, 3, 3, 1, 1})),
                    NotGapEligible);
}

TEST_CASE("the fixed witness of the mixed-memory case never beats the scan") {
    // case with the split (s1, s2) choice: N/(2K1) <= M1 < N/4 and
    // N/(4K2) <= M2, inside Regime I
    Rng rng{44, 1};
    NetworkConfig shape{64, 4, 4, 0, 0};
    int tested = 0;
    while (tested < 500) {
        auto unit = [&] { return static_cast<double>(rng.below(1u << 30)) / (1u << 30); };
        double m1 = 8.0 + unit() * 8.0;    // [N/2K1, N/4)
        double m2 = 4.0 + unit() * 10.0;   // [N/4K2, ...]
        if (m1 + 4 * m2 >= 64) continue;   // stay in Regime I
        NetworkConfig c = shape;
        c.helper_memory = m1;
        c.user_memory = m2;
        auto cfg = ValidatedConfig::validate(c);
        if (classify(cfg).case_id != 'E') continue;
        ++tested;

        int s1, s2;
        if (m1 >= m2) {
            s1 = static_cast<int>(std::floor(64.0 / (4 * m1)));
            s2 = static_cast<int>(std::floor(m1 / m2));
        } else {
            s1 = static_cast<int>(std::floor(64.0 / (4 * m2)));
            s2 = 1;
        }
        REQUIRE(s1 >= 1);
        REQUIRE(s1 <= 4);
        REQUIRE(s2 >= 1);
        REQUIRE(s2 <= 4);
        double witness = s1 * s2 * (64.0 - s1 * m1 - s1 * s2 * m2) / (64.0 + s1 * s2);
        CHECK(witness <= lower_bound_r1(cfg).raw + 1e-12);
    }
}

TEST_CASE("sweep of a small square topology is clean") {
    SweepResult sr = sweep({20, 2, 2, 0, 0}, 41);
    CHECK(sr.summary.points == 1681);
    CHECK(sr.summary.theorem_failures == 0);
    CHECK(sr.summary.case_failures == 0);
    CHECK(sr.summary.informational_case_failures == 0);
    CHECK(sr.summary.envelope_failures == 0);
    CHECK(sr.summary.min_slack_theorem_r1 > 0);
}

TEST_CASE("single-point grid degenerates to the origin report") {
    SweepResult sr = sweep({20, 2, 2, 0, 0}, 1);
    REQUIRE(sr.reports.size() == 1);
    CHECK(sr.reports[0].config.helper_memory == 0.0);
    CHECK(sr.reports[0].config.user_memory == 0.0);
    GapReport direct = check_point(ValidatedConfig::validate({20, 2, 2, 0, 0}));
    CHECK(sr.reports[0].bounds.r1_lb == direct.bounds.r1_lb);
    CHECK(sr.reports[0].bounds.r1_ub == direct.bounds.r1_ub);
}

TEST_CASE("sweep is independent of the thread count") {
    SweepResult one = sweep({36, 3, 3, 0, 0}, 21, 1);
    SweepResult many = sweep({36, 3, 3, 0, 0}, 21, 8);
    REQUIRE(one.reports.size() == many.reports.size());
    for (size_t k = 0; k < one.reports.size(); ++k) {
        CHECK(one.reports[k].bounds.r1_lb == many.reports[k].bounds.r1_lb);
        CHECK(one.reports[k].label.case_id == many.reports[k].label.case_id);
    }
}

TEST_CASE("bounds are monotone along the memory axes") {
    // The lower bounds decrease in both memories everywhere. The printed
    // upper-bound envelopes only do so within one regime: crossing into
    // Regime II drops the pure-split-scheme term from the minimum, so the
    // envelope can step up across that boundary.
    int grid = 41;
    SweepResult sr = sweep({36, 3, 3, 0, 0}, grid);
    auto at = [&](int i, int j) -> const GapReport& {
        return sr.reports[static_cast<size_t>(i) * grid + j];
    };
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            if (i + 1 < grid) {
                CHECK(at(i + 1, j).bounds.r1_lb <= at(i, j).bounds.r1_lb + 1e-9);
                if (at(i + 1, j).label.regime == at(i, j).label.regime)
                    CHECK(at(i + 1, j).bounds.r1_ub <= at(i, j).bounds.r1_ub + 1e-9);
            }
            if (j + 1 < grid) {
                CHECK(at(i, j + 1).bounds.r1_lb <= at(i, j).bounds.r1_lb + 1e-9);
                CHECK(at(i, j + 1).bounds.r2_lb <= at(i, j).bounds.r2_lb + 1e-9);
                if (at(i, j + 1).label.regime == at(i, j).label.regime) {
                    CHECK(at(i, j + 1).bounds.r1_ub <= at(i, j).bounds.r1_ub + 1e-9);
                    CHECK(at(i, j + 1).bounds.r2_ub <= at(i, j).bounds.r2_ub + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("gap csv rows line up with the header") {
    auto count_fields = [](const std::string& line) {
        size_t n = 1;
        for (char ch : line)
            if (ch == ',') ++n;
        return n;
    };
    GapReport rep = check_point(ValidatedConfig::validate({20, 2, 2, 5, 5}));
    std::string header = gap_csv_header();
    std::string row = gap_csv_row(rep);
    CHECK(count_fields(header) == count_fields(row));
    CHECK(count_fields(header) == 27);
}
