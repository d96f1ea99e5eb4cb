#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccsim/acceptance.hpp"
#include "ccsim/delivery.hpp"
#include "ccsim/gap.hpp"
#include "ccsim/io.hpp"
#include "ccsim/rates.hpp"
#include "ccsim/region.hpp"

using nlohmann::json;
using namespace ccsim;

namespace {

constexpr const char* kVersion = "1.0.0";

json record(const std::string& command, json parameters, json results,
            std::optional<uint64_t> seed = std::nullopt) {
    json rec{{"command", command},
             {"parameters", std::move(parameters)},
             {"results", std::move(results)},
             {"tool_version", kVersion}};
    if (seed) rec["seed"] = *seed;
    return rec;
}

void emit(const json& rec) { std::cout << rec.dump(2) << "\n"; }

struct CommonArgs {
    int n = 0, k1 = 0, k2 = 0;
    double m1 = 0, m2 = 0;
    std::string format = "json";
};

void add_topology(CLI::App* cmd, CommonArgs& a, bool with_memories = true) {
    cmd->add_option("--n", a.n, "library size N")->required();
    cmd->add_option("--k1", a.k1, "helper count K1")->required();
    cmd->add_option("--k2", a.k2, "users per helper K2")->required();
    if (with_memories) {
        cmd->add_option("--m1", a.m1, "helper memory M1 (files)")->required();
        cmd->add_option("--m2", a.m2, "user memory M2 (files)")->required();
    }
    cmd->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

ValidatedConfig make_config(const CommonArgs& a) {
    return ValidatedConfig::validate({a.n, a.k1, a.k2, a.m1, a.m2});
}

json params_json(const CommonArgs& a) {
    return json{{"n", a.n}, {"k1", a.k1}, {"k2", a.k2}, {"m1", a.m1}, {"m2", a.m2}};
}

std::vector<int> read_demands_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open demands file " + path);
    std::vector<int> demands;
    int d;
    while (in >> d) demands.push_back(d);
    return demands;
}

//--------------------------------------------------------------------------

int cmd_rates(const CommonArgs& a, const std::string& scheme, double alpha, double beta) {
    auto cfg = make_config(a);
    json params = params_json(a);
    params["scheme"] = scheme;

    json results;
    RatePair r{};
    if (scheme == "sc") {
        r = rate_sc(cfg);
    } else if (scheme == "a") {
        r = rate_scheme_a(cfg);
    } else if (scheme == "b") {
        SchemeBRates b = rate_scheme_b(cfg);
        r = b.rates;
        results["printed_r1"] = b.printed_r1;
    } else {
        params["alpha"] = alpha;
        params["beta"] = beta;
        r = scheme == "hybrid" ? rate_hybrid(cfg, alpha, beta)
                               : rate_generalized(cfg, alpha, beta);
    }
    results["r1"] = r.r1;
    results["r2"] = r.r2;

    if (a.format == "csv") {
        std::cout << "scheme,r1,r2,printed_r1\n";
        std::cout.precision(17);
        std::cout << scheme << ',' << r.r1 << ',' << r.r2 << ',';
        if (results.contains("printed_r1")) std::cout << results["printed_r1"].get<double>();
        std::cout << "\n";
    } else {
        emit(record("rates", params, results));
    }
    return 0;
}

int cmd_simulate(const CommonArgs& a, const std::string& scheme, double alpha, double beta,
                 int64_t file_bits, uint64_t seed, const std::string& demands_file,
                 const std::string& dump_transcript, bool with_payloads,
                 const std::string& dump_placement, const std::string& load_placement) {
    auto cfg = make_config(a);
    SimulationConfig sim;
    sim.file_bits = file_bits;
    sim.seed = seed;
    sim.demands = demands_file.empty() ? uniform_random_demands(cfg, seed)
                                       : read_demands_file(demands_file);

    DeliveryOutcome out;
    RatePair closed{};
    if (scheme == "hybrid") {
        out = deliver_hybrid(cfg, sim, place_hybrid(cfg, sim, alpha, beta), alpha, beta);
        closed = rate_hybrid(cfg, alpha, beta);
    } else {
        CacheAllocation alloc;
        if (load_placement.empty()) {
            alloc = place(cfg, sim);
        } else {
            std::ifstream f(load_placement);
            if (!f) throw ConfigError("cannot open placement file " + load_placement);
            alloc = allocation_from_json(cfg, json::parse(f));
        }
        if (!dump_placement.empty()) {
            std::ofstream f(dump_placement);
            f << allocation_to_json(cfg, alloc).dump() << "\n";
        }
        if (scheme == "sc") {
            out = deliver_sc(cfg, sim, alloc);
            closed = rate_sc(cfg);
        } else if (scheme == "a") {
            out = deliver_scheme_a(cfg, sim, alloc);
            closed = rate_scheme_a(cfg);
        } else {
            out = deliver_scheme_b(cfg, sim, alloc);
            closed = rate_scheme_b(cfg).rates;
        }
    }

    json params = params_json(a);
    params["scheme"] = scheme;
    params["file_bits"] = file_bits;
    if (scheme == "hybrid") {
        params["alpha"] = alpha;
        params["beta"] = beta;
    }
    json results{{"r1_measured", out.measured.r1},
                 {"r2_measured", out.measured.r2},
                 {"r1_closed_form", closed.r1},
                 {"r2_closed_form", closed.r2},
                 {"r1_relative_error",
                  closed.r1 == 0 ? 0.0 : std::abs(out.measured.r1 - closed.r1) / closed.r1},
                 {"r2_relative_error",
                  closed.r2 == 0 ? 0.0 : std::abs(out.measured.r2 - closed.r2) / closed.r2},
                 {"decode_ok", true},
                 {"server_messages", out.server.messages.size()}};
    if (scheme == "b") results["printed_r1"] = rate_scheme_b(cfg).printed_r1;

    if (!dump_transcript.empty()) {
        json dump{{"server", transcript_to_json(out.server, with_payloads)}};
        json helpers = json::array();
        for (const auto& t : out.helper) helpers.push_back(transcript_to_json(t, with_payloads));
        dump["helpers"] = std::move(helpers);
        std::ofstream f(dump_transcript);
        f << dump.dump() << "\n";
    }
    emit(record("simulate", params, results, seed));
    return 0;
}

int cmd_gap_sweep(const CommonArgs& a, int grid, int threads) {
    NetworkConfig shape{a.n, a.k1, a.k2, 0, 0};
    auto probe = ValidatedConfig::validate(shape);
    if (!probe.gap_eligible())
        throw NotGapEligible("gap sweep needs N >= K1*K2, got N=" + std::to_string(a.n) +
                             " K1*K2=" + std::to_string(a.k1 * a.k2));

    SweepResult sr = sweep(shape, grid, threads);
    if (a.format == "csv") {
        std::cout << gap_csv_header() << "\n";
        for (const auto& rep : sr.reports) std::cout << gap_csv_row(rep) << "\n";
        json s = sweep_summary_to_json(sr.summary);
        std::cout << "# summary " << s.dump() << "\n";
    } else {
        json reports = json::array();
        for (const auto& rep : sr.reports) reports.push_back(gap_report_to_json(rep));
        json params{{"n", a.n}, {"k1", a.k1}, {"k2", a.k2}, {"grid", grid}};
        emit(record("gap-sweep", params,
                    json{{"summary", sweep_summary_to_json(sr.summary)},
                         {"reports", std::move(reports)}}));
    }
    if (!sr.summary.clean()) {
        std::cerr << "gap sweep found " << sr.summary.theorem_failures << " theorem, "
                  << sr.summary.case_failures << " case, " << sr.summary.envelope_failures
                  << " envelope failures\n";
        return 2;
    }
    return 0;
}

int cmd_region(const CommonArgs& a, int grid, const std::string& scheme, bool compare,
               const std::string& fig3_axis, double fixed) {
    auto cfg = make_config(a);
    json params = params_json(a);
    params["grid"] = grid;

    if (!fig3_axis.empty()) {
        SweepAxis axis = fig3_axis == "alpha" ? SweepAxis::Alpha : SweepAxis::Beta;
        auto rows = fig3_table(cfg, axis, fixed);
        if (a.format == "csv") {
            std::cout << fig3_axis << ",r1_hybrid,r1_generalized,r2\n";
            std::cout.precision(17);
            for (const auto& r : rows)
                std::cout << r.varied << ',' << r.r1_hybrid << ',' << r.r1_generalized << ','
                          << r.r2 << "\n";
        } else {
            json table = json::array();
            for (const auto& r : rows)
                table.push_back(json{{fig3_axis, r.varied},
                                     {"r1_hybrid", r.r1_hybrid},
                                     {"r1_generalized", r.r1_generalized},
                                     {"r2", r.r2}});
            params["fig3"] = fig3_axis;
            params["fixed"] = fixed;
            emit(record("region", params, json{{"table", std::move(table)}}));
        }
        return 0;
    }

    if (compare) {
        Frontier h = frontier(cfg, RegionScheme::Hybrid, grid);
        Frontier g = frontier(cfg, RegionScheme::Generalized, grid);
        Dominance hd = dominates(h, g);
        Dominance gd = dominates(g, h);
        json results{{"hybrid_dominates_generalized", hd.dominates},
                     {"generalized_dominates_hybrid", gd.dominates},
                     {"hybrid_frontier", frontier_to_json(h)},
                     {"generalized_frontier", frontier_to_json(g)}};
        if (gd.witness)
            results["witness"] = json{{"alpha", gd.witness->alpha},
                                      {"beta", gd.witness->beta},
                                      {"r1", gd.witness->r1},
                                      {"r2", gd.witness->r2}};
        if (a.format == "csv") {
            std::cout << frontier_csv(h) << frontier_csv(g, false);
            std::cout << "# hybrid_dominates_generalized="
                      << (hd.dominates ? "true" : "false") << "\n";
        } else {
            emit(record("region", params, results));
        }
        return 0;
    }

    RegionScheme rs = scheme == "generalized" ? RegionScheme::Generalized
                                              : RegionScheme::Hybrid;
    Frontier f = frontier(cfg, rs, grid);
    if (a.format == "csv") {
        std::cout << frontier_csv(f);
    } else {
        params["scheme"] = scheme;
        emit(record("region", params, json{{"frontier", frontier_to_json(f)}}));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-layer decentralized coded caching toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonArgs rates_args;
    std::string rates_scheme;
    double rates_alpha = 0.5, rates_beta = 0.5;
    auto* rates_cmd = app.add_subcommand("rates", "closed-form scheme rates");
    add_topology(rates_cmd, rates_args);
    rates_cmd->add_option("--scheme", rates_scheme, "sc|a|b|hybrid|generalized")
        ->required()
        ->check(CLI::IsMember({"sc", "a", "b", "hybrid", "generalized"}));
    rates_cmd->add_option("--alpha", rates_alpha, "file share of subsystem 1");
    rates_cmd->add_option("--beta", rates_beta, "user-memory share of subsystem 1");

    CommonArgs sim_args;
    std::string sim_scheme, demands_file, dump_transcript, dump_placement, load_placement;
    double sim_alpha = 0.5, sim_beta = 0.5;
    int64_t file_bits = 0;
    uint64_t seed = 0;
    bool with_payloads = false;
    auto* sim_cmd = app.add_subcommand("simulate", "placement + coded delivery + decode");
    add_topology(sim_cmd, sim_args);
    sim_cmd->add_option("--scheme", sim_scheme, "sc|a|b|hybrid")
        ->required()
        ->check(CLI::IsMember({"sc", "a", "b", "hybrid"}));
    sim_cmd->add_option("--file-bits", file_bits, "bits per file F")->required();
    sim_cmd->add_option("--seed", seed, "placement/content seed")->required();
    sim_cmd->add_option("--alpha", sim_alpha, "hybrid file share");
    sim_cmd->add_option("--beta", sim_beta, "hybrid memory share");
    sim_cmd->add_option("--demands", demands_file,
                        "demand profile file (K1*K2 indices); omit for uniform-random");
    sim_cmd->add_option("--dump-transcript", dump_transcript, "write transcript JSON here");
    sim_cmd->add_flag("--with-payloads", with_payloads, "include payload hex in dumps");
    sim_cmd->add_option("--dump-placement", dump_placement, "write allocation JSON here");
    sim_cmd->add_option("--load-placement", load_placement,
                        "read the allocation from a dump instead of placing");

    CommonArgs gap_args;
    int gap_grid = 41, gap_threads = 0;
    auto* gap_cmd = app.add_subcommand("gap-sweep", "order-optimality certification sweep");
    add_topology(gap_cmd, gap_args, false);
    gap_cmd->add_option("--grid", gap_grid, "grid points per memory axis");
    gap_cmd->add_option("--threads", gap_threads, "worker threads (default: all cores)");

    CommonArgs region_args;
    int region_grid = 101;
    std::string region_scheme = "hybrid", fig3_axis;
    double fig3_fixed = 0.5;
    bool compare = false;
    auto* region_cmd = app.add_subcommand("region", "achievable rate-region frontiers");
    add_topology(region_cmd, region_args);
    region_cmd->add_option("--grid", region_grid, "grid resolution per (alpha, beta) axis");
    region_cmd->add_option("--scheme", region_scheme, "hybrid|generalized")
        ->check(CLI::IsMember({"hybrid", "generalized"}));
    region_cmd->add_flag("--compare", compare, "emit both frontiers plus dominance verdict");
    region_cmd->add_option("--fig3", fig3_axis, "comparison series over alpha or beta")
        ->check(CLI::IsMember({"alpha", "beta"}));
    region_cmd->add_option("--fixed", fig3_fixed, "fixed value of the other parameter");

    auto* check_cmd = app.add_subcommand("check-all", "run the full verification battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rates_cmd->parsed())
            return cmd_rates(rates_args, rates_scheme, rates_alpha, rates_beta);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_args, sim_scheme, sim_alpha, sim_beta, file_bits, seed,
                                demands_file, dump_transcript, with_payloads, dump_placement,
                                load_placement);
        if (gap_cmd->parsed()) return cmd_gap_sweep(gap_args, gap_grid, gap_threads);
        if (region_cmd->parsed())
            return cmd_region(region_args, region_grid, region_scheme, compare, fig3_axis,
                              fig3_fixed);
        if (check_cmd->parsed()) {
            int failures = run_acceptance_report(std::cout);
            return failures == 0 ? 0 : 2;
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
