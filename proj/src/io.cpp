#include "ccsim/io.hpp"

#include <sstream>

namespace ccsim {

using nlohmann::json;

const char* regime_name(Regime r) { return r == Regime::I ? "I" : "II"; }
const char* band_name(MemBand b) { return b == MemBand::Low ? "low" : "high"; }

namespace {

json node_caches_to_json(const std::vector<std::vector<BitVector>>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json files = json::array();
        for (const auto& bits : row) files.push_back(bits.set_indices());
        out.push_back(std::move(files));
    }
    return out;
}

std::vector<std::vector<BitVector>> node_caches_from_json(const json& rows, int64_t fbits) {
    std::vector<std::vector<BitVector>> out;
    for (const auto& row : rows) {
        std::vector<BitVector> files;
        for (const auto& idx : row) {
            BitVector bits(fbits);
            for (const auto& b : idx) bits.set(b.get<int64_t>());
            files.push_back(std::move(bits));
        }
        out.push_back(std::move(files));
    }
    return out;
}

std::string payload_hex(const BitVector& payload) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (uint64_t w : payload.words())
        for (int k = 0; k < 16; ++k) out.push_back(digits[(w >> (4 * k)) & 0xf]);
    return out;
}

}  // namespace

json allocation_to_json(const ValidatedConfig& cfg, const CacheAllocation& alloc) {
    return json{{"version", kAllocationDumpVersion},
                {"n", cfg.n()},
                {"k1", cfg.k1()},
                {"k2", cfg.k2()},
                {"file_bits", alloc.file_bits},
                {"bit_offset", alloc.bit_offset},
                {"helpers", node_caches_to_json(alloc.helper_bits)},
                {"users", node_caches_to_json(alloc.user_bits)}};
}

CacheAllocation allocation_from_json(const ValidatedConfig& cfg, const json& j) {
    if (!j.contains("version") || j["version"].get<int>() != kAllocationDumpVersion)
        throw ConfigError("unsupported allocation dump version");
    if (j["n"].get<int>() != cfg.n() || j["k1"].get<int>() != cfg.k1() ||
        j["k2"].get<int>() != cfg.k2())
        throw ConfigError("allocation dump was produced for a different topology");
    CacheAllocation alloc;
    alloc.files = cfg.n();
    alloc.file_bits = j["file_bits"].get<int64_t>();
    alloc.bit_offset = j["bit_offset"].get<int64_t>();
    alloc.helper_bits = node_caches_from_json(j["helpers"], alloc.file_bits);
    alloc.user_bits = node_caches_from_json(j["users"], alloc.file_bits);
    if (static_cast<int>(alloc.helper_bits.size()) != cfg.k1() ||
        static_cast<int>(alloc.user_bits.size()) != cfg.users())
        throw ConfigError("allocation dump node count mismatch");
    return alloc;
}

json transcript_to_json(const Transcript& t, bool include_payloads) {
    json msgs = json::array();
    for (const auto& m : t.messages) {
        json rec{{"layer", m.layer == Message::Layer::ServerLink ? "server" : "helper"},
                 {"helper", m.helper},
                 {"subsystem", m.subsystem},
                 {"subset_mask", m.subset_mask},
                 {"j", m.j},
                 {"length", m.length}};
        if (include_payloads) rec["payload_hex"] = payload_hex(m.payload);
        msgs.push_back(std::move(rec));
    }
    return json{{"total_bits", t.total_bits()}, {"messages", std::move(msgs)}};
}

json outcome_to_json(const DeliveryOutcome& out, bool include_payloads) {
    json helpers = json::array();
    for (const auto& t : out.helper) helpers.push_back(transcript_to_json(t, include_payloads));
    return json{{"scheme", scheme_name(out.scheme)},
                {"r1_measured", out.measured.r1},
                {"r2_measured", out.measured.r2},
                {"server", transcript_to_json(out.server, include_payloads)},
                {"helpers", std::move(helpers)}};
}

json gap_report_to_json(const GapReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name},
                              {"slack", c.slack},
                              {"pass", c.pass},
                              {"enforced", c.enforced}});
    return json{{"m1", rep.config.helper_memory},
                {"m2", rep.config.user_memory},
                {"regime", regime_name(rep.label.regime)},
                {"band", band_name(rep.label.band)},
                {"case", std::string(1, rep.label.case_id)},
                {"cases", std::string(rep.cases.begin(), rep.cases.end())},
                {"boundary", rep.label.boundary},
                {"alpha_star", rep.bounds.alpha_star},
                {"beta_star", rep.bounds.beta_star},
                {"s1_star", rep.bounds.s1_star},
                {"s2_star", rep.bounds.s2_star},
                {"t_star", rep.bounds.t_star},
                {"r1_lb", rep.bounds.r1_lb},
                {"r1_ub", rep.bounds.r1_ub},
                {"r2_lb", rep.bounds.r2_lb},
                {"r2_ub", rep.bounds.r2_ub},
                {"hybrid_r1", rep.bounds.hybrid_r1},
                {"hybrid_r2", rep.bounds.hybrid_r2},
                {"case_mult", rep.r1_constants.mult},
                {"case_add", rep.r1_constants.add},
                {"checks", std::move(checks)}};
}

json sweep_summary_to_json(const SweepSummary& s) {
    return json{{"points", s.points},
                {"theorem_failures", s.theorem_failures},
                {"case_failures", s.case_failures},
                {"informational_case_failures", s.informational_case_failures},
                {"envelope_failures", s.envelope_failures},
                {"min_slack_theorem_r1", s.min_slack_theorem_r1},
                {"worst_r1_point", {s.worst_r1_m1, s.worst_r1_m2}},
                {"min_slack_theorem_r2", s.min_slack_theorem_r2},
                {"worst_r2_point", {s.worst_r2_m1, s.worst_r2_m2}},
                {"min_slack_case_r1", s.min_slack_case_r1}};
}

std::string gap_csv_header() {
    return "m1,m2,regime,band,case,boundary,alpha_star,beta_star,"
           "r1_lb,r1_ub,r2_lb,r2_ub,hybrid_r1,hybrid_r2,"
           "slack_theorem1_r1,slack_theorem1_r2,slack_case_r1,slack_case_r2,"
           "slack_envelope_r1,slack_envelope_r2,"
           "pass_theorem1_r1,pass_theorem1_r2,pass_case_r1,pass_case_r2,"
           "pass_envelope_r1,pass_envelope_r2,case_enforced";
}

std::string gap_csv_row(const GapReport& rep) {
    auto check = [&](const std::string& name) -> const GapCheck& {
        const GapCheck* c = rep.find(name);
        if (!c) throw std::logic_error("missing gap check " + name);
        return *c;
    };
    const GapCheck& t1 = check("theorem1_r1");
    const GapCheck& t2 = check("theorem1_r2");
    const GapCheck& c1 = check(std::string("case_r1_") + rep.label.case_id);
    const GapCheck& c2 = check("case_r2");
    const GapCheck& e1 = check("envelope_r1");
    const GapCheck& e2 = check("envelope_r2");

    std::ostringstream os;
    os.precision(17);
    os << rep.config.helper_memory << ',' << rep.config.user_memory << ','
       << regime_name(rep.label.regime) << ',' << band_name(rep.label.band) << ','
       << rep.label.case_id << ',' << (rep.label.boundary ? 1 : 0) << ','
       << rep.bounds.alpha_star << ',' << rep.bounds.beta_star << ',' << rep.bounds.r1_lb
       << ',' << rep.bounds.r1_ub << ',' << rep.bounds.r2_lb << ',' << rep.bounds.r2_ub
       << ',' << rep.bounds.hybrid_r1 << ',' << rep.bounds.hybrid_r2 << ',' << t1.slack
       << ',' << t2.slack << ',' << c1.slack << ',' << c2.slack << ',' << e1.slack << ','
       << e2.slack << ',' << t1.pass << ',' << t2.pass << ',' << c1.pass << ',' << c2.pass
       << ',' << e1.pass << ',' << e2.pass << ',' << (c1.enforced ? 1 : 0);
    return os.str();
}

std::string frontier_csv(const Frontier& f, bool header) {
    const char* name = f.scheme == RegionScheme::Hybrid ? "hybrid" : "generalized";
    std::ostringstream os;
    os.precision(17);
    if (header) os << "alpha,beta,r1,r2,scheme\n";
    for (const auto& p : f.points)
        os << p.alpha << ',' << p.beta << ',' << p.r1 << ',' << p.r2 << ',' << name << '\n';
    return os.str();
}

json frontier_to_json(const Frontier& f) {
    json pts = json::array();
    for (const auto& p : f.points)
        pts.push_back(json{{"alpha", p.alpha}, {"beta", p.beta}, {"r1", p.r1}, {"r2", p.r2}});
    return json{{"scheme", f.scheme == RegionScheme::Hybrid ? "hybrid" : "generalized"},
                {"points", std::move(pts)}};
}

}  // namespace ccsim
