#pragma once

#include <string>

#include <json.hpp>

#include "ccsim/delivery.hpp"
#include "ccsim/gap.hpp"
#include "ccsim/region.hpp"

namespace ccsim {

inline constexpr int kAllocationDumpVersion = 1;

// Index-set dump for debugging: node -> file -> sorted bit index list.
nlohmann::json allocation_to_json(const ValidatedConfig&, const CacheAllocation&);
CacheAllocation allocation_from_json(const ValidatedConfig&, const nlohmann::json&);

// One record per message: layer, subset bitmask, j where applicable, length.
// Payloads only with include_payloads (hex, LSB-first words).
nlohmann::json transcript_to_json(const Transcript&, bool include_payloads = false);
nlohmann::json outcome_to_json(const DeliveryOutcome&, bool include_payloads = false);

nlohmann::json gap_report_to_json(const GapReport&);
nlohmann::json sweep_summary_to_json(const SweepSummary&);

// Frozen CSV column order; see docs/output-formats.md.
std::string gap_csv_header();
std::string gap_csv_row(const GapReport&);

std::string frontier_csv(const Frontier&, bool header = true);
nlohmann::json frontier_to_json(const Frontier&);

const char* regime_name(Regime);
const char* band_name(MemBand);

}  // namespace ccsim
