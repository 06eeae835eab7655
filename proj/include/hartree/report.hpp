#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hartree/experiments.hpp"
#include "hartree/gronwall.hpp"
#include "hartree/hierarchy.hpp"
#include "hartree/propagator.hpp"
#include "hartree/scattering.hpp"

namespace hartree {

using json = nlohmann::ordered_json;

/// Writes rows of numbers with round-trip precision under a header line.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_json(const std::filesystem::path& path, const json& value);

json to_json(const NormLedger& ledger);
json to_json(const FitReport& fit);
json to_json(const EvolveDiagnostics& diag);
json to_json(const ScatterResult& r);
json to_json(const GronwallSequence& g);
json to_json(const ScalingResult& r);
json to_json(const BreakdownResult& r);
json to_json(const OffOriginResult& r);
json to_json(const FreeEnergyResult& r);

std::vector<std::vector<double>> csv_rows(const ScalingResult& r);
std::vector<std::vector<double>> csv_rows(const BreakdownResult& r);
std::vector<std::vector<double>> csv_rows(const std::vector<OffOriginRow>& rows);
extern const std::vector<std::string> kScalingColumns;
extern const std::vector<std::string> kBreakdownColumns;
extern const std::vector<std::string> kOffOriginColumns;

}  // namespace hartree
