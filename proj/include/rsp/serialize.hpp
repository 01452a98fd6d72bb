#pragma once

#include <string>

#include "json.hpp"

#include "rsp/harness.hpp"
#include "rsp/metrics.hpp"

namespace rsp {

std::string bits_string(const std::vector<int>& bits);

// Shortest decimal that round-trips to the same double.
std::string shortest_decimal(double value);

nlohmann::json enumeration_json(const MetricsReport& metrics, const EnumerationResult& result);
std::string enumeration_csv(const EnumerationResult& result);

nlohmann::json sample_json(const SampleStats& stats, double tsp_formula_value);

nlohmann::json sweep_json(const SweepResult& result);
std::string sweep_csv(const SweepResult& result);

nlohmann::json table2_json(const Table2Report& report);
std::string table2_csv(const Table2Report& report);

nlohmann::json state_json(const StateVector& state);
nlohmann::json trace_json(const DesiredStateSpec& desired, const ChannelSpec& channels,
                          const std::vector<int>& i_bits, const std::vector<int>& j_bits,
                          const BranchRecord& success, const std::vector<StateVector>& states);

nlohmann::json violation_json(const Violation& violation);

}  // namespace rsp
