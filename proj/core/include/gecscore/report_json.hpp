#pragma once

#include <string>
#include <vector>

#include "gecscore/attacks.hpp"
#include "gecscore/calibration.hpp"
#include "gecscore/detection.hpp"
#include "gecscore/harness.hpp"

// JSON renderings of the report types. Non-finite numbers (the +/-inf
// threshold sentinels) are written as the strings "inf" and "-inf".
namespace gecscore::report {

std::string to_json(const detection::Verdict& verdict);
std::string to_json(const detection::BatchEntry& entry);
std::string to_json(const calibration::Threshold& threshold, const similarity::MetricSpec& metric);
std::string to_json(const harness::ClassStats& stats);
std::string to_json(const harness::EvalReport& report);
std::string to_json(const attacks::RobustnessReport& report);
std::string to_json(const std::vector<harness::AblationRow>& rows);

}  // namespace gecscore::report
