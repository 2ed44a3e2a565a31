#pragma once

#include <string>
#include <vector>

#include "crownlab/io.hpp"

namespace crownlab
{

struct CheckResult
{
    std::string name;
    std::string anchor;  // the statement being checked
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    json details = json::object();
};

struct CriterionResult
{
    int id = 0;
    std::string title;
    bool pass = false;
    double runtime_ms = 0.0;
    double runtime_limit_ms = 0.0;
    std::vector<CheckResult> checks;
};

inline constexpr int criterion_count = 9;

/// Criteria 1..8 are computed in-process; 9 (report determinism) needs the CLI and is run by
/// the acceptance driver.
CriterionResult run_criterion(int id, const RunConfig& cfg);

/// Criteria 1..8, run concurrently, assembled in order.
std::vector<CriterionResult> run_suite(const RunConfig& cfg);

json check_json(const CheckResult& c);
/// Runtimes are left out unless asked for, so identical runs give identical bytes.
json suite_json(const std::vector<CriterionResult>& results, const RunConfig& cfg, bool timings = false);

}  // namespace crownlab
