#pragma once

#include <string>

#include "ccn/anchor_tests.hpp"
#include "ccn/logistic_mle.hpp"
#include "ccn/prior_test.hpp"

namespace ccn {

/// TestReport <-> JSON. Parsing then re-serialising is byte-identical.
std::string to_json(const TestReport& report);
TestReport test_report_from_json(const std::string& text);

std::string to_json(const PriorTestReport& report);
PriorTestReport prior_report_from_json(const std::string& text);

std::string to_json(const FittedModel& model);

}  // namespace ccn
