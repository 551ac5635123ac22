#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccn::cli {

/// Process exit codes. Each failure family has its own code; the matching
/// machine-readable record is written to the error stream as JSON.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kParse = 3,
    kIo = 4,
    kDimension = 5,
    kSeparability = 6,
    kAnchor = 7,
    kParameter = 8,
    kNumerical = 9,
    kDegenerateVariance = 10,
    kDataset = 11,
    kApproximation = 12,
    kExperiment = 13,
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Machine output goes to `out`, the human verdict line and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccn::cli
