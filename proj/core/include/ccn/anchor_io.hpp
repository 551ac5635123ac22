#pragma once

#include <filesystem>
#include <iosfwd>

#include "ccn/anchor_tests.hpp"
#include "ccn/dataset.hpp"

namespace ccn {

/// Anchor CSV: one row per anchor with the raw feature columns only; the
/// intercept is added on load. Throws AnchorError when there are no rows.
AnchorSet anchors_from_csv(const CsvTable& table, double delta = 0.0);
AnchorSet read_anchor_csv(const std::filesystem::path& path, double delta = 0.0);
void write_anchor_csv(std::ostream& out, const AnchorSet& anchors);

/// Sidecar config with `key=value` lines; currently only `delta=<value>`.
/// Returns the delta it declares (0 if absent).
double read_anchor_config(const std::filesystem::path& path);
void write_anchor_config(std::ostream& out, double delta);

}  // namespace ccn
