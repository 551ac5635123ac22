#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccn/experiment.hpp"

namespace ccn {

/// Experiment configuration as JSON. Keys mirror ExperimentConfig fields;
/// unknown keys are rejected. `noise_gaps` entries are either a gap
/// alpha - beta (realised by realize_gap) or an explicit [alpha, beta] pair.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig read_config(const std::filesystem::path& path);
/// Canonical JSON (explicit pairs, fixed key order).
std::string config_to_json(const ExperimentConfig& config);

void write_runs_header(std::ostream& out);
void write_run_row(std::ostream& out, const CellCoord& cell, const RunRecord& record);
void write_runs_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<RunRecord>& runs);
/// Parses rows written by write_run_row (used to resume a grid).
std::vector<RunRecord> read_run_rows(std::istream& in);

void write_cells_csv(std::ostream& out, const std::vector<CellSummary>& cells);

}  // namespace ccn
