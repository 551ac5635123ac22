#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccn/anchor_tests.hpp"
#include "ccn/logistic_mle.hpp"
#include "ccn/summary_stats.hpp"
#include "ccn/synth.hpp"

namespace ccn {

struct NoisePair {
    double alpha = 0.0;
    double beta = 0.0;
    friend bool operator==(const NoisePair&, const NoisePair&) = default;
};

/// Default realisation of a noise-rate gap g = alpha - beta: alpha = 0,
/// beta = |g|. The statistic depends on the gap only through |beta - alpha|.
NoisePair realize_gap(double gap);

enum class PowerVarianceSource { Noisy, Clean };

struct ExperimentConfig {
    std::vector<long> n_grid{500, 1000, 2000, 5000};
    std::vector<NoisePair> noise_gaps{{0.0, 0.05}, {0.0, 0.10}, {0.0, 0.20}};
    std::vector<long> k_grid{1, 2, 4, 8, 16, 32};
    std::vector<double> delta_grid{0.0, 0.05, 0.10};
    long runs = 500;
    double significance = 0.05;
    std::uint64_t root_seed = 1;
    GaussianSetup setup{};
    double anchor_half_width = 4.0;
    /// When false the test is run as a practitioner who does not know delta
    /// would run it: strict null variance even for relaxed anchors.
    bool test_uses_delta = false;
    PowerVarianceSource power_variance = PowerVarianceSource::Noisy;
    bool ridge_fallback = false;
    double max_failure_fraction = 0.05;

    /// Throws ParameterError on empty grids or out-of-range values.
    void validate() const;
    std::size_t cell_count() const noexcept {
        return n_grid.size() * noise_gaps.size() * k_grid.size() * delta_grid.size();
    }
};

struct CellCoord {
    std::size_t index = 0;
    std::size_t n_index = 0;
    std::size_t noise_index = 0;
    std::size_t k_index = 0;
    std::size_t delta_index = 0;
    long n = 0;
    NoisePair noise{};
    long k = 0;
    double delta = 0.0;

    /// Cells sharing (n, noise) share the generated data and fits for a run.
    std::size_t group(const ExperimentConfig& config) const noexcept {
        return n_index * config.noise_gaps.size() + noise_index;
    }
};

/// Cells in lexicographic (n, noise, k, delta) order; index = position.
std::vector<CellCoord> enumerate_cells(const ExperimentConfig& config);

enum class RunStatus { Ok, CleanFitFailed, NoisyFitFailed };
const char* to_string(RunStatus status) noexcept;
RunStatus run_status_from_string(const std::string& text);

/// Test outcome for one fitted model in one run.
struct FitOutcome {
    double p_value = 0.0;
    double eta_bar = 0.0;
    double variance = 0.0;   // null variance used by the test
    double quad_form = 0.0;  // x_bar^T H^{-1} x_bar
    int iterations = 0;
    double grad_norm = 0.0;
};

struct RunRecord {
    std::size_t cell = 0;
    long run = 0;
    RunStatus status = RunStatus::Ok;
    FitOutcome clean{};
    FitOutcome noisy{};

    bool ok() const noexcept { return status == RunStatus::Ok; }
};

struct CellSummary {
    CellCoord coord{};
    long runs = 0;
    long failed_runs = 0;
    bool failed = false;
    BoxStats clean_p{};
    BoxStats noisy_p{};
    double clean_reject_rate = 0.0;
    double noisy_reject_rate = 0.0;
    double mean_v = 0.0;        // mean null variance from the power-variance source fit
    double mean_v_tilde = 0.0;  // mean alternative variance from the same fit
    double analytic_power = 0.0;
};

struct CellResult {
    CellSummary summary;
    std::vector<RunRecord> runs;
};

struct ExperimentSummary {
    std::vector<CellSummary> cells;
    std::vector<RunRecord> runs;  // ordered by (cell, run)
};

/// Both fits for one run of one (n, noise) group.
struct RunFits {
    std::optional<FittedModel> clean;
    std::optional<FittedModel> noisy;
};

/// Generates clean data, corrupts it, and fits both. Fit failures leave the
/// corresponding optional empty.
RunFits fit_run(const ExperimentConfig& config, const CellCoord& cell, long run);

/// Samples the cell's anchors for `run` and tests both fits.
RunRecord evaluate_run(const ExperimentConfig& config, const CellCoord& cell, long run, const RunFits& fits);

/// Aggregates per-run records into box statistics, rejection rates and
/// analytic power.
CellSummary summarize_cell(const ExperimentConfig& config, const CellCoord& cell,
                           const std::vector<RunRecord>& records);

/// All runs of one cell, computed from scratch.
CellResult run_cell(const ExperimentConfig& config, const CellCoord& cell);

struct GridOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
    /// When set, runs.csv, cells.csv and per-cell files are written here.
    std::optional<std::filesystem::path> output_dir;
    bool resume = false;
    bool plots = false;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

ExperimentSummary run_grid(const ExperimentConfig& config, const GridOptions& options = {});

}  // namespace ccn
