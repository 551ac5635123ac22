#include "ccn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ccn/errors.hpp"
#include "ccn/experiment_io.hpp"
#include "ccn/noise_model.hpp"
#include "ccn/random.hpp"
#include "ccn/svg_plots.hpp"

namespace ccn {

namespace {

// Stream tags keep data, label noise and anchors on unrelated streams.
constexpr std::uint64_t kDataTag = 0xda7a;
constexpr std::uint64_t kNoiseTag = 0x9015e;
constexpr std::uint64_t kAnchorTag = 0xa2c4;

std::optional<FittedModel> try_fit(const Dataset& data, const FitOptions& options) {
    try {
        return fit(data, options);
    } catch (const Error&) {
        return std::nullopt;
    }
}

FitOutcome test_fit(const FittedModel& model, const AnchorSet& anchors, double significance) {
    FitOutcome out;
    const TestReport report = z_test(model, anchors, significance);
    out.p_value = report.p_value;
    out.eta_bar = report.eta_bar;
    out.variance = report.variance;
    out.quad_form = quadratic_form(model, anchors.centroid());
    out.iterations = model.iterations;
    out.grad_norm = model.grad_norm;
    return out;
}

FitOutcome failed_outcome() {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    FitOutcome out;
    out.p_value = out.eta_bar = out.variance = out.quad_form = out.grad_norm = nan;
    out.iterations = -1;
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path cell_file(const std::filesystem::path& dir, std::size_t index) {
    return dir / "cells" / ("cell_" + std::to_string(index) + ".csv");
}

}  // namespace

NoisePair realize_gap(double gap) { return {0.0, std::fabs(gap)}; }

void ExperimentConfig::validate() const {
    if (n_grid.empty() || noise_gaps.empty() || k_grid.empty() || delta_grid.empty()) {
        throw ParameterError("experiment grids must be non-empty");
    }
    for (long n : n_grid) {
        if (n < 2) throw ParameterError("sample sizes must be at least 2");
    }
    for (const auto& pair : noise_gaps) NoiseSpec::class_conditional(pair.alpha, pair.beta);
    for (long k : k_grid) {
        if (k < 1) throw ParameterError("anchor counts must be at least 1");
    }
    for (double d : delta_grid) {
        if (!(d >= 0.0 && d < 0.5)) throw ParameterError("delta values must lie in [0, 0.5)");
    }
    if (runs < 1) throw ParameterError("runs must be at least 1");
    if (!(significance > 0.0 && significance < 1.0)) throw ParameterError("significance must lie in (0, 1)");
    if (!(anchor_half_width > 0.0)) throw ParameterError("anchor_half_width must be positive");
    if (!(max_failure_fraction >= 0.0 && max_failure_fraction <= 1.0)) {
        throw ParameterError("max_failure_fraction must lie in [0, 1]");
    }
}

std::vector<CellCoord> enumerate_cells(const ExperimentConfig& config) {
    std::vector<CellCoord> cells;
    cells.reserve(config.cell_count());
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        for (std::size_t gi = 0; gi < config.noise_gaps.size(); ++gi) {
            for (std::size_t ki = 0; ki < config.k_grid.size(); ++ki) {
                for (std::size_t di = 0; di < config.delta_grid.size(); ++di) {
                    CellCoord c;
                    c.index = cells.size();
                    c.n_index = ni;
                    c.noise_index = gi;
                    c.k_index = ki;
                    c.delta_index = di;
                    c.n = config.n_grid[ni];
                    c.noise = config.noise_gaps[gi];
                    c.k = config.k_grid[ki];
                    c.delta = config.delta_grid[di];
                    cells.push_back(c);
                }
            }
        }
    }
    return cells;
}

const char* to_string(RunStatus status) noexcept {
    switch (status) {
        case RunStatus::Ok: return "ok";
        case RunStatus::CleanFitFailed: return "clean_fit_failed";
        case RunStatus::NoisyFitFailed: return "noisy_fit_failed";
    }
    return "unknown";
}

RunStatus run_status_from_string(const std::string& text) {
    if (text == "ok") return RunStatus::Ok;
    if (text == "clean_fit_failed") return RunStatus::CleanFitFailed;
    if (text == "noisy_fit_failed") return RunStatus::NoisyFitFailed;
    throw ParseError("unknown run status '" + text + "'");
}

RunFits fit_run(const ExperimentConfig& config, const CellCoord& cell, long run) {
    const auto group = static_cast<std::uint64_t>(cell.group(config));
    const auto r = static_cast<std::uint64_t>(run);
    FitOptions options;
    options.ridge_fallback = config.ridge_fallback;

    RunFits fits;
    const Dataset clean = generate(config.setup, cell.n, stream_key(config.root_seed, {kDataTag, group, r}));
    const NoiseSpec noise = NoiseSpec::class_conditional(cell.noise.alpha, cell.noise.beta);
    std::vector<int> noisy_labels =
        corrupt_labels(clean.labels(), noise, stream_key(config.root_seed, {kNoiseTag, group, r}));
    fits.clean = try_fit(clean, options);
    try {
        fits.noisy = try_fit(clean.with_labels(std::move(noisy_labels)), options);
    } catch (const DatasetError&) {
        // corruption left a single class
    }
    return fits;
}

RunRecord evaluate_run(const ExperimentConfig& config, const CellCoord& cell, long run, const RunFits& fits) {
    RunRecord rec;
    rec.cell = cell.index;
    rec.run = run;
    rec.clean = failed_outcome();
    rec.noisy = failed_outcome();
    if (!fits.clean) {
        rec.status = RunStatus::CleanFitFailed;
        return rec;
    }
    if (!fits.noisy) {
        rec.status = RunStatus::NoisyFitFailed;
        return rec;
    }
    const AnchorSet sampled = sample_anchors(
        config.setup, cell.k, cell.delta, config.anchor_half_width,
        stream_key(config.root_seed, {kAnchorTag, static_cast<std::uint64_t>(cell.index), static_cast<std::uint64_t>(run)}));
    const AnchorSet anchors = config.test_uses_delta ? sampled : sampled.with_delta(0.0);
    rec.clean = test_fit(*fits.clean, anchors, config.significance);
    rec.noisy = test_fit(*fits.noisy, anchors, config.significance);
    return rec;
}

CellSummary summarize_cell(const ExperimentConfig& config, const CellCoord& cell,
                           const std::vector<RunRecord>& records) {
    CellSummary s;
    s.coord = cell;
    s.runs = static_cast<long>(records.size());
    std::vector<double> clean_p, noisy_p, v, quad;
    for (const auto& rec : records) {
        if (!rec.ok()) {
            ++s.failed_runs;
            continue;
        }
        clean_p.push_back(rec.clean.p_value);
        noisy_p.push_back(rec.noisy.p_value);
        const FitOutcome& src = config.power_variance == PowerVarianceSource::Noisy ? rec.noisy : rec.clean;
        v.push_back(src.variance);
        quad.push_back(src.quad_form);
    }
    s.failed = static_cast<double>(s.failed_runs) > config.max_failure_fraction * static_cast<double>(s.runs);
    s.clean_p = box_stats(clean_p);
    s.noisy_p = box_stats(noisy_p);
    s.clean_reject_rate = fraction_below(clean_p, config.significance);
    s.noisy_reject_rate = fraction_below(noisy_p, config.significance);
    if (!v.empty()) {
        s.mean_v = mean(v);
        s.mean_v_tilde = alternative_variance(mean(quad), cell.noise.alpha, cell.noise.beta);
        s.analytic_power = power(cell.noise.alpha, cell.noise.beta, s.mean_v, s.mean_v_tilde, config.significance);
    } else {
        s.mean_v = s.mean_v_tilde = s.analytic_power = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

CellResult run_cell(const ExperimentConfig& config, const CellCoord& cell) {
    config.validate();
    CellResult result;
    result.runs.reserve(static_cast<std::size_t>(config.runs));
    for (long run = 0; run < config.runs; ++run) {
        result.runs.push_back(evaluate_run(config, cell, run, fit_run(config, cell, run)));
    }
    result.summary = summarize_cell(config, cell, result.runs);
    return result;
}

ExperimentSummary run_grid(const ExperimentConfig& config, const GridOptions& options) {
    config.validate();
    const auto cells = enumerate_cells(config);
    const std::size_t groups = config.n_grid.size() * config.noise_gaps.size();
    const auto runs = static_cast<std::size_t>(config.runs);

    std::vector<std::vector<std::size_t>> cells_of_group(groups);
    for (const auto& c : cells) cells_of_group[c.group(config)].push_back(c.index);

    std::vector<std::vector<RunRecord>> records(cells.size());
    std::set<std::size_t> completed;

    const auto& dir = options.output_dir;
    const std::string config_text = config_to_json(config);
    if (dir) {
        std::filesystem::create_directories(*dir / "cells");
        const auto config_path = *dir / "config.json";
        const auto manifest_path = *dir / "manifest.txt";
        if (options.resume && std::filesystem::exists(manifest_path)) {
            if (!std::filesystem::exists(config_path) || read_text(config_path) != config_text) {
                throw ExperimentError("resume requested but " + dir->string() +
                                      " was produced by a different configuration");
            }
            std::istringstream manifest(read_text(manifest_path));
            std::size_t index;
            while (manifest >> index) {
                if (index >= cells.size()) continue;
                std::ifstream in(cell_file(*dir, index));
                if (!in) continue;
                auto rows = read_run_rows(in);
                if (rows.size() != runs) continue;
                records[index] = std::move(rows);
                completed.insert(index);
            }
        } else {
            write_text(manifest_path, "");
        }
        write_text(config_path, config_text);
    }

    std::vector<std::size_t> pending_groups;
    for (std::size_t g = 0; g < groups; ++g) {
        const auto& members = cells_of_group[g];
        const bool done = std::all_of(members.begin(), members.end(), [&](std::size_t i) { return completed.count(i) > 0; });
        if (!done) {
            pending_groups.push_back(g);
            for (std::size_t i : members) records[i].assign(runs, RunRecord{});
        }
    }

    // Persist a finished group so an interrupted grid can resume from it.
    std::mutex io_mutex;
    auto persist_group = [&](std::size_t group) {
        if (!dir) return;
        std::lock_guard lock(io_mutex);
        std::ofstream manifest(*dir / "manifest.txt", std::ios::app);
        for (std::size_t i : cells_of_group[group]) {
            std::ostringstream rows;
            write_runs_header(rows);
            for (const auto& rec : records[i]) write_run_row(rows, cells[i], rec);
            write_text(cell_file(*dir, i), rows.str());
            manifest << i << '\n';
        }
        if (!manifest) throw IoError("cannot update manifest in " + dir->string());
    };

    // One task per (group, run): fit once, evaluate every cell of the group.
    const std::size_t total = pending_groups.size() * runs;
    std::vector<std::atomic<std::size_t>> remaining(pending_groups.size());
    for (auto& r : remaining) r.store(runs);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const std::size_t slot = task / runs;
            const std::size_t group = pending_groups[slot];
            const auto run = static_cast<long>(task % runs);
            try {
                const auto& members = cells_of_group[group];
                const RunFits fits = fit_run(config, cells[members.front()], run);
                for (std::size_t i : members) {
                    records[i][static_cast<std::size_t>(run)] = evaluate_run(config, cells[i], run, fits);
                }
                if (remaining[slot].fetch_sub(1) == 1) persist_group(group);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
            const std::size_t finished = done.fetch_add(1) + 1;
            if (options.progress) {
                std::lock_guard lock(progress_mutex);
                options.progress(finished, total);
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentSummary summary;
    summary.cells.reserve(cells.size());
    for (const auto& c : cells) summary.cells.push_back(summarize_cell(config, c, records[c.index]));
    for (auto& recs : records) {
        for (auto& r : recs) summary.runs.push_back(std::move(r));
    }

    if (dir) {
        std::ostringstream runs_csv, cells_csv;
        write_runs_csv(runs_csv, config, summary.runs);
        write_cells_csv(cells_csv, summary.cells);
        write_text(*dir / "runs.csv", runs_csv.str());
        write_text(*dir / "cells.csv", cells_csv.str());
        if (options.plots) {
            write_box_plot_panels(config, summary, *dir);
            std::vector<long> ks(config.k_grid.begin(), config.k_grid.end());
            write_power_curve_svg(power_curves(0.1, 0.1, config.significance, ks), *dir / "power_curves.svg");
        }
    }
    return summary;
}

}  // namespace ccn
