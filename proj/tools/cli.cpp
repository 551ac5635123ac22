#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "ccn/anchor_io.hpp"
#include "ccn/anchor_tests.hpp"
#include "ccn/errors.hpp"
#include "ccn/experiment.hpp"
#include "ccn/experiment_io.hpp"
#include "ccn/logistic_mle.hpp"
#include "ccn/noise_model.hpp"
#include "ccn/prior_test.hpp"
#include "ccn/random.hpp"
#include "ccn/report_json.hpp"
#include "ccn/svg_plots.hpp"
#include "ccn/synth.hpp"

namespace ccn::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kSeedEnv = "CCN_SEED";

int exit_code_for(const Error& e) {
    const std::string kind = e.kind();
    if (kind == "parse") return kParse;
    if (kind == "io") return kIo;
    if (kind == "dimension") return kDimension;
    if (kind == "separability") return kSeparability;
    if (kind == "anchor") return kAnchor;
    if (kind == "parameter" || kind == "domain") return kParameter;
    if (kind == "numerical") return kNumerical;
    if (kind == "degenerate_variance") return kDegenerateVariance;
    if (kind == "dataset") return kDataset;
    if (kind == "approximation") return kApproximation;
    if (kind == "experiment") return kExperiment;
    return kInternal;
}

int report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
    ojson rec;
    rec["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    err << rec.dump() << '\n';
    return code;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnv)) {
        try {
            return std::stoull(env);
        } catch (const std::logic_error&) {
            throw ParameterError(std::string(kSeedEnv) + " must be a non-negative integer");
        }
    }
    return 0;
}

void emit(std::ostream& out, const std::string& json, const std::string& out_path) {
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw IoError("cannot write " + out_path);
        file << json << '\n';
    }
    out << json << '\n';
}

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot write " + path);
    return file;
}

std::string fmt(double x) {
    std::ostringstream ss;
    ss << std::setprecision(4) << x;
    return ss.str();
}

Vector parse_vector(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())); }

// ---- fit -------------------------------------------------------------------

struct FitArgs {
    std::string dataset;
    std::string out;
    bool ridge = false;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
    const Dataset data = read_dataset_csv(a.dataset);
    FitOptions opts;
    opts.ridge_fallback = a.ridge;
    const FittedModel model = fit(data, opts);
    emit(out, to_json(model), a.out);
    err << (model.converged ? "converged" : "did not converge") << " after " << model.iterations
        << " Newton iterations (max |score| = " << fmt(model.grad_norm) << ")\n";
    return kOk;
}

// ---- test ------------------------------------------------------------------

struct TestArgs {
    std::string dataset;
    std::string anchors;
    std::string anchor_config;
    std::optional<double> delta;
    double level = 0.05;
    bool ridge = false;
    std::string out;
};

int cmd_test(const TestArgs& a, std::ostream& out, std::ostream& err) {
    if (!(a.level > 0.0 && a.level < 1.0)) throw ParameterError("--alpha-level must lie in (0, 1)");
    double delta = a.anchor_config.empty() ? 0.0 : read_anchor_config(a.anchor_config);
    if (a.delta) delta = *a.delta;
    const AnchorSet anchors = read_anchor_csv(a.anchors, delta);
    const Dataset data = read_dataset_csv(a.dataset);
    if (anchors.dim() != data.dim()) {
        throw DimensionError("anchors have " + std::to_string(anchors.dim() - 1) + " feature columns, dataset has " +
                             std::to_string(data.dim() - 1));
    }
    FitOptions opts;
    opts.ridge_fallback = a.ridge;
    const FittedModel model = fit(data, opts);
    const TestReport report = z_test(model, anchors, a.level);
    emit(out, to_json(report), a.out);
    err << (report.reject ? "reject" : "retain") << " H0 (alpha = beta) at level " << fmt(a.level)
        << ": p = " << fmt(report.p_value) << ", eta_bar = " << fmt(report.eta_bar) << ", retain region ["
        << fmt(report.retain_lower) << ", " << fmt(report.retain_upper) << "]\n";
    return kOk;
}

// ---- power -----------------------------------------------------------------

struct PowerArgs {
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> v;
    std::optional<double> v_tilde;
    double level = 0.05;
    long k = 1;
    bool from_model = false;
    std::string dataset;
    std::string anchors;
    std::string curve;
    std::string svg;
    std::vector<long> ks{1, 2, 4, 8, 16, 32};
    double max_gap = 0.9;
    int steps = 90;
};

int cmd_power(const PowerArgs& a, std::ostream& out, std::ostream& err) {
    NoiseSpec::class_conditional(a.alpha, a.beta);
    double v = 0.0;
    double v_tilde = 0.0;
    long k = a.k;
    if (a.from_model) {
        if (a.dataset.empty() || a.anchors.empty()) {
            throw ParameterError("--from-model needs --dataset and --anchors");
        }
        const AnchorSet anchors = read_anchor_csv(a.anchors);
        const FittedModel model = fit(read_dataset_csv(a.dataset));
        v = anchor_mean_and_variance(model, anchors).v_bar;
        v_tilde = alternative_variance(16.0 * v, a.alpha, a.beta);
        k = 1;  // v already describes the k-anchor centroid
    } else {
        if (!a.v) throw ParameterError("--v is required unless --from-model is given");
        v = *a.v;
        v_tilde = a.v_tilde.value_or(v);
    }
    const double pw = power_with_anchors(a.alpha, a.beta, v, v_tilde, k, a.level);

    if (!a.curve.empty() || !a.svg.empty()) {
        const auto points = power_curves(v, v_tilde, a.level, a.ks, a.max_gap, a.steps);
        if (!a.curve.empty()) {
            auto file = open_output(a.curve);
            file << "k,gap,power\n";
            for (const auto& p : points) {
                file << p.k << ',' << format_double(p.gap) << ',' << format_double(p.power) << '\n';
            }
        }
        if (!a.svg.empty()) write_power_curve_svg(points, a.svg);
    }

    ojson j;
    j["alpha"] = a.alpha;
    j["beta"] = a.beta;
    j["v"] = v;
    j["v_tilde"] = v_tilde;
    j["level"] = a.level;
    j["k"] = k;
    j["power"] = pw;
    out << j.dump(2) << '\n';
    err << "power " << fmt(pw) << " against |beta - alpha| = " << fmt(std::abs(a.beta - a.alpha)) << " at level "
        << fmt(a.level) << '\n';
    return kOk;
}

// ---- prior-test ------------------------------------------------------------

struct PriorArgs {
    std::optional<std::int64_t> n;
    std::optional<std::int64_t> k_pos;
    double pi0 = 0.5;
    std::string dataset;
    std::string method = "exact";
    double level = 0.05;
    std::string out;
};

int cmd_prior(const PriorArgs& a, std::ostream& out, std::ostream& err) {
    std::int64_t n = 0;
    std::int64_t k = 0;
    if (!a.dataset.empty()) {
        const Dataset data = read_dataset_csv(a.dataset);
        n = data.size();
        k = static_cast<std::int64_t>(data.positive_count());
    } else {
        if (!a.n || !a.k_pos) throw ParameterError("give --n and --k-pos, or --dataset");
        n = *a.n;
        k = *a.k_pos;
    }
    const PriorTestReport r = a.method == "z" ? prior_z_test(n, k, a.pi0) : prior_exact_test(n, k, a.pi0);
    emit(out, to_json(r), a.out);
    err << (r.p_value < a.level ? "reject" : "retain") << " H0 (positive rate = " << fmt(a.pi0) << ") at level "
        << fmt(a.level) << ": observed " << fmt(r.pi_hat) << ", p = " << fmt(r.p_value) << '\n';
    return kOk;
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
    long n = 1000;
    std::optional<std::uint64_t> seed;
    std::string out;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> mean_pos{1.0, 1.0};
    std::vector<double> mean_neg{-1.0, -1.0};
    double prior = 0.5;
    std::string anchors_out;
    std::string anchor_config_out;
    long k = 1;
    double delta = 0.0;
    double range = 4.0;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
    const std::uint64_t seed = a.seed.value_or(default_seed());
    const GaussianSetup setup(parse_vector(a.mean_pos), parse_vector(a.mean_neg), a.prior);
    const NoiseSpec noise = NoiseSpec::class_conditional(a.alpha, a.beta);
    if (a.out.empty()) throw ParameterError("--out is required");

    Dataset data = generate(setup, a.n, stream_key(seed, {0}));
    if (noise.alpha() > 0.0 || noise.beta() > 0.0) {
        data = data.with_labels(corrupt_labels(data.labels(), noise, stream_key(seed, {1})));
    }
    {
        auto file = open_output(a.out);
        write_dataset_csv(file, data);
    }
    ojson j;
    j["dataset"] = a.out;
    j["n"] = data.size();
    j["positives"] = data.positive_count();
    j["alpha"] = a.alpha;
    j["beta"] = a.beta;
    j["theta_true"] =
        std::vector<double>(setup.theta_true().data(), setup.theta_true().data() + setup.theta_true().size());
    j["seed"] = seed;
    if (!a.anchors_out.empty()) {
        const AnchorSet anchors = sample_anchors(setup, a.k, a.delta, a.range, stream_key(seed, {2}));
        auto file = open_output(a.anchors_out);
        write_anchor_csv(file, anchors);
        j["anchors"] = a.anchors_out;
        j["k"] = a.k;
        j["delta"] = a.delta;
        if (!a.anchor_config_out.empty()) {
            auto cfg = open_output(a.anchor_config_out);
            write_anchor_config(cfg, a.delta);
            j["anchor_config"] = a.anchor_config_out;
        }
    }
    out << j.dump(2) << '\n';
    err << "wrote " << data.size() << " rows to " << a.out << '\n';
    return kOk;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string out_dir;
    std::optional<long> runs;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    bool plots = false;
    bool resume = false;
    bool quiet = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    bool seed_in_file = false;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in) throw IoError("cannot open " + a.config);
        std::stringstream ss;
        ss << in.rdbuf();
        config = config_from_json(ss.str());
        seed_in_file = ss.str().find("\"root_seed\"") != std::string::npos;
    }
    if (a.seed) config.root_seed = *a.seed;
    else if (!seed_in_file && std::getenv(kSeedEnv)) config.root_seed = default_seed();
    if (a.runs) config.runs = *a.runs;
    config.validate();

    GridOptions opts;
    opts.threads = a.threads;
    opts.output_dir = a.out_dir;
    opts.plots = a.plots;
    opts.resume = a.resume;
    if (!a.quiet) {
        opts.progress = [&err](std::size_t done, std::size_t total) {
            if (done == total || done % 100 == 0) err << "\rprogress " << done << "/" << total << std::flush;
            if (done == total) err << '\n';
        };
    }
    const ExperimentSummary summary = run_grid(config, opts);
    long failed_cells = 0;
    for (const auto& c : summary.cells) failed_cells += c.failed ? 1 : 0;

    ojson j;
    j["output_dir"] = a.out_dir;
    j["cells"] = summary.cells.size();
    j["runs_per_cell"] = config.runs;
    j["failed_cells"] = failed_cells;
    j["root_seed"] = config.root_seed;
    out << j.dump(2) << '\n';
    err << "simulated " << summary.cells.size() << " cells x " << config.runs << " runs into " << a.out_dir;
    err << (failed_cells ? "; " + std::to_string(failed_cells) + " cell(s) exceeded the failure budget" : "") << '\n';
    if (failed_cells) {
        return report_error(err, "experiment", std::to_string(failed_cells) + " cell(s) failed", kExperiment);
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hypothesis tests for class-conditional label noise", "ccn"};
    app.require_subcommand(1);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Fit logistic regression by maximum likelihood");
    fit_cmd->add_option("dataset", fit_args.dataset, "Dataset CSV (features..., label)")->required();
    fit_cmd->add_option("--out", fit_args.out, "Also write the JSON to this file");
    fit_cmd->add_flag("--ridge-fallback", fit_args.ridge, "Refit with a tiny ridge penalty if separable");

    TestArgs test_args;
    auto* test_cmd = app.add_subcommand("test", "Anchor-point z-test for class-conditional noise");
    test_cmd->add_option("dataset", test_args.dataset, "Dataset CSV")->required();
    test_cmd->add_option("anchors", test_args.anchors, "Anchor CSV (raw features)")->required();
    test_cmd->add_option("--alpha-level", test_args.level, "Significance level")->capture_default_str();
    test_cmd->add_option("--delta", test_args.delta, "Anchor relaxation half-width");
    test_cmd->add_option("--anchor-config", test_args.anchor_config, "Sidecar file with delta=<value>");
    test_cmd->add_flag("--ridge-fallback", test_args.ridge, "Refit with a tiny ridge penalty if separable");
    test_cmd->add_option("--out", test_args.out, "Also write the report JSON to this file");

    PowerArgs power_args;
    auto* power_cmd = app.add_subcommand("power", "Analytic power of the anchor test");
    power_cmd->add_option("--alpha", power_args.alpha, "P(noisy -1 | clean +1)")->capture_default_str();
    power_cmd->add_option("--beta", power_args.beta, "P(noisy +1 | clean -1)")->capture_default_str();
    power_cmd->add_option("--v", power_args.v, "Null variance v");
    power_cmd->add_option("--v-tilde", power_args.v_tilde, "Alternative variance (default: v)");
    power_cmd->add_option("--level", power_args.level, "Significance level")->capture_default_str();
    power_cmd->add_option("--k", power_args.k, "Number of random anchors (divides the variances)")
        ->capture_default_str();
    power_cmd->add_flag("--from-model", power_args.from_model, "Derive v from a fitted dataset and anchors");
    power_cmd->add_option("--dataset", power_args.dataset, "Dataset CSV for --from-model");
    power_cmd->add_option("--anchors", power_args.anchors, "Anchor CSV for --from-model");
    power_cmd->add_option("--curve", power_args.curve, "Write power-vs-gap curves as CSV");
    power_cmd->add_option("--svg", power_args.svg, "Write power-vs-gap curves as SVG");
    power_cmd->add_option("--ks", power_args.ks, "Anchor counts for the curves")->delimiter(',');
    power_cmd->add_option("--max-gap", power_args.max_gap, "Largest beta - alpha on the curve")->capture_default_str();
    power_cmd->add_option("--steps", power_args.steps, "Curve resolution")->capture_default_str();

    PriorArgs prior_args;
    auto* prior_cmd = app.add_subcommand("prior-test", "Binomial test of the positive-label rate");
    prior_cmd->add_option("--n", prior_args.n, "Sample count");
    prior_cmd->add_option("--k-pos", prior_args.k_pos, "Positive-label count");
    prior_cmd->add_option("--pi0", prior_args.pi0, "Known clean prior")->capture_default_str();
    prior_cmd->add_option("--dataset", prior_args.dataset, "Count labels from this dataset CSV");
    prior_cmd->add_option("--method", prior_args.method, "exact or z")
        ->check(CLI::IsMember({"exact", "z"}))
        ->capture_default_str();
    prior_cmd->add_option("--level", prior_args.level, "Significance level for the verdict")->capture_default_str();
    prior_cmd->add_option("--out", prior_args.out, "Also write the report JSON to this file");

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "Sample the two-Gaussian benchmark");
    gen_cmd->add_option("--n", gen_args.n, "Number of samples")->capture_default_str();
    gen_cmd->add_option("--seed", gen_args.seed, std::string("Seed (default: $") + kSeedEnv + " or 0)");
    gen_cmd->add_option("--out", gen_args.out, "Dataset CSV to write")->required();
    gen_cmd->add_option("--alpha", gen_args.alpha, "Flip rate of class +1")->capture_default_str();
    gen_cmd->add_option("--beta", gen_args.beta, "Flip rate of class -1")->capture_default_str();
    gen_cmd->add_option("--mean-pos", gen_args.mean_pos, "Class +1 mean")->delimiter(',');
    gen_cmd->add_option("--mean-neg", gen_args.mean_neg, "Class -1 mean")->delimiter(',');
    gen_cmd->add_option("--prior", gen_args.prior, "P(y = +1)")->capture_default_str();
    gen_cmd->add_option("--anchors-out", gen_args.anchors_out, "Also write k anchors here");
    gen_cmd->add_option("--anchor-config-out", gen_args.anchor_config_out, "Write delta=<value> sidecar here");
    gen_cmd->add_option("--k", gen_args.k, "Number of anchors")->capture_default_str();
    gen_cmd->add_option("--delta", gen_args.delta, "Anchor relaxation half-width")->capture_default_str();
    gen_cmd->add_option("--range", gen_args.range, "Anchor coordinate half-width")->capture_default_str();

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the Monte-Carlo grid");
    sim_cmd->add_option("--config", sim_args.config, "Experiment config JSON (default grid if omitted)");
    sim_cmd->add_option("--out", sim_args.out_dir, "Output directory")->required();
    sim_cmd->add_option("--runs", sim_args.runs, "Override runs per cell");
    sim_cmd->add_option("--seed", sim_args.seed, "Override root seed");
    sim_cmd->add_option("--threads", sim_args.threads, "Worker threads (0 = all cores)");
    sim_cmd->add_flag("--plots", sim_args.plots, "Emit SVG box plots and power curves");
    sim_cmd->add_flag("--resume", sim_args.resume, "Skip cells listed in the output manifest");
    sim_cmd->add_flag("--quiet", sim_args.quiet, "No progress output");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return report_error(err, "usage", e.what(), kUsage);
    }

    try {
        if (*fit_cmd) return cmd_fit(fit_args, out, err);
        if (*test_cmd) return cmd_test(test_args, out, err);
        if (*power_cmd) return cmd_power(power_args, out, err);
        if (*prior_cmd) return cmd_prior(prior_args, out, err);
        if (*gen_cmd) return cmd_generate(gen_args, out, err);
        if (*sim_cmd) return cmd_simulate(sim_args, out, err);
    } catch (const Error& e) {
        return report_error(err, e.kind(), e.what(), exit_code_for(e));
    } catch (const std::exception& e) {
        return report_error(err, "internal", e.what(), kInternal);
    }
    return report_error(err, "usage", "no subcommand given", kUsage);
}

}  // namespace ccn::cli
