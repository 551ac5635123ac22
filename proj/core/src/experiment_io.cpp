#include "ccn/experiment_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ccn/errors.hpp"

namespace ccn {

namespace {

using nlohmann::json;

const std::set<std::string> kConfigKeys = {
    "n_grid",           "noise_gaps",        "k_grid",         "delta_grid",      "runs",
    "significance",     "root_seed",         "setup",          "anchor_half_width", "test_uses_delta",
    "power_variance",   "ridge_fallback",    "max_failure_fraction"};

Vector to_vector(const json& j, const char* name) {
    if (!j.is_array() || j.empty()) throw ParseError(std::string("setup.") + name + " must be a non-empty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError("bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad number '" + s + "'");
    }
}

long parse_long(const std::string& s) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw ParseError("bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad integer '" + s + "'");
    }
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& item : j.items()) {
        if (!kConfigKeys.count(item.key())) throw ParseError("unknown config key '" + item.key() + "'");
    }

    ExperimentConfig c;
    try {
        if (j.contains("n_grid")) c.n_grid = j["n_grid"].get<std::vector<long>>();
        if (j.contains("noise_gaps")) {
            c.noise_gaps.clear();
            for (const auto& g : j["noise_gaps"]) {
                if (g.is_number()) {
                    c.noise_gaps.push_back(realize_gap(g.get<double>()));
                } else if (g.is_array() && g.size() == 2) {
                    c.noise_gaps.push_back({g[0].get<double>(), g[1].get<double>()});
                } else {
                    throw ParseError("noise_gaps entries must be a number or an [alpha, beta] pair");
                }
            }
        }
        if (j.contains("k_grid")) c.k_grid = j["k_grid"].get<std::vector<long>>();
        if (j.contains("delta_grid")) c.delta_grid = j["delta_grid"].get<std::vector<double>>();
        if (j.contains("runs")) c.runs = j["runs"].get<long>();
        if (j.contains("significance")) c.significance = j["significance"].get<double>();
        if (j.contains("root_seed")) c.root_seed = j["root_seed"].get<std::uint64_t>();
        if (j.contains("setup")) {
            const auto& s = j["setup"];
            if (!s.is_object()) throw ParseError("setup must be an object");
            for (const auto& item : s.items()) {
                if (item.key() != "mean_pos" && item.key() != "mean_neg" && item.key() != "prior") {
                    throw ParseError("unknown setup key '" + item.key() + "'");
                }
            }
            const Vector pos = s.contains("mean_pos") ? to_vector(s["mean_pos"], "mean_pos") : c.setup.mean_pos();
            const Vector neg = s.contains("mean_neg") ? to_vector(s["mean_neg"], "mean_neg") : c.setup.mean_neg();
            const double prior = s.value("prior", c.setup.prior());
            c.setup = GaussianSetup(pos, neg, prior);
        }
        if (j.contains("anchor_half_width")) c.anchor_half_width = j["anchor_half_width"].get<double>();
        if (j.contains("test_uses_delta")) c.test_uses_delta = j["test_uses_delta"].get<bool>();
        if (j.contains("power_variance")) {
            const auto src = j["power_variance"].get<std::string>();
            if (src == "noisy") c.power_variance = PowerVarianceSource::Noisy;
            else if (src == "clean") c.power_variance = PowerVarianceSource::Clean;
            else throw ParseError("power_variance must be \"noisy\" or \"clean\"");
        }
        if (j.contains("ridge_fallback")) c.ridge_fallback = j["ridge_fallback"].get<bool>();
        if (j.contains("max_failure_fraction")) c.max_failure_fraction = j["max_failure_fraction"].get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config field has the wrong type: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
    json pairs = json::array();
    for (const auto& p : c.noise_gaps) pairs.push_back({p.alpha, p.beta});
    json j = json::object();
    j["n_grid"] = c.n_grid;
    j["noise_gaps"] = pairs;
    j["k_grid"] = c.k_grid;
    j["delta_grid"] = c.delta_grid;
    j["runs"] = c.runs;
    j["significance"] = c.significance;
    j["root_seed"] = c.root_seed;
    j["setup"] = {{"mean_pos", to_std(c.setup.mean_pos())},
                  {"mean_neg", to_std(c.setup.mean_neg())},
                  {"prior", c.setup.prior()}};
    j["anchor_half_width"] = c.anchor_half_width;
    j["test_uses_delta"] = c.test_uses_delta;
    j["power_variance"] = c.power_variance == PowerVarianceSource::Noisy ? "noisy" : "clean";
    j["ridge_fallback"] = c.ridge_fallback;
    j["max_failure_fraction"] = c.max_failure_fraction;
    return j.dump(2) + "\n";
}

void write_runs_header(std::ostream& out) {
    out << "cell,n,alpha,beta,k,delta,run,status,clean_p,noisy_p,clean_eta_bar,noisy_eta_bar,"
           "clean_v,noisy_v,clean_quad,noisy_quad,clean_iterations,noisy_iterations,"
           "clean_grad_norm,noisy_grad_norm\n";
}

void write_run_row(std::ostream& out, const CellCoord& cell, const RunRecord& r) {
    out << cell.index << ',' << cell.n << ',' << format_double(cell.noise.alpha) << ','
        << format_double(cell.noise.beta) << ',' << cell.k << ',' << format_double(cell.delta) << ',' << r.run
        << ',' << to_string(r.status) << ',' << format_double(r.clean.p_value) << ','
        << format_double(r.noisy.p_value) << ',' << format_double(r.clean.eta_bar) << ','
        << format_double(r.noisy.eta_bar) << ',' << format_double(r.clean.variance) << ','
        << format_double(r.noisy.variance) << ',' << format_double(r.clean.quad_form) << ','
        << format_double(r.noisy.quad_form) << ',' << r.clean.iterations << ',' << r.noisy.iterations << ','
        << format_double(r.clean.grad_norm) << ',' << format_double(r.noisy.grad_norm) << '\n';
}

void write_runs_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<RunRecord>& runs) {
    const auto cells = enumerate_cells(config);
    write_runs_header(out);
    for (const auto& r : runs) write_run_row(out, cells.at(r.cell), r);
}

std::vector<RunRecord> read_run_rows(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("cell,", 0) == 0) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 20) throw ParseError("run row has " + std::to_string(f.size()) + " fields, expected 20");
        RunRecord r;
        r.cell = static_cast<std::size_t>(parse_long(f[0]));
        r.run = parse_long(f[6]);
        r.status = run_status_from_string(f[7]);
        r.clean.p_value = parse_double(f[8]);
        r.noisy.p_value = parse_double(f[9]);
        r.clean.eta_bar = parse_double(f[10]);
        r.noisy.eta_bar = parse_double(f[11]);
        r.clean.variance = parse_double(f[12]);
        r.noisy.variance = parse_double(f[13]);
        r.clean.quad_form = parse_double(f[14]);
        r.noisy.quad_form = parse_double(f[15]);
        r.clean.iterations = static_cast<int>(parse_long(f[16]));
        r.noisy.iterations = static_cast<int>(parse_long(f[17]));
        r.clean.grad_norm = parse_double(f[18]);
        r.noisy.grad_norm = parse_double(f[19]);
        out.push_back(r);
    }
    return out;
}

void write_cells_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
    out << "cell,n,alpha,beta,gap,k,delta,runs,failed_runs,status,"
           "clean_q1,clean_q2,clean_q3,clean_whisker_lo,clean_whisker_hi,"
           "noisy_q1,noisy_q2,noisy_q3,noisy_whisker_lo,noisy_whisker_hi,"
           "clean_reject_rate,noisy_reject_rate,mean_v,mean_v_tilde,analytic_power\n";
    for (const auto& s : cells) {
        const auto& c = s.coord;
        out << c.index << ',' << c.n << ',' << format_double(c.noise.alpha) << ',' << format_double(c.noise.beta)
            << ',' << format_double(c.noise.alpha - c.noise.beta) << ',' << c.k << ',' << format_double(c.delta)
            << ',' << s.runs << ',' << s.failed_runs << ',' << (s.failed ? "failed" : "ok");
        for (const BoxStats* b : {&s.clean_p, &s.noisy_p}) {
            out << ',' << format_double(b->q1) << ',' << format_double(b->q2) << ',' << format_double(b->q3) << ','
                << format_double(b->whisker_lo) << ',' << format_double(b->whisker_hi);
        }
        out << ',' << format_double(s.clean_reject_rate) << ',' << format_double(s.noisy_reject_rate) << ','
            << format_double(s.mean_v) << ',' << format_double(s.mean_v_tilde) << ','
            << format_double(s.analytic_power) << '\n';
    }
}

}  // namespace ccn
