#include "ccn/report_json.hpp"

#include <json.hpp>

#include "ccn/errors.hpp"

namespace ccn {

namespace {

using ojson = nlohmann::ordered_json;

ojson parse_object(const std::string& text, const char* what) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw ParseError(std::string(what) + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
    return j;
}

template <typename T>
T field(const ojson& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const ojson::exception& e) {
        throw ParseError(std::string("field '") + key + "' has the wrong type: " + e.what());
    }
}

}  // namespace

std::string to_json(const TestReport& r) {
    ojson j;
    j["eta_bar"] = r.eta_bar;
    j["variance"] = r.variance;
    j["z"] = r.z;
    j["p_value"] = r.p_value;
    j["significance"] = r.significance;
    j["retain_lower"] = r.retain_lower;
    j["retain_upper"] = r.retain_upper;
    j["reject"] = r.reject;
    j["k"] = r.k;
    j["delta"] = r.delta;
    return j.dump(2);
}

TestReport test_report_from_json(const std::string& text) {
    const ojson j = parse_object(text, "test report");
    TestReport r;
    r.eta_bar = field<double>(j, "eta_bar");
    r.variance = field<double>(j, "variance");
    r.z = field<double>(j, "z");
    r.p_value = field<double>(j, "p_value");
    r.significance = field<double>(j, "significance");
    r.retain_lower = field<double>(j, "retain_lower");
    r.retain_upper = field<double>(j, "retain_upper");
    r.reject = field<bool>(j, "reject");
    r.k = field<long>(j, "k");
    r.delta = field<double>(j, "delta");
    return r;
}

std::string to_json(const PriorTestReport& r) {
    ojson j;
    j["n"] = r.n;
    j["k_pos"] = r.k_pos;
    j["pi0"] = r.pi0;
    j["pi_hat"] = r.pi_hat;
    j["z"] = r.z;
    j["p_value"] = r.p_value;
    j["method"] = r.method == PriorTestMethod::ExactBinomial ? "exact_binomial" : "z_approx";
    return j.dump(2);
}

PriorTestReport prior_report_from_json(const std::string& text) {
    const ojson j = parse_object(text, "prior test report");
    PriorTestReport r;
    r.n = field<std::int64_t>(j, "n");
    r.k_pos = field<std::int64_t>(j, "k_pos");
    r.pi0 = field<double>(j, "pi0");
    r.pi_hat = field<double>(j, "pi_hat");
    r.z = field<double>(j, "z");
    r.p_value = field<double>(j, "p_value");
    const auto method = field<std::string>(j, "method");
    if (method == "exact_binomial") r.method = PriorTestMethod::ExactBinomial;
    else if (method == "z_approx") r.method = PriorTestMethod::ZApprox;
    else throw ParseError("unknown prior test method '" + method + "'");
    return r;
}

std::string to_json(const FittedModel& m) {
    ojson j;
    j["theta"] = std::vector<double>(m.theta.data(), m.theta.data() + m.theta.size());
    ojson rows = ojson::array();
    for (Eigen::Index i = 0; i < m.hessian_inv.rows(); ++i) {
        ojson row = ojson::array();
        for (Eigen::Index c = 0; c < m.hessian_inv.cols(); ++c) row.push_back(m.hessian_inv(i, c));
        rows.push_back(row);
    }
    j["hessian_inv"] = rows;
    j["converged"] = m.converged;
    j["iterations"] = m.iterations;
    j["grad_norm"] = m.grad_norm;
    j["ridge_used"] = m.ridge_used;
    j["log_likelihood"] = m.log_likelihood;
    return j.dump(2);
}

}  // namespace ccn
