#include "ccn/anchor_io.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include "ccn/errors.hpp"

namespace ccn {

AnchorSet anchors_from_csv(const CsvTable& table, double delta) {
    if (table.rows.empty()) throw AnchorError("anchor file contains no anchors");
    const auto k = static_cast<Eigen::Index>(table.rows.size());
    const auto p = static_cast<Eigen::Index>(table.rows.front().size());
    Matrix raw(k, p);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            raw(i, j) = table.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return AnchorSet::from_raw(raw, delta);
}

AnchorSet read_anchor_csv(const std::filesystem::path& path, double delta) {
    return anchors_from_csv(read_csv(path), delta);
}

void write_anchor_csv(std::ostream& out, const AnchorSet& anchors) {
    const auto p = anchors.dim() - 1;
    for (Eigen::Index j = 1; j <= p; ++j) out << 'f' << j << (j == p ? '\n' : ',');
    for (Eigen::Index i = 0; i < anchors.k(); ++i) {
        for (Eigen::Index j = 1; j <= p; ++j) {
            out << format_double(anchors.points()(i, j)) << (j == p ? '\n' : ',');
        }
    }
}

double read_anchor_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    double delta = 0.0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key != "delta") throw ParseError(path.string() + ": unknown key '" + key + "'");
        try {
            std::size_t used = 0;
            delta = std::stod(value, &used);
            if (used != value.size() && value.find_first_not_of(" \t\r", used) != std::string::npos) {
                throw ParseError(path.string() + ": bad delta value '" + value + "'");
            }
        } catch (const std::logic_error&) {
            throw ParseError(path.string() + ": bad delta value '" + value + "'");
        }
    }
    if (!(delta >= 0.0 && delta <= 0.5)) throw ParameterError("delta must lie in [0, 0.5]");
    return delta;
}

void write_anchor_config(std::ostream& out, double delta) { out << "delta=" << format_double(delta) << '\n'; }

}  // namespace ccn
