#include "ccn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccn/errors.hpp"

namespace ccn {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_number(const std::string& text, double& value) {
    if (text.empty()) return false;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc() && ptr == end;
}

int to_label(double v, std::size_t row) {
    if (v == 1.0) return 1;
    if (v == -1.0) return -1;
    throw ParseError("row " + std::to_string(row + 1) + ": label must be -1 or +1");
}

}  // namespace

Dataset::Dataset(Matrix features, std::vector<int> labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
    const auto n = features_.rows();
    const auto d = features_.cols();
    if (d < 1) throw DatasetError("dataset needs at least the intercept column");
    if (static_cast<std::size_t>(n) != labels_.size()) {
        throw DimensionError("feature rows and label count differ");
    }
    if (n < d) throw DatasetError("dataset needs N >= d");
    if ((features_.col(0).array() != 1.0).any()) {
        throw DatasetError("first feature column must be the all-ones intercept");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (int y : labels_) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw DatasetError("labels must be -1 or +1");
    }
    if (!has_pos || !has_neg) throw DatasetError("labels must contain both classes");
}

Dataset Dataset::from_raw(const Matrix& raw_features, std::vector<int> labels) {
    return Dataset(add_intercept(raw_features), std::move(labels));
}

std::size_t Dataset::positive_count() const noexcept {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 1));
}

Dataset Dataset::with_labels(std::vector<int> labels) const { return Dataset(features_, std::move(labels)); }

Matrix add_intercept(const Matrix& raw) {
    Matrix out(raw.rows(), raw.cols() + 1);
    out.col(0).setOnes();
    out.rightCols(raw.cols()) = raw;
    return out;
}

CsvTable parse_csv(std::istream& in, const std::string& source) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto fields = split_fields(body);
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (const auto& f : fields) {
            double v;
            if (!parse_number(f, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (first_content) {
                table.header = fields;
                width = fields.size();
                first_content = false;
                continue;
            }
            throw ParseError(source + ":" + std::to_string(line_no) + ": non-numeric field");
        }
        if (width == 0) width = row.size();
        if (row.size() != width) {
            throw ParseError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) +
                             " fields, found " + std::to_string(row.size()));
        }
        first_content = false;
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_csv(in, path.string());
}

Dataset dataset_from_csv(const CsvTable& table) {
    if (table.rows.empty()) throw ParseError("dataset CSV has no rows");
    const std::size_t width = table.rows.front().size();
    if (width < 2) throw ParseError("dataset CSV needs at least one feature column and a label column");
    const auto n = static_cast<Eigen::Index>(table.rows.size());
    const auto p = static_cast<Eigen::Index>(width - 1);
    Matrix raw(n, p);
    std::vector<int> labels(table.rows.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = table.rows[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < p; ++j) {
            const double v = row[static_cast<std::size_t>(j)];
            if (!std::isfinite(v)) throw ParseError("row " + std::to_string(i + 1) + ": non-finite feature");
            raw(i, j) = v;
        }
        labels[static_cast<std::size_t>(i)] = to_label(row.back(), static_cast<std::size_t>(i));
    }
    return Dataset::from_raw(raw, std::move(labels));
}

Dataset read_dataset_csv(const std::filesystem::path& path) { return dataset_from_csv(read_csv(path)); }

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    const auto p = data.dim() - 1;
    for (Eigen::Index j = 1; j <= p; ++j) out << 'f' << j << ',';
    out << "label\n";
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        for (Eigen::Index j = 1; j <= p; ++j) out << format_double(data.features()(i, j)) << ',';
        out << data.labels()[static_cast<std::size_t>(i)] << '\n';
    }
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

}  // namespace ccn
