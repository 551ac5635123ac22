#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ccn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Intercept-augmented design matrix with labels in {-1, +1}.
///
/// Invariants (checked on construction): column 0 is exactly 1, rows == labels,
/// N >= d, and both classes occur.
class Dataset {
public:
    Dataset(Matrix features, std::vector<int> labels);

    /// Builds a dataset from raw features by prepending the intercept column.
    static Dataset from_raw(const Matrix& raw_features, std::vector<int> labels);

    const Matrix& features() const noexcept { return features_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    Eigen::Index size() const noexcept { return features_.rows(); }
    Eigen::Index dim() const noexcept { return features_.cols(); }
    std::size_t positive_count() const noexcept;

    /// Same features, different labels (re-validated).
    Dataset with_labels(std::vector<int> labels) const;

private:
    Matrix features_;
    std::vector<int> labels_;
};

/// Prepends a column of ones.
Matrix add_intercept(const Matrix& raw);

/// Raw numeric table parsed from CSV. A first line that does not parse as
/// numbers is treated as a header; blank lines and '#' comments are skipped.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable parse_csv(std::istream& in, const std::string& source = "<stream>");
CsvTable read_csv(const std::filesystem::path& path);

/// Dataset CSV: columns f1..fp then label in {-1,+1}; the intercept is added on load.
Dataset dataset_from_csv(const CsvTable& table);
Dataset read_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(std::ostream& out, const Dataset& data);

/// Shortest-safe representation: 17 significant digits.
std::string format_double(double x);

}  // namespace ccn
