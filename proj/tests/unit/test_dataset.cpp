#include <gtest/gtest.h>

#include <sstream>

#include "ccn/dataset.hpp"
#include "ccn/errors.hpp"
#include "test_support.hpp"

namespace {

using ccn::Matrix;

Matrix raw_column(std::initializer_list<double> xs) {
    Matrix m(static_cast<Eigen::Index>(xs.size()), 1);
    Eigen::Index i = 0;
    for (double x : xs) m(i++, 0) = x;
    return m;
}

TEST(Dataset, FromRawAddsIntercept) {
    const auto d = ccn::Dataset::from_raw(raw_column({0.5, -1.0, 2.0}), {1, -1, 1});
    EXPECT_EQ(d.dim(), 2);
    EXPECT_EQ(d.size(), 3);
    EXPECT_EQ(d.features()(1, 0), 1.0);
    EXPECT_EQ(d.features()(1, 1), -1.0);
    EXPECT_EQ(d.positive_count(), 2u);
}

TEST(Dataset, Invariants) {
    Matrix no_intercept(3, 2);
    no_intercept << 1, 0, 2, 1, 1, 3;
    EXPECT_THROW(ccn::Dataset(no_intercept, {1, -1, 1}), ccn::DatasetError);
    EXPECT_THROW(ccn::Dataset::from_raw(raw_column({1, 2, 3}), {1, 1, 1}), ccn::DatasetError);
    EXPECT_THROW(ccn::Dataset::from_raw(raw_column({1, 2, 3}), {1, 0, -1}), ccn::DatasetError);
    EXPECT_THROW(ccn::Dataset::from_raw(raw_column({1, 2}), {1, -1, 1}), ccn::DimensionError);
    Matrix wide = Matrix::Ones(2, 3);
    EXPECT_THROW(ccn::Dataset(wide, {1, -1}), ccn::DatasetError);
}

TEST(Dataset, WithLabelsRevalidates) {
    const auto d = ccn::Dataset::from_raw(raw_column({0.5, -1.0, 2.0}), {1, -1, 1});
    EXPECT_EQ(d.with_labels({-1, -1, 1}).positive_count(), 1u);
    EXPECT_THROW(d.with_labels({-1, -1, -1}), ccn::DatasetError);
}

TEST(Csv, HeaderCommentsAndWhitespace) {
    std::istringstream in("# generated\nf1, f2,label\n 1.5,2,1\n\n-3,4e-1,-1\n");
    const auto t = ccn::parse_csv(in);
    ASSERT_EQ(t.header.size(), 3u);
    EXPECT_EQ(t.header[2], "label");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[1][1], 0.4);
}

TEST(Csv, RaggedAndNonNumericRowsFail) {
    std::istringstream ragged("1,2,1\n1,1\n");
    EXPECT_THROW(ccn::parse_csv(ragged), ccn::ParseError);
    std::istringstream junk("f1,label\n1,1\nx,-1\n");
    EXPECT_THROW(ccn::parse_csv(junk), ccn::ParseError);
}

TEST(Csv, LabelMustBeSigned) {
    std::istringstream in("f1,label\n1,1\n2,0\n");
    EXPECT_THROW(ccn::dataset_from_csv(ccn::parse_csv(in)), ccn::ParseError);
}

TEST(Csv, RoundTripIsExact) {
    Matrix raw(4, 2);
    raw << 0.1, 1.0 / 3.0, -2.5e-10, 7.0, 1e300, -0.0, 3.14159, 2.718281828459045;
    const auto d = ccn::Dataset::from_raw(raw, {1, -1, -1, 1});
    std::ostringstream out;
    ccn::write_dataset_csv(out, d);
    std::istringstream in(out.str());
    const auto back = ccn::dataset_from_csv(ccn::parse_csv(in));
    EXPECT_EQ(back.features(), d.features());
    EXPECT_EQ(back.labels(), d.labels());
    std::ostringstream again;
    ccn::write_dataset_csv(again, back);
    EXPECT_EQ(again.str(), out.str());
}

TEST(Csv, MissingFileIsIoError) {
    EXPECT_THROW(ccn::read_dataset_csv("/nonexistent/file.csv"), ccn::IoError);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
    EXPECT_EQ(ccn::format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(ccn::format_double(1.0), "1");
    EXPECT_EQ(std::stod(ccn::format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
