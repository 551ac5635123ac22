#pragma once

#include <stdexcept>
#include <string>

namespace ccn {

// Every failure raised by the library derives from ccn::Error so callers can
// catch the family and still dispatch on the concrete kind.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

#define CCN_DEFINE_ERROR(Name, tag)                              \
    class Name : public Error {                                  \
    public:                                                      \
        using Error::Error;                                      \
        const char* kind() const noexcept override { return tag; } \
    }

/// Out-of-range model or test parameter (noise rates, significance, delta).
CCN_DEFINE_ERROR(ParameterError, "parameter");
/// Input outside the domain where a formula is defined (e.g. eta in {0,1}).
CCN_DEFINE_ERROR(DomainError, "domain");
/// Vector/matrix shapes do not agree.
CCN_DEFINE_ERROR(DimensionError, "dimension");
/// The logistic MLE does not exist: the data are linearly separable.
CCN_DEFINE_ERROR(SeparabilityError, "separability");
/// A factorisation failed (singular or non-PD system).
CCN_DEFINE_ERROR(NumericalError, "numerical");
/// The null variance of the anchor statistic is zero.
CCN_DEFINE_ERROR(DegenerateVarianceError, "degenerate_variance");
/// Anchor set is empty or malformed.
CCN_DEFINE_ERROR(AnchorError, "anchor");
/// Dataset invariants violated (intercept column, single class, N < d).
CCN_DEFINE_ERROR(DatasetError, "dataset");
/// Malformed text input (CSV, JSON, config).
CCN_DEFINE_ERROR(ParseError, "parse");
/// File could not be opened or written.
CCN_DEFINE_ERROR(IoError, "io");
/// Large-sample approximation not valid for the given counts.
CCN_DEFINE_ERROR(ApproximationError, "approximation");
/// Too many failed runs in a Monte-Carlo cell.
CCN_DEFINE_ERROR(ExperimentError, "experiment");

#undef CCN_DEFINE_ERROR

}  // namespace ccn
