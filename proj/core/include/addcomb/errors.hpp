#pragma once

#include <stdexcept>
#include <string>

namespace addcomb {

/// Base class for every failure raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checked coordinate arithmetic left the representable range.
struct OverflowError : Error {
    using Error::Error;
};

/// Operands with mismatched or deficient dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// A named hypothesis of an operation does not hold for the input.
/// Deliberately distinct from a "bound does not hold" verdict: an
/// out-of-hypothesis input must never read as a counterexample.
class HypothesisError : public Error {
public:
    explicit HypothesisError(const std::string& hypothesis)
        : Error("hypothesis violated: " + hypothesis), hypothesis_(hypothesis) {}
    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// Malformed input text or file.
struct ParseError : Error {
    using Error::Error;
};

/// An enumeration would exceed the configured candidate budget.
struct BudgetError : Error {
    using Error::Error;
};

/// A reduction pipeline could not reach its contracted postconditions.
struct PipelineError : Error {
    using Error::Error;
};

} // namespace addcomb
