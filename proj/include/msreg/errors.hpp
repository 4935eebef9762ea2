#pragma once

#include <stdexcept>
#include <string>

namespace msreg {

// Domain errors carry a stable name used by the CLI for exit reporting.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define MSREG_DEFINE_ERROR(NAME)                                        \
    class NAME : public DomainError {                                   \
    public:                                                             \
        explicit NAME(const std::string& what) : DomainError(#NAME, what) {} \
    }

MSREG_DEFINE_ERROR(EmptyInput);
MSREG_DEFINE_ERROR(DuplicateDesignPoint);
MSREG_DEFINE_ERROR(DesignPointOutOfRange);
MSREG_DEFINE_ERROR(ScaleNotPositive);
MSREG_DEFINE_ERROR(IndexOutOfRange);
MSREG_DEFINE_ERROR(LengthMismatch);
MSREG_DEFINE_ERROR(TooFewPoints);
MSREG_DEFINE_ERROR(InfeasibleTube);
MSREG_DEFINE_ERROR(NoJointApproximation);
MSREG_DEFINE_ERROR(MaxRoundsExceeded);
MSREG_DEFINE_ERROR(SupportMismatch);
MSREG_DEFINE_ERROR(DeltaOutOfRange);
MSREG_DEFINE_ERROR(MissingCalibration);
MSREG_DEFINE_ERROR(BadRequest);

#undef MSREG_DEFINE_ERROR

} // namespace msreg
