#pragma once

#include <stdexcept>
#include <string>

namespace dabounds {

// Base for every library error so callers can catch one type at the boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDistribution : Error {
    using Error::Error;
};

// A function was applied to a point (atom or segment) it is not defined on.
struct UndefinedOnSupport : Error {
    using Error::Error;
};

// Induced labeling is ambiguous: preimages with conflicting labels collide.
struct NonInvertibleSegment : Error {
    using Error::Error;
};

struct AbsoluteContinuityViolation : Error {
    using Error::Error;
};

struct NonBinaryClass : Error {
    using Error::Error;
};

struct NonBinaryFunctions : Error {
    using Error::Error;
};

struct SupportTooLarge : Error {
    using Error::Error;
};

struct SampleTooLargeForExact : Error {
    using Error::Error;
};

struct InvalidConfidence : Error {
    using Error::Error;
};

struct UnequalSampleSizes : Error {
    using Error::Error;
};

struct InsufficientPoints : Error {
    using Error::Error;
};

struct DivergedTraining : Error {
    DivergedTraining(const std::string& what, std::size_t epoch_)
        : Error(what), epoch(epoch_) {}
    std::size_t epoch;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace dabounds
