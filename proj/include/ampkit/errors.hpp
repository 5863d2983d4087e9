#pragma once

#include <stdexcept>
#include <string>

// Typed error hierarchy. Callers that only care about the broad outcome can
// catch the category bases (ParseError, SynthesisError, ...); the CLI maps
// categories to exit codes.

namespace ampkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input / file format -------------------------------------------------

struct ParseError : Error {
    using Error::Error;
};

struct MalformedOptionLine : ParseError {
    using ParseError::ParseError;
};
struct NonMonotonicFrequency : ParseError {
    using ParseError::ParseError;
};
struct WrongColumnCount : ParseError {
    using ParseError::ParseError;
};
struct UnsupportedParamType : ParseError {
    using ParseError::ParseError;
};
struct UnsupportedVersion : ParseError {
    using ParseError::ParseError;
};
struct EmptyDocument : ParseError {
    using ParseError::ParseError;
};
struct ConfigError : ParseError {
    using ParseError::ParseError;
};

// --- network algebra ------------------------------------------------------

struct DegenerateNetwork : Error {
    using Error::Error;
};
struct FrequencyMismatch : Error {
    using Error::Error;
};
struct StubSingularity : Error {
    using Error::Error;
};
struct OpenCircuit : Error {
    using Error::Error;
};
struct OutOfBand : Error {
    using Error::Error;
};
struct CircleDegenerate : Error {
    using Error::Error;
};
struct ReflectionOutOfDisk : Error {
    using Error::Error;
};

// --- design stages --------------------------------------------------------

struct SynthesisError : Error {
    using Error::Error;
};

struct PotentiallyUnstable : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct NegativeDiscriminant : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct AlreadyMatched : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct NoRealizableSection : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct NoSolution : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct TargetBelowFmin : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct InfeasibleSpec : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct NoOperatingPoint : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct AspectRatioOutOfRange : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct TargetOutOfRange : SynthesisError {
    using SynthesisError::SynthesisError;
};

// --- pipeline -------------------------------------------------------------

struct ConditionalStabilityHalt : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// Violated internal cross-check (two routes to the same quantity disagree).
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace ampkit
