#ifndef FRAMEGEO_ERRORS_HPP
#define FRAMEGEO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace framegeo {

/// Base class for every error raised by the engine.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- jet kernel --------------------------------------------------------

struct DivisionByZeroAtPoint : Error {
    using Error::Error;
};

struct MixedJetShapes : Error {
    using Error::Error;
};

// ln/sqrt of a non-positive value, or a transcendental call in exact
// rational mode.
struct DomainError : Error {
    using Error::Error;
};

// A derivative was requested beyond the trustworthy order of a jet.
struct OrderExhausted : Error {
    using Error::Error;
};

// -- expression language -----------------------------------------------

struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

struct UnknownIdentifier : SyntaxError {
    using SyntaxError::SyntaxError;
};

struct NonIntegerExponent : SyntaxError {
    using SyntaxError::SyntaxError;
};

struct PointOutsideDomain : Error {
    using Error::Error;
};

// -- frame geometry ------------------------------------------------------

struct SingularFrame : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// -- soliton / classification -------------------------------------------

struct RankDeficientFit : Error {
    using Error::Error;
};

struct SolitonPrereqFailed : Error {
    using Error::Error;
};

// -- manifold spec files / CLI --------------------------------------------

struct ParseError : Error {
    ParseError(const std::string& msg, int line)
        : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct ValidationError : Error {
    using Error::Error;
};

struct UnknownBuiltin : Error {
    using Error::Error;
};

struct SamplingExhausted : Error {
    using Error::Error;
};

}  // namespace framegeo

#endif
