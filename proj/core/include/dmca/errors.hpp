#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dmca {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes that do not agree (frames, geometry, matrix products).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Too few snapshots or frames for the requested operation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied parameter is outside its valid domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Input is valid in shape but numerically degenerate (all zeros, constant range).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// A type invariant was violated by the supplied values.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Filesystem problems: unreadable or unwritable paths.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed DMX or image payload; carries the byte offset where decoding failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

}  // namespace dmca
