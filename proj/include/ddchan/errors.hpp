#pragma once

#include <stdexcept>
#include <string>

namespace ddchan {

// Validation failures: bad domain values, malformed structures.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRangeError : ValidationError {
    using ValidationError::ValidationError;
};
struct OutOfDiamondError : ValidationError {
    using ValidationError::ValidationError;
};
struct EmptyRowError : ValidationError {
    using ValidationError::ValidationError;
};
struct NotCompletelyPositiveError : ValidationError {
    using ValidationError::ValidationError;
};
struct MissingPairError : ValidationError {
    using ValidationError::ValidationError;
};

// Domain signals raised by geometry queries outside their defined region.
struct OutsideStripError : std::runtime_error {
    explicit OutsideStripError(const std::string& what) : std::runtime_error(what) {}
};
struct UnboundedViolationError : std::runtime_error {
    explicit UnboundedViolationError(const std::string& what)
        : std::runtime_error(what) {}
};
struct NoFeasibleChannelError : std::runtime_error {
    explicit NoFeasibleChannelError(const std::string& what)
        : std::runtime_error(what) {}
};

// File/stream problems surfaced to the CLI as exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ddchan
