#pragma once

#include <stdexcept>

namespace rsdkit {

// Library code only throws; the CLI maps these onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input document: bad JSON, wrong shape, unparsable rational.
struct ParseError : Error {
    using Error::Error;
};

// Well-formed but invalid content: partition violations, unknown labels,
// universally indifferent alternative pairs, bad call preconditions.
struct ValidationError : Error {
    using Error::Error;
};

// Instance too large for an enumeration or brute-force code path.
struct GuardExceeded : Error {
    using Error::Error;
};

// "Cannot happen" conditions that indicate a bug upstream: a singular
// recovery system, a recovered count that is not a non-negative integer.
struct IntegrityError : Error {
    using Error::Error;
};

// A threshold oracle contradicted itself under verification.
struct OracleError : Error {
    using Error::Error;
};

}  // namespace rsdkit
