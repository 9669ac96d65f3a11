#pragma once

#include <stdexcept>
#include <string>

namespace e8chi {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed shorthand, recipe, DIMACS or model text.
struct ParseError : Error {
    using Error::Error;
};

/// Well-formed input that violates a structural precondition.
struct InvalidInput : Error {
    using Error::Error;
};

} // namespace e8chi
