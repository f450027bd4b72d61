#pragma once
// Error taxonomy shared by the library and the CLI.
// DataError maps to exit code 1, UsageError to exit code 2.

#include <stdexcept>
#include <string>

namespace disruptkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (bad file line, unknown id, cache
// corruption). Recoverable by fixing the data, not the invocation.
struct DataError : Error {
    using Error::Error;
};

// Invalid invocation: bad flag value, inapplicable indicator combination.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace disruptkit
