#ifndef PTSIM_ERRORS_HPP
#define PTSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptsim {

// Exit-code mapping used by the CLI: 2 usage/config, 3 validation, 4 numerical.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed configuration, bad command-line input.
struct UsageError : Error {
    using Error::Error;
};

// An input violates a documented invariant (dimension, Hermiticity,
// positivity, normalization, parameter range).
struct ValidationError : Error {
    using Error::Error;
};

// Runtime numerical failure: trace collapse, NaN, eigensolver
// non-convergence, clamping threshold exceeded.
struct NumericalError : Error {
    using Error::Error;
};

} // namespace ptsim

#endif
