#pragma once

#include <stdexcept>

namespace fdhom {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A call broke its contract: mismatched grids, empty inputs, bad parameters.
class ContractError : public Error {
public:
    using Error::Error;
};

// The input is too small to support the operation (e.g. differentiating a
// sample with fewer points than the requested order).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// The sample is numerically degenerate: all curves identical, so the modal
// bandwidth collapses to zero.
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed (Cholesky breakdown beyond the jitter budget).
class NumericError : public Error {
public:
    using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace fdhom
