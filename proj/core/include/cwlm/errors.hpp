#pragma once

#include <stdexcept>
#include <string>

namespace cwlm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A parameter set that violates a precondition (bad polarization norm,
/// non-orthogonal faulty projector pair, zero response coefficient, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numeric breakdown at run time (non-finite propagator entries, overflow).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Post-selection probability below threshold; conditioned statistics undefined.
class ZeroPostSelectionError : public NumericError {
public:
    using NumericError::NumericError;
};

/// 1 + (P_i, P_f) vanishes; the shift generating function is undefined.
class ZeroOverlapError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Conditioning row carries no probability mass.
class DegenerateSliceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Grid mismatch or out-of-range access on a distribution grid.
class GridError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

} // namespace cwlm
