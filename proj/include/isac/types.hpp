// types.hpp - shared scalar/vector aliases and the error hierarchy
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (bad M, K*L != N, unknown key, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed call-site data: dimension mismatch, non-bijective permutation.
class InputError : public Error {
public:
    using Error::Error;
};

/// Request outside the supported envelope (e.g. lexicographic rank for N > 20).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace isac
