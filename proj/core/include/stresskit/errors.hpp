#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stresskit {

/// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unusable CSV input.  line() is 1-based, 0 when the problem
/// is not tied to a single line.
class CsvError : public Error {
public:
    explicit CsvError(const std::string& msg, std::size_t line = 0)
        : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Window with zero variance: standardization is undefined.
class DegenerateWindowError : public Error {
public:
    DegenerateWindowError() : Error("window has zero variance, standardization undefined") {}
};

/// No template matches at the base or the extended embedding dimension, so
/// the conditional probability ratio and its logarithm are undefined.
/// Inspect phi_m()/phi_mstar() to see which stage came up empty.
class UndefinedEntropyError : public Error {
public:
    UndefinedEntropyError(double phi_m, double phi_mstar)
        : Error("sample entropy undefined: an embedding stage has no matches"),
          phi_m_(phi_m), phi_mstar_(phi_mstar) {}

    double phi_m() const noexcept { return phi_m_; }
    double phi_mstar() const noexcept { return phi_mstar_; }

private:
    double phi_m_;
    double phi_mstar_;
};

/// Recurrence matrix without a single recurrence point: DET has no denominator.
class UndefinedDetError : public Error {
public:
    UndefinedDetError() : Error("determinism undefined: recurrence matrix has no recurrence points") {}
};

/// Invalid configuration, manifest, or CLI argument set.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace stresskit
