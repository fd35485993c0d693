#pragma once

#include <stdexcept>
#include <string>

namespace wva {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pre- and post-selection states are (numerically) orthogonal: the weak
/// value diverges and every quantity built on it is undefined.
class OrthogonalSelection : public Error {
public:
    using Error::Error;
};

/// The conditional state update has no support at the given readout.
class ZeroLikelihood : public Error {
public:
    using Error::Error;
};

/// A probability density evaluated to zero or below inside the integration
/// domain, so the log-derivative score is undefined.
class NonPositiveDensity : public Error {
public:
    using Error::Error;
};

/// A variance that must be positive came out nonpositive; indicates an
/// upstream bug rather than a representable physical situation.
class DegenerateVariance : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// A scan/validation config file failed to parse; carries line diagnostics.
class SpecParseError : public Error {
public:
    SpecParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Output file could not be created or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace wva
