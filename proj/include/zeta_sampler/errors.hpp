#pragma once

#include <stdexcept>
#include <string>

namespace zs {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map them onto exit codes without catching std::exception.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (log 0, u <= 0).
class DomainError : public Error
{
  public:
    using Error::Error;
};

// Result would not be representable as a finite double.
class OverflowError : public Error
{
  public:
    using Error::Error;
};

// Inconsistent or insufficient evaluation configuration.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

// Adaptive quadrature exhausted its interval budget above tolerance.
class QuadratureError : public Error
{
  public:
    using Error::Error;
};

// A documented precondition on the input data (not the config) does not hold.
class InvariantError : public Error
{
  public:
    using Error::Error;
};

} // namespace zs
