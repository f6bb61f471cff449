#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace radialbc {

/// Base of every error raised by the library. `name()` is the stable
/// identifier that ends up in reports.
class error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
    virtual char const* name() const noexcept = 0;
};

#define RADIALBC_DECLARE_ERROR(cls)                                   \
    class cls : public error                                          \
    {                                                                 \
      public:                                                         \
        using error::error;                                           \
        char const* name() const noexcept override { return #cls; }   \
    };

RADIALBC_DECLARE_ERROR(DomainError)
RADIALBC_DECLARE_ERROR(RangeError)
RADIALBC_DECLARE_ERROR(UnsupportedSingularity)
RADIALBC_DECLARE_ERROR(FallToCenter)
RADIALBC_DECLARE_ERROR(Unsupported)
RADIALBC_DECLARE_ERROR(AsymptoticsError)
RADIALBC_DECLARE_ERROR(BoundaryModeViolation)
RADIALBC_DECLARE_ERROR(NoEigenvalueInWindow)
RADIALBC_DECLARE_ERROR(KGIterationError)
RADIALBC_DECLARE_ERROR(ConvergenceError)

#undef RADIALBC_DECLARE_ERROR

/// Quadrature that failed to settle; carries the (points, value) history.
class QuadratureError : public error
{
  public:
    QuadratureError(std::string const& what, std::vector<std::pair<double, double>> sequence)
        : error(what)
        , sequence_(std::move(sequence))
    {
    }
    char const* name() const noexcept override { return "QuadratureError"; }
    std::vector<std::pair<double, double>> const& sequence() const { return sequence_; }

  private:
    std::vector<std::pair<double, double>> sequence_;
};

[[noreturn]] void throw_domain(std::string const& msg);

} // namespace radialbc
