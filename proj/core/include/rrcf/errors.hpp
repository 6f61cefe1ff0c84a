#ifndef RRCF_ERRORS_HPP
#define RRCF_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rrcf {

enum class ErrorKind {
    DivisionByZero,
    BadLevel,
    OutOfRange,
    PrecisionExhausted,
    PoleEncountered,
    DomainError,
    DegenerateEigenvalues,
    HypothesisViolated,
    FiveDivides,
    BudgetExhausted,
    HeuristicInconclusive,
    Inconclusive,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. The kind is stable and is
/// what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

/// Raised by truncated evaluation when the denominator of the requested
/// approximant vanishes exactly.
class PoleError : public Error {
   public:
    explicit PoleError(std::int64_t index)
        : Error(ErrorKind::PoleEncountered, "denominator vanishes at index " + std::to_string(index)),
          index_(index) {}

    std::int64_t index() const noexcept { return index_; }

   private:
    std::int64_t index_;
};

/// Raised when a numeric recurrence has lost all significant bits.
class PrecisionError : public Error {
   public:
    PrecisionError(std::int64_t index, const std::string& detail)
        : Error(ErrorKind::PrecisionExhausted, detail + " (index " + std::to_string(index) + ")"),
          index_(index) {}

    std::int64_t index() const noexcept { return index_; }

   private:
    std::int64_t index_;
};

}  // namespace rrcf

#endif  // RRCF_ERRORS_HPP
