#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct DivergenceError : Error { using Error::Error; };
struct ParameterError : Error { using Error::Error; };
struct OutOfTruncation : Error { using Error::Error; };
struct NotFound : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct CoverageError : Error { using Error::Error; };
struct BudgetError : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Non-fatal accuracy diagnostics go through here. Default sink is stderr,
// at most once per distinct message.
void warn(const std::string& msg);
void set_warnings_enabled(bool on);
int warning_count();

}  // namespace bergman
