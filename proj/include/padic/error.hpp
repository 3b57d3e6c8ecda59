#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padic {

enum class Errc {
  invalid_prime,
  prime_mismatch,
  inexact_division,
  precision_exhausted,
  undefined_m_star,
  undefined_log,
  out_of_range,
  syntax,
  arity,
  non_integral_constant,
  precondition,
  budget_exceeded,
  invalid_input,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(Errc code, const std::string& what, int line, int column)
      : Error(code, what + " at line " + std::to_string(line) + ", column " +
                        std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace padic
