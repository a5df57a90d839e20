#pragma once

#include <stdexcept>
#include <string>

namespace niltri {

enum class Errc {
  char_two,
  not_prime,
  division_by_zero,
  field_mismatch,
  infinite_field,
  index_order,
  bad_index,
  parse_error,
  dimension_mismatch,
  algebra_mismatch,
  bad_degree,
  zero_scalar,
  restriction_violated,
  not_in_zero_class,
  bad_size,
  singular,
  source_target_mismatch,
  unverified_morphism,
  budget_exceeded,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int col)
      : Error(Errc::parse_error,
              msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_;
  int col_;
};

}  // namespace niltri
