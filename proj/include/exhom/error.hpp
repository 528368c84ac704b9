#pragma once

#include <stdexcept>
#include <string>

namespace exhom {

enum class ErrorKind {
  parse,
  missing_image,
  index_overflow,
  rank_mismatch,
  not_in_subgroup,
  not_surjective,
  not_preserved,
  not_free_basis,
  invalid_table,
  unsupported_fiber,
  precondition,
  orbit_cap,
  not_a_character,
  certificate,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace exhom
