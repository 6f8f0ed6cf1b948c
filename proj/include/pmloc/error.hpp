#pragma once

#include <stdexcept>
#include <string>

namespace pmloc {

enum class ErrorKind {
  invalid_map,
  origin_outside,
  map_integrity,
  invalid_index,
  invalid_argument,
  empty_prior,
  degenerate_posterior,
  invalid_axis,
  parse,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pmloc
