#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framelab {

enum class ErrorKind {
  invalid_element,
  invalid_subset,
  invalid_subgroup,
  invalid_parameters,
  invalid_operation,
  inconsistent_angles,
  capacity,
  domain,
  parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported with this type.
/// The kind lets the CLI separate grammar errors from domain errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace framelab
