#include "framelab/error.hpp"

namespace framelab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_element: return "invalid-element";
    case ErrorKind::invalid_subset: return "invalid-subset";
    case ErrorKind::invalid_subgroup: return "invalid-subgroup";
    case ErrorKind::invalid_parameters: return "invalid-parameters";
    case ErrorKind::invalid_operation: return "invalid-operation";
    case ErrorKind::inconsistent_angles: return "inconsistent-angles";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::domain: return "domain";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

}  // namespace framelab
