#include "pmloc/error.hpp"

namespace pmloc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_map: return "invalid-map";
    case ErrorKind::origin_outside: return "origin-outside";
    case ErrorKind::map_integrity: return "map-integrity";
    case ErrorKind::invalid_index: return "invalid-index";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::empty_prior: return "empty-prior";
    case ErrorKind::degenerate_posterior: return "degenerate-posterior";
    case ErrorKind::invalid_axis: return "invalid-axis";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

}  // namespace pmloc
