#pragma once

#include <stdexcept>

namespace citenorm {

/// Malformed input files (bad row, duplicate id, wrong header).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or violated operation preconditions.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Statistics that are undefined on the given data: fewer than two fields,
/// an all-uncited group, constant correlation input, an empty join.
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace citenorm
