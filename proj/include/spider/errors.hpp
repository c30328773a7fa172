#pragma once

#include <stdexcept>

namespace spider {

/// A select query on a vector without any one bits.
class empty_select_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or unsupported on-disk data.
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spider
