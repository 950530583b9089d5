#pragma once

#include <stdexcept>
#include <string>

namespace vdoc {

/// Input data that cannot be parsed or violates a data invariant.
/// Precondition violations by the caller throw std::invalid_argument instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& where, const std::string& what)
      : DataError(where + ": " + what) {}
};

}  // namespace vdoc
