#pragma once

#include <stdexcept>
#include <string>

namespace varcore {

// Base class for every error raised by the library. Messages are meant to be
// shown to users as-is and always name the offending entry, feature or file.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace varcore
