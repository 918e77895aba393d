// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace soundfield {

// Base of every error thrown by the library. The CLI maps these to
// non-zero exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SOUNDFIELD_DEFINE_ERROR(Name)        \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  }

SOUNDFIELD_DEFINE_ERROR(InvalidArgument);
SOUNDFIELD_DEFINE_ERROR(DegenerateInput);
SOUNDFIELD_DEFINE_ERROR(DomainError);
SOUNDFIELD_DEFINE_ERROR(FormatError);
SOUNDFIELD_DEFINE_ERROR(UnsupportedFormat);
SOUNDFIELD_DEFINE_ERROR(OrderTooHigh);
SOUNDFIELD_DEFINE_ERROR(DegenerateReference);
SOUNDFIELD_DEFINE_ERROR(ConfigError);

#undef SOUNDFIELD_DEFINE_ERROR

}  // namespace soundfield
