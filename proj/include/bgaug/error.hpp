// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bgaug {

enum class ErrorKind {
  Argument,          // invalid parameter value
  Bounds,            // rectangle/offset outside an image
  Config,            // unusable configuration (empty pool, missing masks, ...)
  Data,              // malformed or insufficient data content
  Format,            // file decodes but has the wrong shape or syntax
  Io,                // file system failure
  DegenerateTarget,  // zero-variance regression target
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process exit code for an error category: 2 configuration, 3 data/format, 4 I/O.
inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Argument:
    case ErrorKind::Config:
      return 2;
    case ErrorKind::Io:
      return 4;
    default:
      return 3;
  }
}

}  // namespace bgaug
