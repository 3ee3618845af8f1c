#pragma once

#include <stdexcept>
#include <string>

namespace polarspec {

/// File/format problems (CLI exit code 3).
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failures such as eigensolver non-convergence (CLI exit code 4).
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polarspec
