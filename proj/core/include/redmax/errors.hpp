#pragma once

#include <stdexcept>
#include <string>

namespace redmax {

// Bad arguments or malformed input files. CLI maps this to exit code 2.
struct InvalidInputError : std::runtime_error {
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// A computation was asked to exceed a configured cap. CLI exit code 3.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A state that the theory rules out was reached. Always a bug or a genuine
// discrepancy with the theory; never swallowed. CLI exit code 4.
struct InternalContradictionError : std::logic_error {
  explicit InternalContradictionError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace redmax
