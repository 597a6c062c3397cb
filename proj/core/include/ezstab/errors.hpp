#pragma once

#include <stdexcept>
#include <string>

namespace ezstab {

// Iteration caps, non-convergence, overflow in constructed operators.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ezstab
