#ifndef LT_ERRORS_HPP
#define LT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lt {

// A computation that could not meet its tolerance or produced non-finite data.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated a documented precondition.
class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace lt

#endif  // LT_ERRORS_HPP
