#pragma once

#include <stdexcept>
#include <string>

namespace tpro {

// Malformed input: bad vertex index, invalid Pruefer sequence, unparsable
// state string, unknown format name.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// A computation would exceed its step or state budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An orbit failed to close within its cap. Only a broken step rule can
// trigger this.
class CapExceeded : public std::logic_error {
 public:
  explicit CapExceeded(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tpro
