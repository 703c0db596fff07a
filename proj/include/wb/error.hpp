#pragma once

#include <stdexcept>
#include <string>

namespace wb {

/// Bad input: malformed file, violated precondition, failed validation.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured search or size cap was exceeded. Never a wrong answer.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wb
