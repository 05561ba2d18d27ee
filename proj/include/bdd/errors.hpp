#pragma once

#include <stdexcept>
#include <string>

namespace bdd {

/// Thrown when an iterative numeric routine fails to converge or an
/// internal consistency check on a computed quantity fails.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bdd
