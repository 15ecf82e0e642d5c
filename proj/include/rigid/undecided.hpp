#pragma once

#include <stdexcept>
#include <string>

namespace rigid {

/// Thrown when a search exceeds its node budget. Callers that run many
/// probes (experiments, census) catch this and count the case separately;
/// it is never converted into a boolean answer.
class UndecidedError : public std::runtime_error {
public:
  explicit UndecidedError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace rigid
