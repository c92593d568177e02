#pragma once

#include <stdexcept>
#include <string>

namespace rotorwalk {

/// A proven identity or bound failed on a computed run; indicates an
/// engine defect rather than bad input.
class LemmaViolation : public std::logic_error {
public:
    explicit LemmaViolation(const std::string& what) : std::logic_error(what) {}
};

/// An iterative method stopped at its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rotorwalk
