#pragma once

#include <stdexcept>
#include <string>

namespace dimforge {

// Base for all domain errors raised by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// invert() on an element whose norm is not +-p^m.
class NotAUnitError : public Error {
  public:
    explicit NotAUnitError(const std::string& msg) : Error(msg) {}
};

// sqrt(d) requested for a perfect square d.
class PerfectSquareError : public Error {
  public:
    explicit PerfectSquareError(const std::string& msg) : Error(msg) {}
};

// p^s != 1 (mod m1) or (mod m2): the congruence coupling would depend on
// the chosen representative, so the group is ill-defined.
class BadModulusError : public Error {
  public:
    explicit BadModulusError(const std::string& msg) : Error(msg) {}
};

// Tuple fails x = j (mod m1) or y = k (mod m2).
class CongruenceViolationError : public Error {
  public:
    explicit CongruenceViolationError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
  public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace dimforge
