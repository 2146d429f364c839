#pragma once

#include <stdexcept>
#include <string>

namespace qcrystal {

// Malformed user input (shape grammar, weights, flags).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A request outside what the library implements (e.g. level restriction for type C).
class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded.
class CapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Arguments violate a mathematical precondition.
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An internal identity failed: conflicting local energies, non-isomorphic
// affine graphs, non-integral exponents.  Always indicates a bug or a wrong
// structural choice, never bad input.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace qcrystal
