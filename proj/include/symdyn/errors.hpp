#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

// Precondition violated by an argument (symbol outside an alphabet, bad
// permutation, mismatched dimensions).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but outside what the library represents, e.g. an
// infinite non-blank tail.
class UnsupportedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed its configured size bound.
class ResourceLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A machine, automaton or network could not be built from its description.
class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant broken at run time (image outside the unit square,
// non-finite activation).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries the file and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment configuration is missing a value or holds an invalid one.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symdyn
