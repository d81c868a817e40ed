#pragma once

#include <stdexcept>
#include <string>

namespace steinhaus {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A mathematical check did not hold (bad witness, asymmetric entry, ...).
class VerificationError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace steinhaus
