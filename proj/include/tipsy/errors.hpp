#pragma once

#include <stdexcept>
#include <string>

namespace tipsy {

// Base of every error raised by the library. The CLI maps these onto exit
// codes, so each subclass corresponds to one failure category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidFamilyError : public Error {
 public:
  using Error::Error;
};

// Edge-list syntax problems and graphs that violate the Graph invariants.
class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidStartError : public Error {
 public:
  using Error::Error;
};

class InvalidPositionError : public Error {
 public:
  using Error::Error;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class OutOfRegimeError : public Error {
 public:
  using Error::Error;
};

class CensoringError : public Error {
 public:
  CensoringError(const std::string& what, double censored_fraction)
      : Error(what), censored_fraction_(censored_fraction) {}

  double censored_fraction() const { return censored_fraction_; }

 private:
  double censored_fraction_;
};

class UnsupportedMethodError : public Error {
 public:
  using Error::Error;
};

}  // namespace tipsy
