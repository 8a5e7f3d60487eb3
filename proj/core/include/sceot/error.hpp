#pragma once

#include <stdexcept>
#include <string>

namespace sceot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Quantile requested at a level where the CDF is flat.
class DegenerateQuantileError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Concentration kappa(rho, r) is not below 1/n.
class ConcentrationError : public Error {
 public:
  using Error::Error;
};

class ThresholdNotFoundError : public Error {
 public:
  using Error::Error;
};

// A documented size guard was exceeded. The message names the guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

// Mollifier width violates eta < alpha / 4.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sceot
