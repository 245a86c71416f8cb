#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace recip {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrime : Error {
  explicit NotPrime(uint64_t p) : Error("not a prime: " + std::to_string(p)) {}
};

struct ReducibleModulus : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

/// Inversion of a non-unit in a quotient ring F[s]/(m).
struct NonInvertible : Error {
  using Error::Error;
};

struct InfiniteField : Error {
  InfiniteField() : Error("cannot sample from an infinite field") {}
};

/// A linear form in a denominator vanishes at the evaluation point.
struct DenominatorVanishes : Error {
  DenominatorVanishes() : Error("denominator vanishes at evaluation point") {}
};

/// A polynomial has a nonzero coefficient at an exponent that is not a power of q.
struct NonAdditive : Error {
  NonAdditive(uint64_t exp, std::string coeff)
      : Error("non-additive term at exponent " + std::to_string(exp) + " with coefficient " + coeff),
        exponent(exp),
        coefficient(std::move(coeff)) {}
  uint64_t exponent;
  std::string coefficient;
};

struct NotSubmodule : Error {
  using Error::Error;
};

struct NotFree : Error {
  using Error::Error;
};

struct UnknownIdentity : Error {
  explicit UnknownIdentity(const std::string& name) : Error("unknown identity: " + name) {}
};

struct NotLevelStructure : Error {
  using Error::Error;
};

/// Probabilistic rank trials kept disagreeing after the escalation cap.
struct EngineDisagreement : Error {
  using Error::Error;
};

/// A computed object contradicts a structural fact it must satisfy.
struct ConsistencyFailure : Error {
  using Error::Error;
};

}  // namespace recip
