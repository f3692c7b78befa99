#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace darboux {

/// Contract violations (mismatched contexts, unknown variables, bad arity).
/// Data-dependent outcomes are returned through `Outcome` instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("polynomials live in different variable contexts") {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'") {}
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t expected, std::size_t got)
      : Error("expected " + std::to_string(expected) + " values, got " + std::to_string(got)) {}
};

class BadOutcomeAccess : public Error {
 public:
  BadOutcomeAccess() : Error("accessed the wrong alternative of an Outcome") {}
};

/// Either a value or a typed failure. Failures here are expected results
/// (a curve that is not invariant, a string that does not parse), not bugs.
template <class T, class E>
class Outcome {
 public:
  Outcome(T value) : data_(std::in_place_index<0>, std::move(value)) {}   // NOLINT
  Outcome(E error) : data_(std::in_place_index<1>, std::move(error)) {}   // NOLINT

  bool ok() const { return data_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw BadOutcomeAccess();
    return std::get<0>(data_);
  }
  T&& value() && {
    if (!ok()) throw BadOutcomeAccess();
    return std::get<0>(std::move(data_));
  }
  const E& error() const {
    if (ok()) throw BadOutcomeAccess();
    return std::get<1>(data_);
  }

 private:
  std::variant<T, E> data_;
};

}  // namespace darboux
