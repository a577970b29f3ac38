#pragma once

#include <stdexcept>
#include <string>

namespace conflab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class NonInvertibleAlpha : public Error {
 public:
  NonInvertibleAlpha() : Error("alpha is not invertible over Q[d] (determinant is not a nonzero constant)") {}
  using Error::Error;
};

class NonSurjectiveAlpha : public Error {
 public:
  NonSurjectiveAlpha() : Error("alpha is not known to be surjective (determinant is not a nonzero constant)") {}
  using Error::Error;
};

class NotAlphaFixed : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class InvalidTriple : public Error {
 public:
  using Error::Error;
};

class NotQuasiderivation : public Error {
 public:
  using Error::Error;
};

class ModuleMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace conflab
