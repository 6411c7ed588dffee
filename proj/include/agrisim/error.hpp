#pragma once

#include <stdexcept>
#include <string>

namespace agrisim {

// Base for every error raised by the library. Input-validation failures derive
// from ValidationError so front ends can map them to a distinct exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class OutOfValidityRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PixelOutOfBounds : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegeneratePolygon : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownImageId : public Error {
 public:
  using Error::Error;
};

class TooManyTargets : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NegativeTime : public Error {
 public:
  using Error::Error;
};

class EmptyTankAtStart : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownParameter : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Wraps an error raised inside one pipeline stage of a scenario run.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, bool validation)
      : Error(stage + ": " + what), stage_(std::move(stage)), validation_(validation) {}

  const std::string& stage() const noexcept { return stage_; }
  bool is_validation() const noexcept { return validation_; }

 private:
  std::string stage_;
  bool validation_;
};

}  // namespace agrisim
