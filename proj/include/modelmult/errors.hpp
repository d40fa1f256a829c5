#pragma once

#include <stdexcept>
#include <string>

namespace modelmult {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable tag used in CLI error reports.
  virtual const char* kind() const noexcept { return "error"; }
};

/// An argument lies outside the mathematical domain of an operation
/// (a point outside the disk, a zero on the circle, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// A function produced a non-finite value or could not be evaluated.
class EvaluationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "evaluation"; }
};

/// The requested accuracy could not be certified; carries the best result.
class PartialResultError : public Error {
 public:
  PartialResultError(const std::string& what, double value_re, double value_im,
                     double achieved_bound)
      : Error(what), re_(value_re), im_(value_im), bound_(achieved_bound) {}
  const char* kind() const noexcept override { return "partial-result"; }
  double value_real() const noexcept { return re_; }
  double value_imag() const noexcept { return im_; }
  double achieved_bound() const noexcept { return bound_; }

 private:
  double re_;
  double im_;
  double bound_;
};

/// A linear system is singular or too ill-conditioned to trust.
class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  const char* kind() const noexcept override { return "ill-conditioned"; }
  double condition_number() const noexcept { return condition_; }

 private:
  double condition_;
};

class NotImplementedError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "not-implemented"; }
};

/// Malformed input data (zero weights, inconsistent measures).
class DataError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "data"; }
};

/// Malformed JSON descriptor; `pointer()` is a JSON pointer into the input.
class DescriptorError : public Error {
 public:
  DescriptorError(const std::string& what, std::string pointer)
      : Error(what + " (at " + (pointer.empty() ? std::string("/") : pointer) + ")"),
        pointer_(std::move(pointer)) {}
  const char* kind() const noexcept override { return "descriptor"; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace modelmult
