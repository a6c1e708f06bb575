#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace flaglyap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularInput : public Error {
 public:
  using Error::Error;
};

class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class AsymmetricInput : public Error {
 public:
  using Error::Error;
};

class UnsortedInput : public Error {
 public:
  using Error::Error;
};

class MalformedPermutation : public Error {
 public:
  using Error::Error;
};

class DeterminantError : public Error {
 public:
  using Error::Error;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

class NotSymplectic : public Error {
 public:
  using Error::Error;
};

class SamplerExhausted : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration or constructor arguments.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class WeightNotAdmissible : public Error {
 public:
  using Error::Error;
};

/// The graph-transform solver did not reach its tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(int max_iter, double last_residual, std::vector<double> history)
      : Error("section solver did not converge after " + std::to_string(max_iter) +
              " sweeps (last residual " + std::to_string(last_residual) + ")"),
        max_iter_(max_iter),
        last_residual_(last_residual),
        history_(std::move(history)) {}

  int max_iter() const { return max_iter_; }
  double last_residual() const { return last_residual_; }
  const std::vector<double>& history() const { return history_; }

 private:
  int max_iter_;
  double last_residual_;
  std::vector<double> history_;
};

/// A semigroup gap prediction failed at a concrete point and root.
class PredictionViolated : public Error {
 public:
  PredictionViolated(const std::string& what, int point, int root)
      : Error(what), point_(point), root_(root) {}

  int point() const { return point_; }
  int root() const { return root_; }

 private:
  int point_;
  int root_;
};

}  // namespace flaglyap
