#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace greenmeta {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One or more invariant violations, each prefixed with its field path.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// The scenario is valid field-by-field but the game it induces is not
// strictly convex (some B_i <= 0) or otherwise ill-posed.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Closed-form follower solution left the open unit box.
class NotInteriorError : public Error {
 public:
  NotInteriorError(const std::string& what, Eigen::VectorXd raw_alphas, double raw_sum)
      : Error(what), raw_alphas_(std::move(raw_alphas)), raw_sum_(raw_sum) {}

  const Eigen::VectorXd& raw_alphas() const noexcept { return raw_alphas_; }
  double raw_sum() const noexcept { return raw_sum_; }

 private:
  Eigen::VectorXd raw_alphas_;
  double raw_sum_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, double residual,
                   double price)
      : Error(what), last_(std::move(last_iterate)), residual_(residual), price_(price) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_; }
  double residual() const noexcept { return residual_; }
  double price() const noexcept { return price_; }

 private:
  Eigen::VectorXd last_;
  double residual_;
  double price_;
};

}  // namespace greenmeta
