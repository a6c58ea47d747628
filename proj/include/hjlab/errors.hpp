#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hjlab {

enum class SolverFailure {
  kNonConvergence,
  kBlowUp,
  kPositivityLoss,
  kNegativeEigenvector,
  kDegenerateSource,
};

const char* to_string(SolverFailure kind);

/// Raised when a solver cannot meet its contract. Carries the best residual
/// reached and, for outer iterations, the residual history.
class SolverError : public std::runtime_error {
 public:
  SolverError(SolverFailure kind, const std::string& what, double best_residual = 0.0,
              std::vector<double> history = {})
      : std::runtime_error(what), kind_(kind), best_residual_(best_residual),
        history_(std::move(history)) {}

  SolverFailure kind() const { return kind_; }
  double best_residual() const { return best_residual_; }
  const std::vector<double>& history() const { return history_; }

 private:
  SolverFailure kind_;
  double best_residual_;
  std::vector<double> history_;
};

}  // namespace hjlab
