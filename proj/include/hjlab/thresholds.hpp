#pragma once

// Closed-form regularity thresholds for MFG systems with power couplings
// f(m) = +-sigma m^alpha or log m and Hamiltonians H ~ |p|^gamma on T^n.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hjlab {

enum class Regime {
  kStationaryDefocusing,
  kStationaryFocusing,
  kStationaryLog,
  kParabolicDefocusing,
  kParabolicFocusing,
  kParabolicLog,
};

std::string to_string(Regime r);
/// Throws std::invalid_argument for unknown names.
Regime parse_regime(const std::string& name);
const std::vector<Regime>& all_regimes();

struct RegimeQuery {
  int n = 2;
  double gamma = 2.0;
  double alpha = 1.0;  // ignored by the logarithmic regimes
  Regime regime = Regime::kStationaryDefocusing;
  bool small_data = false;

  double gamma_prime() const { return gamma / (gamma - 1.0); }
  void validate() const;
};

/// Which parameter the threshold bounds: alpha for power couplings, gamma
/// for logarithmic ones.
enum class BoundedParameter { kAlpha, kGamma };

struct ThresholdVerdict {
  double threshold = 0.0;  // +inf when unrestricted
  bool satisfied = false;  // bounded parameter < threshold (strict)
  BoundedParameter bounds = BoundedParameter::kAlpha;
  std::string formula_id;
  std::string statement;  // short tag of the smoothness statement used
  /// Interpretation flags: "nonpositive-denominator", "critical",
  /// "branch-boundary", "small-data", "small-data-ignored".
  std::vector<std::string> notes;
  /// Parabolic defocusing with gamma > 2: the improved superquadratic bound,
  /// reported next to the primary branch value.
  std::optional<double> improved_threshold;
  std::optional<bool> improved_satisfied;

  bool has_note(const std::string& flag) const;
};

ThresholdVerdict evaluate(const RegimeQuery& query);

/// Rows follow gamma_grid, columns alpha_grid.
using RegimeTable = std::vector<std::vector<ThresholdVerdict>>;
RegimeTable regime_table(int n, const std::vector<double>& gamma_grid,
                         const std::vector<double>& alpha_grid, Regime regime, bool small_data = false);

/// CSV with header n,regime,gamma,gamma_prime,alpha,threshold,satisfied,
/// formula_id,improved_threshold,notes (notes joined by ';').
void write_regime_csv(std::ostream& out, int n, const std::vector<double>& gamma_grid,
                      const std::vector<double>& alpha_grid, Regime regime, const RegimeTable& table);

}  // namespace hjlab
