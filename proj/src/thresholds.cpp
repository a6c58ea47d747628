#include "hjlab/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hjlab/field_io.hpp"

namespace hjlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RegimeName {
  Regime regime;
  const char* name;
};

constexpr RegimeName kNames[] = {
    {Regime::kStationaryDefocusing, "stationary-defocusing"},
    {Regime::kStationaryFocusing, "stationary-focusing"},
    {Regime::kStationaryLog, "stationary-log"},
    {Regime::kParabolicDefocusing, "parabolic-defocusing"},
    {Regime::kParabolicFocusing, "parabolic-focusing"},
    {Regime::kParabolicLog, "parabolic-log"},
};

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// num / den, or +inf with a flag when den <= 0.
double bound(double num, double den, ThresholdVerdict& v) {
  if (den <= 0.0) {
    v.notes.push_back("nonpositive-denominator");
    return kInf;
  }
  return num / den;
}

void set(ThresholdVerdict& v, double threshold, const char* id, const char* statement) {
  v.threshold = threshold;
  v.formula_id = id;
  v.statement = statement;
}

void stationary_defocusing(const RegimeQuery& q, ThresholdVerdict& v) {
  const double n = q.n, g = q.gamma, gp = q.gamma_prime();
  if (q.small_data) v.notes.push_back("small-data-ignored");
  if (q.n == 2 && g == 2.0) {
    set(v, kInf, "stationary-defocusing/2d-natural-growth", "smooth for any alpha > 0 when n = 2, gamma = 2");
    return;
  }
  if (q.n == 1 || g < n / (n - 1.0)) {
    set(v, kInf, "stationary-defocusing/slowly-increasing",
        "smooth for any alpha > 0 when 1 < gamma < n/(n-1)");
    return;
  }
  if (same(g, n / (n - 1.0))) v.notes.push_back("branch-boundary");
  set(v, bound(gp, n - 2.0 - gp, v), "stationary-defocusing/maximal-regularity",
      "alpha < gamma'/(n-2-gamma')");
}

void stationary_focusing(const RegimeQuery& q, ThresholdVerdict& v) {
  const double n = q.n, gp = q.gamma_prime();
  if (q.small_data) {
    v.notes.push_back("small-data");
    set(v, bound(gp, n - gp, v), "stationary-focusing/small-data", "alpha < gamma'/(n-gamma') for small sigma");
    return;
  }
  set(v, gp / n, "stationary-focusing/general", "alpha < gamma'/n");
}

void stationary_log(const RegimeQuery& q, ThresholdVerdict& v) {
  v.bounds = BoundedParameter::kGamma;
  if (q.small_data) v.notes.push_back("small-data-ignored");
  set(v, 2.0 + bound(1.0, q.n - 1.0, v), "stationary-log/growth", "1 < gamma < 2 + 1/(n-1)");
}

void parabolic_defocusing(const RegimeQuery& q, ThresholdVerdict& v) {
  const double n = q.n, g = q.gamma, gp = q.gamma_prime();
  const double coercive = (n + 2.0) / (n + 1.0);
  if (q.small_data) v.notes.push_back("small-data-ignored");
  if (g < coercive) {
    set(v, kInf, "parabolic-defocusing/weakly-coercive", "smooth for any alpha > 0 when 1 < gamma < (n+2)/(n+1)");
    return;
  }
  if (q.n <= 2 && g == 2.0) {
    set(v, kInf, "parabolic-defocusing/low-dimension-natural-growth",
        "smooth for any alpha > 0 when n <= 2, gamma = 2");
    return;
  }
  if (same(g, coercive) || g == 2.0) v.notes.push_back("branch-boundary");
  if (g <= 2.0) {
    set(v, bound(gp * n, (n - 2.0) * (n + 2.0 - gp), v), "parabolic-defocusing/subquadratic",
        "alpha < gamma' n / ((n-2)(n+2-gamma'))");
    return;
  }
  set(v, bound(2.0, n * (g - 1.0) - 2.0, v), "parabolic-defocusing/superquadratic",
      "alpha < 2/(n(gamma-1)-2)");
  ThresholdVerdict scratch;
  const double improved =
      bound(gp * ((n + 2.0) * (g - 1.0) - 2.0), (n + 2.0 - gp) * (n * (g - 1.0) - 2.0), scratch);
  v.improved_threshold = improved;
  v.improved_satisfied = q.alpha < improved;
}

void parabolic_focusing(const RegimeQuery& q, ThresholdVerdict& v) {
  const double n = q.n, g = q.gamma, gp = q.gamma_prime();
  const double coercive = (n + 2.0) / (n + 1.0);
  if (g < coercive) {
    set(v, kInf, "parabolic-focusing/weakly-coercive", "smooth for any alpha > 0 when 1 < gamma < (n+2)/(n+1)");
    return;
  }
  if (q.small_data) {
    v.notes.push_back("small-data");
    set(v, kInf, "parabolic-focusing/small-data", "smooth for small sigma");
    return;
  }
  if (same(g, coercive) || g == 2.0) v.notes.push_back("branch-boundary");
  if (g <= 2.0) {
    set(v, gp / n, "parabolic-focusing/subquadratic", "alpha < gamma'/n");
    return;
  }
  set(v, bound(2.0, (n + 2.0) * (g - 1.0) - 2.0, v), "parabolic-focusing/superquadratic",
      "alpha < 2/((n+2)(gamma-1)-2)");
}

void parabolic_log(const RegimeQuery& q, ThresholdVerdict& v) {
  v.bounds = BoundedParameter::kGamma;
  if (q.small_data) v.notes.push_back("small-data-ignored");
  set(v, 1.25, "parabolic-log/growth", "1 < gamma < 5/4");
}

}  // namespace

std::string to_string(Regime r) {
  for (const auto& [regime, name] : kNames)
    if (regime == r) return name;
  throw std::invalid_argument("unknown regime");
}

Regime parse_regime(const std::string& name) {
  for (const auto& [regime, n] : kNames)
    if (name == n) return regime;
  throw std::invalid_argument("unknown regime '" + name + "'");
}

const std::vector<Regime>& all_regimes() {
  static const std::vector<Regime> regimes = [] {
    std::vector<Regime> r;
    for (const auto& entry : kNames) r.push_back(entry.regime);
    return r;
  }();
  return regimes;
}

void RegimeQuery::validate() const {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and > 1");
  const bool log = regime == Regime::kStationaryLog || regime == Regime::kParabolicLog;
  if (!log && !(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

bool ThresholdVerdict::has_note(const std::string& flag) const {
  return std::find(notes.begin(), notes.end(), flag) != notes.end();
}

ThresholdVerdict evaluate(const RegimeQuery& query) {
  query.validate();
  ThresholdVerdict v;
  switch (query.regime) {
    case Regime::kStationaryDefocusing: stationary_defocusing(query, v); break;
    case Regime::kStationaryFocusing: stationary_focusing(query, v); break;
    case Regime::kStationaryLog: stationary_log(query, v); break;
    case Regime::kParabolicDefocusing: parabolic_defocusing(query, v); break;
    case Regime::kParabolicFocusing: parabolic_focusing(query, v); break;
    case Regime::kParabolicLog: parabolic_log(query, v); break;
    default: throw std::invalid_argument("unknown regime");
  }
  const double x = v.bounds == BoundedParameter::kAlpha ? query.alpha : query.gamma;
  v.satisfied = x < v.threshold;
  if (x == v.threshold) v.notes.push_back("critical");
  return v;
}

RegimeTable regime_table(int n, const std::vector<double>& gamma_grid, const std::vector<double>& alpha_grid,
                         Regime regime, bool small_data) {
  if (gamma_grid.empty() || alpha_grid.empty()) throw std::invalid_argument("regime table grids must be nonempty");
  RegimeTable table;
  for (double g : gamma_grid) {
    std::vector<ThresholdVerdict> row;
    for (double a : alpha_grid) row.push_back(evaluate({n, g, a, regime, small_data}));
    table.push_back(std::move(row));
  }
  return table;
}

void write_regime_csv(std::ostream& out, int n, const std::vector<double>& gamma_grid,
                      const std::vector<double>& alpha_grid, Regime regime, const RegimeTable& table) {
  out << "n,regime,gamma,gamma_prime,alpha,threshold,satisfied,formula_id,improved_threshold,notes\n";
  for (std::size_t i = 0; i < gamma_grid.size(); ++i)
    for (std::size_t j = 0; j < alpha_grid.size(); ++j) {
      const ThresholdVerdict& v = table.at(i).at(j);
      const double g = gamma_grid[i];
      out << n << ',' << to_string(regime) << ',' << format_double(g) << ',' << format_double(g / (g - 1.0)) << ','
          << format_double(alpha_grid[j]) << ',' << format_double(v.threshold) << ','
          << (v.satisfied ? "true" : "false") << ',' << v.formula_id << ','
          << (v.improved_threshold ? format_double(*v.improved_threshold) : "") << ',';
      for (std::size_t k = 0; k < v.notes.size(); ++k) out << (k ? ";" : "") << v.notes[k];
      out << '\n';
    }
}

}  // namespace hjlab
