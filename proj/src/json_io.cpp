#include "hjlab/json_io.hpp"

#include <cmath>

#include "hjlab/field_io.hpp"

namespace hjlab {

Json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json map_json(const std::map<double, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[format_double(k)] = number_json(v);
  return out;
}

Json to_json(const HJSolution& sol) {
  Json log = Json::array();
  for (const NewtonStep& s : sol.log)
    log.push_back({{"residual_linf", number_json(s.residual_linf)},
                   {"residual_l2", number_json(s.residual_l2)},
                   {"step_length", s.step_length},
                   {"krylov_iterations", s.krylov_iterations}});
  return {{"lambda", number_json(sol.lambda)},
          {"residual_linf", number_json(sol.residual_linf)},
          {"residual_l2", number_json(sol.residual_l2)},
          {"newton_iters", sol.newton_iters},
          {"log", std::move(log)}};
}

Json to_json(const EstimateReport& r) {
  Json ids = Json::object();
  for (const auto& [k, v] : r.identity_residuals) ids[k] = number_json(v);
  return {{"lhs_hessian", number_json(r.lhs_hessian)},
          {"lhs_grad4", number_json(r.lhs_grad4)},
          {"rhs_f2", number_json(r.rhs_f2)},
          {"ratio", number_json(r.ratio)},
          {"bound", kEstimateConstant},
          {"degenerate", r.degenerate},
          {"identity_residuals", std::move(ids)}};
}

Json to_json(const SearchResult& r) {
  int accepted = 0;
  for (const SearchTrial& t : r.trials) accepted += t.accepted ? 1 : 0;
  return {{"best_ratio", number_json(r.best_ratio)},
          {"bound", kEstimateConstant},
          {"trials", r.trials.size()},
          {"accepted", accepted},
          {"skipped", r.skipped}};
}

Json to_json(const FPSolution& sol) {
  return {{"residual_l2", number_json(sol.residual_l2)},
          {"min_m", number_json(sol.min_m)},
          {"mass_error", number_json(sol.mass_error)},
          {"iterations", sol.iterations}};
}

Json to_json(const BootstrapReport& r) {
  return {{"lq_m_alpha", map_json(r.lq_m_alpha)},
          {"w22_u", number_json(r.w22_u)},
          {"grad4_u", number_json(r.grad4_u)},
          {"lr_drift", map_json(r.lr_drift)},
          {"holder_m", map_json(r.holder_m)},
          {"holder_d2u", map_json(r.holder_d2u)},
          {"energy_hessian_m", number_json(r.energy_hessian_m)},
          {"energy_grad_power", number_json(r.energy_grad_power)}};
}

Json to_json(const MFGSolution& sol) {
  Json history = Json::array();
  for (const OuterIterate& it : sol.history)
    history.push_back({{"fixpoint_gap", number_json(it.fixpoint_gap)},
                       {"residual_hj", number_json(it.residual_hj)},
                       {"residual_fp", number_json(it.residual_fp)},
                       {"lambda", number_json(it.lambda)},
                       {"damping", it.damping}});
  Json out = {{"lambda", number_json(sol.lambda)},
              {"outer_iters", sol.outer_iters},
              {"residual_hj", number_json(sol.residual_hj)},
              {"residual_fp", number_json(sol.residual_fp)},
              {"fixpoint_gap", number_json(sol.fixpoint_gap)},
              {"min_m", number_json(min_value(sol.m))},
              {"max_m", number_json(max_value(sol.m))},
              {"mass", number_json(integral(sol.m))},
              {"history", std::move(history)}};
  if (sol.diagnostics) out["diagnostics"] = to_json(*sol.diagnostics);
  return out;
}

Json to_json(const AlphaSweepRow& row) {
  Json out = {{"alpha", row.alpha}, {"converged", row.converged}};
  if (!row.converged) {
    out["error"] = row.error;
    return out;
  }
  out["lambda"] = number_json(row.lambda);
  out["residual_hj"] = number_json(row.residual_hj);
  out["residual_fp"] = number_json(row.residual_fp);
  out["fixpoint_gap"] = number_json(row.fixpoint_gap);
  out["outer_iters"] = row.outer_iters;
  out["min_m"] = number_json(row.min_m);
  out["max_m"] = number_json(row.max_m);
  out["w22_u"] = number_json(row.w22_u);
  out["holder_m"] = map_json(row.holder_m);
  return out;
}

Json to_json(const ThresholdVerdict& v) {
  Json out = {{"threshold", number_json(v.threshold)},
              {"bounds", v.bounds == BoundedParameter::kAlpha ? "alpha" : "gamma"},
              {"satisfied", v.satisfied},
              {"formula_id", v.formula_id},
              {"statement", v.statement},
              {"notes", v.notes}};
  if (v.improved_threshold) {
    out["improved_threshold"] = number_json(*v.improved_threshold);
    out["improved_satisfied"] = *v.improved_satisfied;
  }
  return out;
}

}  // namespace hjlab
