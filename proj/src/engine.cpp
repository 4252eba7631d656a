#include "mvcm/engine.hpp"

namespace mvcm {

AtomSet effective_f0(const MapModel& model, const EngineConfig& cfg) {
  return cfg.f0.lattice ? cfg.f0 : model.scale->top();
}

AtomSet effective_c(const MapModel& model, const EngineConfig& cfg) {
  return cfg.c_coeff.lattice ? cfg.c_coeff : model.scale->top();
}

namespace {

void require_state(const MapModel& model, const ConceptVector& state) {
  if (static_cast<int>(state.size()) != model.concept_count())
    throw std::invalid_argument("state vector does not cover all concepts");
  for (const AtomSet& a : state)
    if (a.lattice != model.scale.lattice.get())
      throw std::domain_error("state value belongs to a different lattice");
}

}  // namespace

AtomSet signed_join(const MapModel& model, const EngineConfig& cfg, int target,
                    const ConceptVector& state) {
  require_state(model, state);
  AtomSet pos = model.scale->bottom();
  AtomSet neg = model.scale->bottom();
  bool has_neg = false;
  for (const auto& [key, w] : model.weights) {
    if (key.second != target) continue;
    AtomSet term = meet(w.value, state[key.first]);
    if (w.negative) {
      neg = join(neg, term);
      has_neg = true;
    } else {
      pos = join(pos, term);
    }
  }
  if (!has_neg) return pos;
  return cfg.neg_mode == NegMode::symmetric ? sym_diff(pos, neg)
                                            : set_minus(pos, neg);
}

std::pair<ConceptVector, ConceptVector> step(const MapModel& model,
                                             const EngineConfig& cfg,
                                             const ConceptVector& prev,
                                             const ConceptVector& curr) {
  require_state(model, prev);
  require_state(model, curr);
  const AtomSet c = effective_c(model, cfg);
  ConceptVector next(curr.size(), model.scale->bottom());
  ConceptVector coeffs(curr.size(), model.scale->top());
  for (int i = 0; i < model.concept_count(); ++i) {
    if (model.clamped[i]) {
      next[i] = curr[i];
      continue;
    }
    AtomSet s = signed_join(model, cfg, i, curr);
    AtomSet f = implies(s, join(curr[i], prev[i]));
    coeffs[i] = f;
    next[i] = meet(c, meet(f, s));
  }
  return {std::move(next), std::move(coeffs)};
}

ConceptVector compute_r(const MapModel& model, const EngineConfig& cfg,
                        const ConceptVector& prev, const ConceptVector& curr) {
  require_state(model, prev);
  require_state(model, curr);
  ConceptVector r(curr.size(), model.scale->top());
  for (int i = 0; i < model.concept_count(); ++i) {
    if (model.clamped[i]) continue;
    AtomSet s = signed_join(model, cfg, i, curr);
    r[i] = implies(s, meet(curr[i], prev[i]));
  }
  return r;
}

IterationTrace run_from(const MapModel& model, const EngineConfig& cfg,
                        ConceptVector init, bool with_r_diag) {
  if (cfg.max_iters < 3)
    throw std::invalid_argument("max_iters must be at least 3");
  require_state(model, init);

  IterationTrace trace;
  trace.states.push_back(std::move(init));

  // First step: f0 stands in for the residual recursion.
  {
    const ConceptVector& a0 = trace.states[0];
    const AtomSet f0 = effective_f0(model, cfg);
    const AtomSet c = effective_c(model, cfg);
    ConceptVector a1(a0.size(), model.scale->bottom());
    for (int i = 0; i < model.concept_count(); ++i)
      a1[i] = model.clamped[i]
                  ? a0[i]
                  : meet(c, meet(f0, signed_join(model, cfg, i, a0)));
    if (with_r_diag) trace.r_diag.push_back(compute_r(model, cfg, a0, a0));
    trace.coeffs.emplace_back(a0.size(), f0);
    trace.states.push_back(std::move(a1));
  }

  while (true) {
    const ConceptVector& prev = trace.states[trace.states.size() - 2];
    const ConceptVector& curr = trace.states.back();
    auto [next, coeffs] = step(model, cfg, prev, curr);
    if (with_r_diag) trace.r_diag.push_back(compute_r(model, cfg, prev, curr));
    trace.coeffs.push_back(std::move(coeffs));
    trace.states.push_back(std::move(next));
    const std::size_t n = trace.states.size();
    if (trace.states[n - 1] == trace.states[n - 2] &&
        trace.states[n - 2] == trace.states[n - 3]) {
      trace.converged = true;
      break;
    }
    if (static_cast<int>(n) - 1 >= cfg.max_iters) break;
  }
  trace.steps = static_cast<int>(trace.states.size()) - 1;
  if (!trace.converged)
    throw NonConvergenceError(
        "no fixed point after " + std::to_string(trace.steps) + " iterations",
        std::move(trace));
  return trace;
}

IterationTrace run(const MapModel& model, const EngineConfig& cfg,
                   const std::string& case_name, bool with_r_diag) {
  auto it = model.init_cases.find(case_name);
  if (it == model.init_cases.end())
    throw std::invalid_argument("unknown init case: " + case_name);
  return run_from(model, cfg, it->second, with_r_diag);
}

bool check_bound(const IterationTrace& trace, const ConceptVector& init) {
  if (trace.states.size() < 2) return true;
  const ConceptVector& first = trace.states[1];
  for (const ConceptVector& state : trace.states)
    for (std::size_t i = 0; i < state.size(); ++i)
      if (!leq(state[i], join(init[i], first[i]))) return false;
  return true;
}

}  // namespace mvcm
