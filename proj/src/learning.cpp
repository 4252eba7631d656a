#include "mvcm/learning.hpp"

#include <algorithm>

namespace mvcm {

AtomSet gen_diff(const AtomSet& doc, const AtomSet& a) { return sym_diff(doc, a); }

AtomSet delta_w(const AtomSet& f_i, const AtomSet& gen, const AtomSet& a_j) {
  return implies(a_j, implies(f_i, gen));
}

SignedWeight apply_weight_update(SignedWeight w, const AtomSet& dw,
                                 bool concept_above_doc) {
  const bool deduct = w.negative ? !concept_above_doc : concept_above_doc;
  w.value = deduct ? set_minus(w.value, dw) : join(w.value, dw);
  return w;
}

namespace {

bool in_doc(const AtomSet& value, const std::vector<AtomSet>& docs) {
  return std::find(docs.begin(), docs.end(), value) != docs.end();
}

AtomSet choose_doc(const std::vector<AtomSet>& docs, const AtomSet& value,
                   DocSelect select) {
  if (select == DocSelect::first) return docs.front();
  AtomSet best = docs.front();
  int best_dist = generator_count(gen_diff(best, value));
  for (const AtomSet& d : docs) {
    int dist = generator_count(gen_diff(d, value));
    if (dist < best_dist) {
      best = d;
      best_dist = dist;
    }
  }
  return best;
}

struct Session {
  MapModel model;  // working copy; weights mutate across rounds
  const EngineConfig& cfg;
  const LearnConfig& learn_cfg;
  std::vector<int> targets;
  LearnResult result;

  // Corrects one out-of-doc target: picks the doc element, decides the
  // direction from the order between the concept and the doc value
  // (incomparable or below grows, strictly above shrinks), and updates
  // every incoming edge of the target. Zero-valued entries are dropped.
  void correct(int target, const AtomSet& value, const AtomSet& f_i,
               const ConceptVector& sources, int round, int step) {
    const auto& docs = model.docs.at(target);
    AtomSet doc = choose_doc(docs, value, learn_cfg.doc_select);
    AtomSet gen = gen_diff(doc, value);
    const bool above = leq(doc, value) && doc != value;
    result.corrections.push_back({round, step, target, doc, above});
    for (auto it = model.weights.begin(); it != model.weights.end();) {
      if (it->first.second != target) {
        ++it;
        continue;
      }
      AtomSet dw = delta_w(f_i, gen, sources[it->first.first]);
      SignedWeight updated = apply_weight_update(it->second, dw, above);
      if (updated.value.bits == 0) {
        it = model.weights.erase(it);
      } else {
        it->second = updated;
        ++it;
      }
    }
  }

  bool all_in_doc(const ConceptVector& state) const {
    for (int t : targets)
      if (!in_doc(state[t], model.docs.at(t))) return false;
    return true;
  }

  void finish(IterationTrace trace, int rounds) {
    const ConceptVector& final_state = trace.states.back();
    for (int t : targets) result.achieved[t] = final_state[t];
    result.weights = model.weights;
    result.trace = std::move(trace);
    result.outer_rounds = rounds;
  }
};

}  // namespace

LearnResult learn(const MapModel& model, const EngineConfig& engine_cfg,
                  const LearnConfig& learn_cfg, const std::string& case_name) {
  Session s{model, engine_cfg, learn_cfg, {}, {}};
  if (learn_cfg.targets.empty()) {
    for (const auto& [idx, docs] : model.docs) s.targets.push_back(idx);
  } else {
    s.targets = learn_cfg.targets;
  }
  for (int t : s.targets) {
    auto it = model.docs.find(t);
    if (it == model.docs.end() || it->second.empty())
      throw std::invalid_argument("learning target has no doc set: " +
                                  model.concepts.at(t));
  }
  auto case_it = model.init_cases.find(case_name);
  if (case_it == model.init_cases.end())
    throw std::invalid_argument("unknown init case: " + case_name);
  const ConceptVector& init = case_it->second;

  for (int round = 1; round <= learn_cfg.max_outer; ++round) {
    if (learn_cfg.mode == LearnMode::end_of_run) {
      IterationTrace trace = run_from(s.model, engine_cfg, init);
      const ConceptVector& final_state = trace.states.back();
      if (s.all_in_doc(final_state)) {
        s.finish(std::move(trace), round);
        return std::move(s.result);
      }
      const ConceptVector& f_final = trace.coeffs.back();
      for (int t : s.targets)
        if (!in_doc(final_state[t], s.model.docs.at(t)))
          s.correct(t, final_state[t], f_final[t], final_state, round, -1);
      s.result.trace = std::move(trace);
    } else {
      // Per-step mode: one run with a correction pass after every update.
      IterationTrace trace;
      trace.states.push_back(init);
      const AtomSet f0 = effective_f0(s.model, engine_cfg);
      const AtomSet c = effective_c(s.model, engine_cfg);
      ConceptVector a1(init.size(), s.model.scale->bottom());
      for (int i = 0; i < s.model.concept_count(); ++i)
        a1[i] = s.model.clamped[i]
                    ? init[i]
                    : meet(c, meet(f0, signed_join(s.model, engine_cfg, i, init)));
      trace.coeffs.emplace_back(init.size(), f0);
      trace.states.push_back(a1);
      for (int t : s.targets)
        if (!in_doc(a1[t], s.model.docs.at(t)))
          s.correct(t, a1[t], f0, init, round, 1);

      while (static_cast<int>(trace.states.size()) - 1 < engine_cfg.max_iters) {
        const ConceptVector prev = trace.states[trace.states.size() - 2];
        const ConceptVector curr = trace.states.back();
        auto [next, coeffs] = step(s.model, engine_cfg, prev, curr);
        trace.states.push_back(next);
        const std::size_t n = trace.states.size();
        if (trace.states[n - 1] == trace.states[n - 2] &&
            trace.states[n - 2] == trace.states[n - 3]) {
          trace.converged = true;
          trace.coeffs.push_back(std::move(coeffs));
          break;
        }
        for (int t : s.targets)
          if (!in_doc(next[t], s.model.docs.at(t)))
            s.correct(t, next[t], coeffs[t], curr, round,
                      static_cast<int>(n) - 1);
        trace.coeffs.push_back(std::move(coeffs));
      }
      trace.steps = static_cast<int>(trace.states.size()) - 1;
      if (!trace.converged)
        throw NonConvergenceError("learning run hit max_iters", std::move(trace));
      if (s.all_in_doc(trace.states.back())) {
        s.finish(std::move(trace), round);
        return std::move(s.result);
      }
      s.result.trace = std::move(trace);
    }
  }
  s.result.weights = s.model.weights;
  s.result.outer_rounds = learn_cfg.max_outer;
  throw LearnFailureError("targets still outside doc sets after " +
                              std::to_string(learn_cfg.max_outer) + " rounds",
                          std::move(s.result));
}

}  // namespace mvcm
