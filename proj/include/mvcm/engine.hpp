#pragma once

#include "mvcm/model.hpp"

namespace mvcm {

using ConceptVector = std::vector<AtomSet>;

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(std::string msg, IterationTrace trace)
      : std::runtime_error(std::move(msg)), trace(std::move(trace)) {}
  IterationTrace trace;
};

/// The weighted join feeding concept `target`: the join of w_ji ∧ A_j
/// over positive incoming weights, minus (symmetric or strict set
/// difference, per config) the join over negative ones. Empty join is
/// the bottom.
AtomSet signed_join(const MapModel& model, const EngineConfig& cfg, int target,
                    const ConceptVector& state);

/// One synchronous update from the (prev, curr) state pair: every
/// non-clamped concept i gets f_i ∧ s_i where s_i is its signed join over
/// curr and f_i = s_i ⇒ (A_i^k ∨ A_i^{k-1}); clamped concepts copy curr.
/// Returns the next state and the f vector used (top for clamped slots).
std::pair<ConceptVector, ConceptVector> step(const MapModel& model,
                                             const EngineConfig& cfg,
                                             const ConceptVector& prev,
                                             const ConceptVector& curr);

/// The r diagnostic from the convergence proof:
/// r_i = s_i ⇒ (A_i^k ∧ A_i^{k-1}); r_i ≤ f_i throughout a run, with
/// equality at the fixed point.
ConceptVector compute_r(const MapModel& model, const EngineConfig& cfg,
                        const ConceptVector& prev, const ConceptVector& curr);

/// Iterates from a named init case until three consecutive equal states.
/// The first step applies cfg.f0 in place of the residual recursion.
/// Throws NonConvergenceError (carrying the partial trace) when max_iters
/// updates pass without triple equality.
IterationTrace run(const MapModel& model, const EngineConfig& cfg,
                   const std::string& case_name, bool with_r_diag = false);

/// Same, from an explicit initial vector.
IterationTrace run_from(const MapModel& model, const EngineConfig& cfg,
                        ConceptVector init, bool with_r_diag = false);

/// True iff every recorded state stays inside the join of the initial
/// vector and the first computed state: A_i^k ≤ A_i^0 ∨ A_i^1 for all i, k.
bool check_bound(const IterationTrace& trace, const ConceptVector& init);

/// Resolved defaults: f0 and c_coeff fall back to the scale top.
AtomSet effective_f0(const MapModel& model, const EngineConfig& cfg);
AtomSet effective_c(const MapModel& model, const EngineConfig& cfg);

}  // namespace mvcm
