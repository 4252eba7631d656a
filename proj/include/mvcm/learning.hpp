#pragma once

#include "mvcm/engine.hpp"

namespace mvcm {

enum class LearnMode { end_of_run, per_step };
enum class DocSelect { first, best };

struct LearnConfig {
  LearnMode mode = LearnMode::end_of_run;
  DocSelect doc_select = DocSelect::first;
  int max_outer = 50;
  /// Concepts to drive into their doc sets; empty means every concept
  /// that has a doc list.
  std::vector<int> targets;
};

/// One recorded weight correction: which target was out of its doc set,
/// the doc element compared against, and the direction taken.
struct Correction {
  int round = 0;
  int step = 0;  // -1 in end-of-run mode
  int target = 0;
  AtomSet doc;
  bool shrink = false;  // true when the concept sat strictly above doc
};

struct LearnResult {
  WeightMatrix weights;
  IterationTrace trace;  // final run under the learned weights
  int outer_rounds = 0;
  std::map<int, AtomSet> achieved;  // target -> doc element it landed on
  std::vector<Correction> corrections;
};

class LearnFailureError : public std::runtime_error {
 public:
  LearnFailureError(std::string msg, LearnResult last)
      : std::runtime_error(std::move(msg)), last(std::move(last)) {}
  LearnResult last;
};

/// gen_ri = doc_ri − A_i: the generators separating a concept from a
/// desired output value (symmetric difference).
AtomSet gen_diff(const AtomSet& doc, const AtomSet& a);

/// Δw_ji = A_j ⇒ (f_i ⇒ gen): the weight change that can move concept i
/// by gen through the edge from j.
AtomSet delta_w(const AtomSet& f_i, const AtomSet& gen, const AtomSet& a_j);

/// Joins Δw into the weight, or removes it (plain set difference) when
/// the concept sits strictly above the doc value; negative weights use
/// the inverse rule.
SignedWeight apply_weight_update(SignedWeight w, const AtomSet& dw,
                                 bool concept_above_doc);

/// Drives every target into its doc set by repeated Δw updates on the
/// targets' incoming edges: end_of_run corrects once per converged run,
/// per_step corrects after every iteration step. Throws LearnFailureError
/// (carrying the last result) when max_outer rounds do not suffice.
LearnResult learn(const MapModel& model, const EngineConfig& engine_cfg,
                  const LearnConfig& learn_cfg, const std::string& case_name);

}  // namespace mvcm
