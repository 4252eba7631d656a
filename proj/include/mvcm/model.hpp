#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mvcm/scale.hpp"

namespace mvcm {

/// A non-zero weight, optionally marked negative. Negative entries are
/// deducted from the update join instead of contributing to it.
struct SignedWeight {
  AtomSet value;
  bool negative = false;

  friend bool operator==(const SignedWeight&, const SignedWeight&) = default;
};

/// (source, destination) concept indices; entry (j, i) carries w_ji, the
/// influence of concept j on concept i.
using WeightKey = std::pair<int, int>;
using WeightMatrix = std::map<WeightKey, SignedWeight>;

/// A cognitive map: concepts, clamp flags, signed weights, named initial
/// value cases and desired-output sets for learning targets.
struct MapModel {
  NamedScale scale;
  std::vector<std::string> concepts;
  std::vector<bool> clamped;
  WeightMatrix weights;
  std::map<std::string, std::vector<AtomSet>> init_cases;
  std::map<int, std::vector<AtomSet>> docs;

  int concept_index(std::string_view name) const {
    for (std::size_t i = 0; i < concepts.size(); ++i)
      if (concepts[i] == name) return static_cast<int>(i);
    return -1;
  }
  int concept_count() const { return static_cast<int>(concepts.size()); }
};

enum class NegMode { symmetric, strict };

/// Iteration parameters. f0 is the adjusting coefficient applied at the
/// first step, before the residual recursion takes over; c_coeff is the
/// constant c multiplier (the convergence theorem admits the top). Both
/// default to the lattice top when left unset (null lattice).
struct EngineConfig {
  AtomSet f0;
  AtomSet c_coeff;
  int max_iters = 100;
  NegMode neg_mode = NegMode::symmetric;
};

/// Full record of one synchronous run. states[k][i] is A_i^k; coeffs[k]
/// is the f vector applied when computing states[k+1]; r_diag mirrors
/// coeffs when the diagnostic is enabled.
struct IterationTrace {
  std::vector<std::vector<AtomSet>> states;
  std::vector<std::vector<AtomSet>> coeffs;
  std::vector<std::vector<AtomSet>> r_diag;
  bool converged = false;
  int steps = 0;
};

}  // namespace mvcm
