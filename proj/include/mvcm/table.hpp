#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvcm/lattice.hpp"

namespace mvcm {

/// Explicit order and monoid tables for a finite lattice. Serves as the
/// brute-force oracle against the closed-form generator-set algebra and
/// as the input to axiom validation.
struct FiniteLatticeTable {
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> leq;    // leq[a][b] : a <= b
  std::vector<std::vector<int>> monoid;  // monoid[a][b] : a * b
  int unit = 0;

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(std::string_view name) const;  // -1 if unknown
};

struct LawWitness {
  std::string law;
  std::vector<std::string> elements;
};

struct ValidityReport {
  bool is_lattice = false;
  bool is_distributive = false;
  bool is_atomic = false;
  bool is_residuated = false;
  bool is_integrally_closed = false;
  bool is_integral = false;
  std::vector<LawWitness> counterexamples;

  bool all_ok() const {
    return is_lattice && is_distributive && is_atomic && is_residuated &&
           is_integrally_closed && is_integral;
  }
};

/// Checks the table by exhaustion: partial-order axioms and existence of
/// all pairwise sups/infs (is_lattice), distributivity, atomicity,
/// residuation with the adjunction, integral closure (a -> a = unit) and
/// integrality (a <= unit). Every false flag comes with witnesses, up to
/// `witness_cap` per law. Throws std::invalid_argument on a malformed
/// table (ragged rows, out-of-range monoid entries or unit).
ValidityReport validate(const FiniteLatticeTable& table, int witness_cap = 10);

/// Greatest y with a * y <= b, found by exhaustive scan. The independent
/// oracle for implies(). Throws ResiduationError when the solution set
/// has no greatest element.
int brute_force_residual(const FiniteLatticeTable& table, int a, int b);

/// Greatest x with x * a <= b (the other residual).
int brute_force_left_residual(const FiniteLatticeTable& table, int a, int b);

class ResiduationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least upper / greatest lower bound of a pair under the table order,
/// or nullopt when none exists.
std::optional<int> sup_of(const FiniteLatticeTable& table, int a, int b);
std::optional<int> inf_of(const FiniteLatticeTable& table, int a, int b);

/// Expands an AtomLattice into its full powerset table with the meet as
/// the monoid multiplication and the top as unit.
FiniteLatticeTable powerset_table(const AtomLattice& lattice);

}  // namespace mvcm
