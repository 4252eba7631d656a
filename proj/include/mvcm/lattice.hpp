#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mvcm {

class AtomLattice;

/// A lattice element, represented by its set of atoms (generators).
/// The empty set is the bottom "0"; the full roster is the top.
/// Immutable value type; equality is equality of member sets.
struct AtomSet {
  std::uint64_t bits = 0;
  const AtomLattice* lattice = nullptr;

  friend bool operator==(const AtomSet&, const AtomSet&) = default;
};

/// A finite atomic distributive lattice: elements range over the full
/// powerset of an atom roster (at most 64 atoms, so an element fits one
/// machine word), with a dictionary of named elements. "0" always names
/// the bottom and some label names the top.
///
/// Immutable after construction. Heap-allocate (see NamedScale); AtomSet
/// identifies its owner by address.
class AtomLattice {
 public:
  static constexpr std::size_t kMaxAtoms = 64;

  /// `names` maps labels to atom lists. "0" -> {} and a top label are
  /// added automatically when absent. Throws std::invalid_argument on
  /// duplicate atoms, unknown atoms in a name, duplicate labels, or two
  /// labels for the same element.
  AtomLattice(std::vector<std::string> atoms,
              const std::vector<std::pair<std::string, std::vector<std::string>>>& names);

  AtomLattice(const AtomLattice&) = delete;
  AtomLattice& operator=(const AtomLattice&) = delete;

  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  int atom_index(std::string_view atom) const;  // -1 if unknown
  std::uint64_t full_mask() const { return full_; }

  AtomSet bottom() const { return {0, this}; }
  AtomSet top() const { return {full_, this}; }
  AtomSet make(std::uint64_t bits) const;

  /// Named elements in insertion order.
  const std::vector<std::pair<std::string, std::uint64_t>>& names() const { return names_; }
  const std::string* name_of(std::uint64_t bits) const;
  std::optional<std::uint64_t> lookup(std::string_view label) const;

 private:
  std::vector<std::string> atoms_;
  std::map<std::string, int, std::less<>> atom_by_name_;
  std::vector<std::pair<std::string, std::uint64_t>> names_;
  std::map<std::string, std::uint64_t, std::less<>> bits_by_label_;
  std::map<std::uint64_t, std::string> label_by_bits_;
  std::uint64_t full_ = 0;
};

namespace detail {
inline void require_same(const AtomSet& a, const AtomSet& b) {
  if (a.lattice == nullptr || a.lattice != b.lattice)
    throw std::domain_error("operands belong to different lattices");
}
}  // namespace detail

/// Least upper bound: set union of generators.
inline AtomSet join(const AtomSet& a, const AtomSet& b) {
  detail::require_same(a, b);
  return {a.bits | b.bits, a.lattice};
}

/// Greatest lower bound: set intersection of generators. Doubles as the
/// monoid multiplication throughout (Heyting case).
inline AtomSet meet(const AtomSet& a, const AtomSet& b) {
  detail::require_same(a, b);
  return {a.bits & b.bits, a.lattice};
}

/// Heyting implication: the largest c with a ∧ c ≤ b. On the powerset
/// this is complement(a) ∪ b, and both residuals of the meet monoid
/// coincide with it.
AtomSet implies(const AtomSet& a, const AtomSet& b);

/// Symmetric difference (a ∪ b) ⊖ (a ∩ b): the "minus" used for the
/// convergence measure and for negative-weight deduction.
inline AtomSet sym_diff(const AtomSet& a, const AtomSet& b) {
  detail::require_same(a, b);
  return {a.bits ^ b.bits, a.lattice};
}

/// Plain set difference: members of a not in b.
inline AtomSet set_minus(const AtomSet& a, const AtomSet& b) {
  detail::require_same(a, b);
  return {a.bits & ~b.bits, a.lattice};
}

/// Order by generator inclusion.
inline bool leq(const AtomSet& a, const AtomSet& b) {
  detail::require_same(a, b);
  return (a.bits & ~b.bits) == 0;
}

inline int generator_count(const AtomSet& a) { return std::popcount(a.bits); }

}  // namespace mvcm
