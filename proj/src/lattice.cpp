#include "mvcm/lattice.hpp"

#include <algorithm>

namespace mvcm {

AtomLattice::AtomLattice(
    std::vector<std::string> atoms,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& names)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("lattice needs at least one atom");
  if (atoms_.size() > kMaxAtoms)
    throw std::invalid_argument("atom roster capped at 64 atoms");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!atom_by_name_.emplace(atoms_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate atom identifier: " + atoms_[i]);
  }
  full_ = atoms_.size() == kMaxAtoms ? ~std::uint64_t{0}
                                     : (std::uint64_t{1} << atoms_.size()) - 1;

  auto add_name = [this](const std::string& label, std::uint64_t bits) {
    if (!bits_by_label_.emplace(label, bits).second)
      throw std::invalid_argument("duplicate element label: " + label);
    if (!label_by_bits_.emplace(bits, label).second)
      throw std::invalid_argument("two labels map to the same element: " + label +
                                  " and " + label_by_bits_.at(bits));
    names_.emplace_back(label, bits);
  };

  for (const auto& [label, atom_list] : names) {
    std::uint64_t bits = 0;
    for (const auto& atom : atom_list) {
      int idx = atom_index(atom);
      if (idx < 0)
        throw std::invalid_argument("element " + label + " uses unknown atom: " + atom);
      bits |= std::uint64_t{1} << idx;
    }
    add_name(label, bits);
  }
  if (!bits_by_label_.contains("0")) add_name("0", 0);
  if (bits_by_label_.at("0") != 0)
    throw std::invalid_argument("label \"0\" must name the empty element");
  if (!label_by_bits_.contains(full_)) add_name("Th", full_);
}

int AtomLattice::atom_index(std::string_view atom) const {
  auto it = atom_by_name_.find(atom);
  return it == atom_by_name_.end() ? -1 : it->second;
}

AtomSet AtomLattice::make(std::uint64_t bits) const {
  if ((bits & ~full_) != 0)
    throw std::invalid_argument("element uses atoms outside the roster");
  return {bits, this};
}

const std::string* AtomLattice::name_of(std::uint64_t bits) const {
  auto it = label_by_bits_.find(bits);
  return it == label_by_bits_.end() ? nullptr : &it->second;
}

std::optional<std::uint64_t> AtomLattice::lookup(std::string_view label) const {
  auto it = bits_by_label_.find(label);
  if (it == bits_by_label_.end()) return std::nullopt;
  return it->second;
}

AtomSet implies(const AtomSet& a, const AtomSet& b) {
  detail::require_same(a, b);
  return {(~a.bits & a.lattice->full_mask()) | b.bits, a.lattice};
}

}  // namespace mvcm
