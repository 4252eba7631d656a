#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "mvcm/lattice.hpp"

namespace mvcm {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lattice together with its linguistic-label dictionary. Immutable,
/// freely shareable; the shared_ptr keeps AtomSet owner pointers valid.
struct NamedScale {
  std::shared_ptr<const AtomLattice> lattice;

  const AtomLattice& operator*() const { return *lattice; }
  const AtomLattice* operator->() const { return lattice.get(); }
};

/// The five-atom uncertainty-degree lattice (atoms ba0, b, bn0, 0c, 0d)
/// with the full dictionary of linguistic labels: level-0 degrees b/ba0/
/// bn0 with their hesitations bora/born/Tb, the 0c-0d branch values, the
/// c, d and h levels with their and-0/neither variants, and Th on top.
NamedScale build_paper_lattice();

NamedScale make_scale(std::shared_ptr<const AtomLattice> lattice);

/// Resolves a label: a dictionary name, or an explicit atom list in
/// braces like "{ba0,bn0}" ("{}" is the bottom). Whitespace is ignored.
/// Throws ParseError naming the offending label.
AtomSet parse_element(const NamedScale& scale, std::string_view text);

/// Dictionary label when one exists, else the brace-delimited atom list.
/// Round-trips with parse_element on every element.
std::string format_element(const NamedScale& scale, const AtomSet& a);

}  // namespace mvcm
