#include "mvcm/scale.hpp"

#include <cctype>

namespace mvcm {

NamedScale make_scale(std::shared_ptr<const AtomLattice> lattice) {
  return NamedScale{std::move(lattice)};
}

NamedScale build_paper_lattice() {
  using NameDef = std::pair<std::string, std::vector<std::string>>;
  std::vector<NameDef> names = {
      {"0", {}},
      {"ba0", {"ba0"}},
      {"b", {"b"}},
      {"bn0", {"bn0"}},
      {"bora", {"b", "ba0"}},
      {"born", {"b", "bn0"}},
      {"Tb", {"ba0", "b", "bn0"}},
      {"0c", {"0c"}},
      {"0d", {"0d"}},
      {"0h", {"0c", "0d"}},
      {"c", {"b", "0c"}},
      {"d", {"b", "0d"}},
      {"h", {"b", "0c", "0d"}},
      {"ca0c", {"ba0", "0c"}},
      {"cn0c", {"bn0", "0c"}},
      {"da0d", {"ba0", "0d"}},
      {"dn0d", {"bn0", "0d"}},
      {"ha0h", {"ba0", "0c", "0d"}},
      {"hn0h", {"bn0", "0c", "0d"}},
      {"caorn", {"ba0", "bn0", "0c"}},
      {"hora", {"b", "ba0", "0c", "0d"}},
      {"horn", {"b", "bn0", "0c", "0d"}},
      {"Th", {"ba0", "b", "bn0", "0c", "0d"}},
  };
  return NamedScale{std::make_shared<const AtomLattice>(
      std::vector<std::string>{"ba0", "b", "bn0", "0c", "0d"}, names)};
}

AtomSet parse_element(const NamedScale& scale, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty element label");

  if (s.front() == '{') {
    if (s.back() != '}') throw ParseError("unterminated atom list: " + s);
    std::uint64_t bits = 0;
    std::string_view body(s.data() + 1, s.size() - 2);
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view atom = body.substr(0, comma);
      body = comma == std::string_view::npos ? std::string_view{}
                                             : body.substr(comma + 1);
      int idx = scale->atom_index(atom);
      if (idx < 0) throw ParseError("unknown atom: " + std::string(atom));
      bits |= std::uint64_t{1} << idx;
    }
    return scale->make(bits);
  }

  if (auto bits = scale->lookup(s)) return scale->make(*bits);
  throw ParseError("unknown element label: " + s);
}

std::string format_element(const NamedScale& scale, const AtomSet& a) {
  if (a.lattice != scale.lattice.get())
    throw std::domain_error("element belongs to a different lattice");
  if (const std::string* name = scale->name_of(a.bits)) return *name;
  std::string s = "{";
  for (std::size_t i = 0; i < scale->atom_count(); ++i)
    if (a.bits & (std::uint64_t{1} << i)) {
      if (s.size() > 1) s += ',';
      s += scale->atoms()[i];
    }
  return s + "}";
}

}  // namespace mvcm
