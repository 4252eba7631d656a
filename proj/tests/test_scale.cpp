#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mvcm/scale.hpp"

using namespace mvcm;

TEST_CASE("dictionary covers the documented labels") {
  NamedScale s = build_paper_lattice();
  CHECK(s->atom_count() == 5);
  CHECK(s->names().size() == 23);
  for (const char* label :
       {"0", "ba0", "b", "bn0", "bora", "born", "Tb", "0c", "0d", "0h", "c",
        "d", "h", "ca0c", "cn0c", "da0d", "dn0d", "ha0h", "hn0h", "caorn",
        "hora", "horn", "Th"})
    CHECK_MESSAGE(s->lookup(label).has_value(), label);
}

TEST_CASE("label decompositions behave under join and meet") {
  NamedScale s = build_paper_lattice();
  auto el = [&](const char* l) { return parse_element(s, l); };
  // h = b ∨ 0h, c = b ∨ 0c, d = b ∨ 0d, 0h = 0c ∨ 0d
  CHECK(el("h") == join(el("b"), el("0h")));
  CHECK(el("c") == join(el("b"), el("0c")));
  CHECK(el("d") == join(el("b"), el("0d")));
  CHECK(el("0h") == join(el("0c"), el("0d")));
  CHECK(el("Tb") == join(el("bora"), el("bn0")));
  CHECK(el("horn") == join(el("h"), el("bn0")));
  CHECK(el("hora") == join(el("h"), el("ba0")));
  CHECK(el("caorn") == join(el("ca0c"), el("bn0")));
  CHECK(meet(el("c"), el("d")) == el("b"));
  CHECK(meet(el("hora"), el("horn")) == el("h"));
  CHECK(meet(el("0c"), el("0d")) == s->bottom());
  CHECK(join(el("Tb"), el("0h")) == s->top());
}

TEST_CASE("parse_element resolves names, braces and whitespace") {
  NamedScale s = build_paper_lattice();
  CHECK(parse_element(s, "born") == s->make(0b00110));
  CHECK(parse_element(s, " born ") == parse_element(s, "born"));
  CHECK(parse_element(s, "{b,bn0}") == parse_element(s, "born"));
  CHECK(parse_element(s, "{ b , bn0 }") == parse_element(s, "born"));
  CHECK(parse_element(s, "{}") == s->bottom());
  CHECK(parse_element(s, "{ba0,b,bn0,0c,0d}") == s->top());
}

TEST_CASE("parse_element rejects garbage with the offending text") {
  NamedScale s = build_paper_lattice();
  CHECK_THROWS_WITH_AS(parse_element(s, "nope"), "unknown element label: nope",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_element(s, "{b,zz}"), "unknown atom: zz", ParseError);
  CHECK_THROWS_AS(parse_element(s, "{b"), ParseError);
  CHECK_THROWS_AS(parse_element(s, ""), ParseError);
  CHECK_THROWS_AS(parse_element(s, "   "), ParseError);
}

TEST_CASE("format_element round-trips every lattice element") {
  NamedScale s = build_paper_lattice();
  int named = 0;
  for (std::uint64_t m = 0; m < 32; ++m) {
    AtomSet a = s->make(m);
    std::string text = format_element(s, a);
    CHECK(parse_element(s, text) == a);
    if (text.front() != '{') ++named;
  }
  CHECK(named == 23);  // 23 of the 32 elements carry dictionary names
}

TEST_CASE("format_element prefers the dictionary label") {
  NamedScale s = build_paper_lattice();
  CHECK(format_element(s, parse_element(s, "{b,0c,0d}")) == "h");
  CHECK(format_element(s, s->bottom()) == "0");
  CHECK(format_element(s, s->top()) == "Th");
  // one of the 9 unnamed elements
  CHECK(format_element(s, s->make(0b00101)) == "{ba0,bn0}");
}

TEST_CASE("format_element refuses foreign elements") {
  NamedScale a = build_paper_lattice();
  NamedScale b = build_paper_lattice();
  CHECK_THROWS_AS(format_element(a, b->top()), std::domain_error);
}
