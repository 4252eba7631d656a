#include "mvcm/table.hpp"

#include <algorithm>

namespace mvcm {

int FiniteLatticeTable::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (elements[i] == name) return i;
  return -1;
}

namespace {

void check_well_formed(const FiniteLatticeTable& t) {
  const int n = t.size();
  if (n == 0) throw std::invalid_argument("table has no elements");
  if (static_cast<int>(t.leq.size()) != n || static_cast<int>(t.monoid.size()) != n)
    throw std::invalid_argument("leq/monoid tables must be square over the elements");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(t.leq[i].size()) != n ||
        static_cast<int>(t.monoid[i].size()) != n)
      throw std::invalid_argument("leq/monoid tables must be square over the elements");
    for (int j = 0; j < n; ++j)
      if (t.monoid[i][j] < 0 || t.monoid[i][j] >= n)
        throw std::invalid_argument("monoid entry out of range");
  }
  if (t.unit < 0 || t.unit >= n) throw std::invalid_argument("unit out of range");
}

struct WitnessSink {
  ValidityReport& report;
  int cap;
  int count = 0;
  bool hit = false;

  void add(std::string law, std::initializer_list<int> idx,
           const FiniteLatticeTable& t) {
    hit = true;
    if (count >= cap) return;
    ++count;
    LawWitness w{std::move(law), {}};
    for (int i : idx) w.elements.push_back(t.elements[i]);
    report.counterexamples.push_back(std::move(w));
  }
};

}  // namespace

std::optional<int> sup_of(const FiniteLatticeTable& t, int a, int b) {
  const int n = t.size();
  std::optional<int> best;
  for (int u = 0; u < n; ++u) {
    if (!t.leq[a][u] || !t.leq[b][u]) continue;
    if (!best || t.leq[u][*best]) best = u;
  }
  if (best) {  // least among all upper bounds
    for (int u = 0; u < n; ++u)
      if (t.leq[a][u] && t.leq[b][u] && !t.leq[*best][u]) return std::nullopt;
  }
  return best;
}

std::optional<int> inf_of(const FiniteLatticeTable& t, int a, int b) {
  const int n = t.size();
  std::optional<int> best;
  for (int u = 0; u < n; ++u) {
    if (!t.leq[u][a] || !t.leq[u][b]) continue;
    if (!best || t.leq[*best][u]) best = u;
  }
  if (best) {
    for (int u = 0; u < n; ++u)
      if (t.leq[u][a] && t.leq[u][b] && !t.leq[u][*best]) return std::nullopt;
  }
  return best;
}

namespace {

// Greatest element of {y | pred(y)}, or -1 when the set is empty or has
// no maximum under the table order.
template <typename Pred>
int greatest_where(const FiniteLatticeTable& t, Pred pred) {
  const int n = t.size();
  int best = -1;
  for (int y = 0; y < n; ++y) {
    if (!pred(y)) continue;
    if (best < 0 || t.leq[best][y]) best = y;
  }
  if (best < 0) return -1;
  for (int y = 0; y < n; ++y)
    if (pred(y) && !t.leq[y][best]) return -1;
  return best;
}

}  // namespace

int brute_force_residual(const FiniteLatticeTable& t, int a, int b) {
  int r = greatest_where(t, [&](int y) { return t.leq[t.monoid[a][y]][b]; });
  if (r < 0)
    throw ResiduationError("no greatest y with " + t.elements[a] + "*y <= " +
                           t.elements[b]);
  return r;
}

int brute_force_left_residual(const FiniteLatticeTable& t, int a, int b) {
  int r = greatest_where(t, [&](int x) { return t.leq[t.monoid[x][a]][b]; });
  if (r < 0)
    throw ResiduationError("no greatest x with x*" + t.elements[a] + " <= " +
                           t.elements[b]);
  return r;
}

ValidityReport validate(const FiniteLatticeTable& t, int witness_cap) {
  check_well_formed(t);
  const int n = t.size();
  ValidityReport report;

  // Partial order axioms + existence of all pairwise bounds.
  {
    WitnessSink sink{report, witness_cap};
    for (int a = 0; a < n; ++a)
      if (!t.leq[a][a]) sink.add("reflexivity", {a}, t);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a != b && t.leq[a][b] && t.leq[b][a]) sink.add("antisymmetry", {a, b}, t);
        for (int c = 0; c < n; ++c)
          if (t.leq[a][b] && t.leq[b][c] && !t.leq[a][c])
            sink.add("transitivity", {a, b, c}, t);
      }
    if (!sink.hit) {
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          if (!sup_of(t, a, b)) sink.add("join existence", {a, b}, t);
          if (!inf_of(t, a, b)) sink.add("meet existence", {a, b}, t);
        }
    }
    report.is_lattice = !sink.hit;
  }

  if (report.is_lattice) {
    WitnessSink sink{report, witness_cap};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          int bc = *sup_of(t, b, c);
          if (*inf_of(t, a, bc) != *sup_of(t, *inf_of(t, a, b), *inf_of(t, a, c)))
            sink.add("distributivity of meet over join", {a, b, c}, t);
          int bc2 = *inf_of(t, b, c);
          if (*sup_of(t, a, bc2) != *inf_of(t, *sup_of(t, a, b), *sup_of(t, a, c)))
            sink.add("distributivity of join over meet", {a, b, c}, t);
        }
    report.is_distributive = !sink.hit;
  }

  if (report.is_lattice) {
    WitnessSink sink{report, witness_cap};
    int bottom = 0;
    for (int a = 0; a < n; ++a)
      if (t.leq[a][bottom]) bottom = a;
    // Atoms: minimal nonzero elements.
    std::vector<int> atoms;
    for (int a = 0; a < n; ++a) {
      if (a == bottom) continue;
      bool minimal = true;
      for (int b = 0; b < n; ++b)
        if (b != a && b != bottom && t.leq[b][a]) minimal = false;
      if (minimal) atoms.push_back(a);
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        if (*inf_of(t, atoms[i], atoms[j]) != bottom)
          sink.add("atomicity: atoms with non-null meet", {atoms[i], atoms[j]}, t);
    // Every element is the join of the atoms below it.
    for (int a = 0; a < n; ++a) {
      int acc = bottom;
      for (int at : atoms)
        if (t.leq[at][a]) acc = *sup_of(t, acc, at);
      if (acc != a) sink.add("atomicity: element is not a join of atoms", {a}, t);
    }
    report.is_atomic = !sink.hit;
  }

  // Monoid laws, residual existence, adjunction.
  {
    WitnessSink sink{report, witness_cap};
    for (int a = 0; a < n; ++a) {
      if (t.monoid[t.unit][a] != a || t.monoid[a][t.unit] != a)
        sink.add("monoid unit", {a}, t);
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t.monoid[t.monoid[a][b]][c] != t.monoid[a][t.monoid[b][c]])
            sink.add("monoid associativity", {a, b, c}, t);
    }
    std::vector<std::vector<int>> right(n, std::vector<int>(n, -1));
    std::vector<std::vector<int>> left(n, std::vector<int>(n, -1));
    if (report.is_lattice && !sink.hit) {
      for (int a = 0; a < n && !sink.hit; ++a)
        for (int b = 0; b < n && !sink.hit; ++b) {
          right[a][b] = greatest_where(t, [&](int y) { return t.leq[t.monoid[a][y]][b]; });
          left[a][b] = greatest_where(t, [&](int x) { return t.leq[t.monoid[x][a]][b]; });
          if (right[a][b] < 0) sink.add("right residual existence", {a, b}, t);
          if (left[a][b] < 0) sink.add("left residual existence", {a, b}, t);
        }
    }
    if (report.is_lattice && !sink.hit) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) {
            bool prod = t.leq[t.monoid[x][y]][z];
            if (prod != t.leq[y][right[x][z]] || prod != t.leq[x][left[y][z]])
              sink.add("adjunction", {x, y, z}, t);
          }
    }
    report.is_residuated = report.is_lattice && !sink.hit;

    if (report.is_residuated) {
      WitnessSink closed{report, witness_cap};
      for (int a = 0; a < n; ++a)
        if (right[a][a] != t.unit || left[a][a] != t.unit)
          closed.add("integral closure: a -> a != unit", {a}, t);
      report.is_integrally_closed = !closed.hit;
    }
  }

  {
    WitnessSink sink{report, witness_cap};
    for (int a = 0; a < n; ++a)
      if (!t.leq[a][t.unit]) sink.add("integrality: a above the unit", {a}, t);
    report.is_integral = !sink.hit;
  }

  // Flags skipped because a prerequisite failed still need a witness.
  if (!report.is_lattice) {
    for (const char* law : {"distributivity", "atomicity", "residuation"})
      report.counterexamples.push_back(
          {std::string(law) + ": not evaluated, order is not a lattice", {}});
  }
  if (!report.is_residuated && report.counterexamples.empty())
    report.counterexamples.push_back({"residuation", {}});
  if (!report.is_integrally_closed && !report.is_residuated)
    report.counterexamples.push_back(
        {"integral closure: not evaluated, table is not residuated", {}});

  return report;
}

FiniteLatticeTable powerset_table(const AtomLattice& lattice) {
  if (lattice.atom_count() > 16)
    throw std::invalid_argument("powerset table limited to 16 atoms");
  const std::uint64_t n = std::uint64_t{1} << lattice.atom_count();
  FiniteLatticeTable t;
  t.elements.reserve(n);
  for (std::uint64_t e = 0; e < n; ++e) {
    if (const std::string* name = lattice.name_of(e)) {
      t.elements.push_back(*name);
    } else {
      std::string s = "{";
      for (std::size_t i = 0; i < lattice.atom_count(); ++i)
        if (e & (std::uint64_t{1} << i)) {
          if (s.size() > 1) s += ',';
          s += lattice.atoms()[i];
        }
      t.elements.push_back(s + "}");
    }
  }
  t.leq.assign(n, std::vector<bool>(n));
  t.monoid.assign(n, std::vector<int>(n));
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      t.leq[a][b] = (a & ~b) == 0;
      t.monoid[a][b] = static_cast<int>(a & b);
    }
  t.unit = static_cast<int>(n - 1);
  return t;
}

}  // namespace mvcm
