#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "doctest.h"
#include "lvk/error.hpp"
#include "lvk/invariants.hpp"
#include "lvk/monoid.hpp"
#include "lvk/moves.hpp"
#include "oracles.hpp"

using namespace lvk;

namespace {

using Table = std::vector<std::uint8_t>;

// Relabels both tables by the permutation p and returns them concatenated,
// for comparing structures up to isomorphism.
Table relabel(const FiniteBiquandle& x, const std::vector<std::size_t>& p) {
  const std::size_t m = x.order();
  Table t(2 * m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      t[p[a] * m + p[b]] = static_cast<std::uint8_t>(p[x.up(a, b)]);
      t[m * m + p[a] * m + p[b]] = static_cast<std::uint8_t>(p[x.down(a, b)]);
    }
  return t;
}

Table iso_class(const FiniteBiquandle& x) {
  std::vector<std::size_t> p(x.order());
  std::iota(p.begin(), p.end(), 0);
  Table best;
  do {
    Table t = relabel(x, p);
    if (best.empty() || t < best) best = std::move(t);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

void check_matrix(const GaussDiagram& d, const FiniteBiquandle& x) {
  CAPTURE(serialize(d));
  CAPTURE(x.name());
  const auto expect = oracle::coloring_matrix(d, x);
  CHECK(oracle::to_rows(coloring_matrix(d, x)) == expect);
  CHECK(oracle::to_rows(coloring_matrix_sweep(d, x)) == expect);
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("dihedral and trivial structures") {
  for (std::size_t m : {3, 4, 5, 7}) {
    const FiniteBiquandle d = FiniteBiquandle::dihedral(m);
    CHECK(d.valid());
    CHECK(d.kind() == StructureKind::Quandle);
    CHECK(d.name() == "dihedral:" + std::to_string(m));
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t o = 0; o < m; ++o) {
        CHECK(d.up(u, o) == (2 * o + m - u) % m);
        CHECK(d.down(o, u) == o);
      }
    CHECK(d.affine().has_value() == (m != 4));
  }
  CHECK(FiniteBiquandle::trivial(4).valid());
}

TEST_CASE("axiom violations are named") {
  auto axioms_of = [](const FiniteBiquandle& x) {
    std::set<std::string> names;
    for (const auto& v : check_axioms(x)) names.insert(v.axiom);
    return names;
  };
  // up(u, o) = u + 1: invertible everywhere but every kink changes colour.
  const FiniteBiquandle shift(3, StructureKind::Quandle, {1, 1, 1, 2, 2, 2, 0, 0, 0});
  CHECK_FALSE(shift.valid());
  CHECK(axioms_of(shift).count("kink_over_first_positive") == 1);
  // up(u, o) = o is not invertible in u.
  const FiniteBiquandle constant(3, StructureKind::Quandle, {0, 1, 2, 0, 1, 2, 0, 1, 2});
  CHECK(axioms_of(constant).count("under_invertible") == 1);
  // A quandle must leave the over strand alone.
  const FiniteBiquandle fake(2, StructureKind::Quandle, {0, 1, 1, 0}, {1, 0, 0, 1});
  CHECK(axioms_of(fake).count("quandle_over_identity") == 1);
  const FiniteBiquandle out_of_range(2, StructureKind::Biquandle, {0, 5, 1, 0}, {0, 0, 1, 1});
  CHECK(axioms_of(out_of_range).count("table_range") == 1);
  const FiniteBiquandle wrong_shape(2, StructureKind::Biquandle, {0, 1, 1}, {0, 0, 1, 1});
  CHECK(axioms_of(wrong_shape).count("table_shape") == 1);
  // dihedral:4 with the over action broken.
  Table up = FiniteBiquandle::dihedral(4).up_table();
  std::swap(up[0], up[1]);
  CHECK_FALSE(FiniteBiquandle(4, StructureKind::Quandle, up).valid());
  CHECK_THROWS_AS(coloring_matrix(GaussDiagram{}, shift), Error);
}

TEST_CASE("enumerated structures are valid and pairwise non-isomorphic") {
  for (std::size_t m : {2, 3, 4}) {
    const auto& all = enumerate_biquandles(m);
    std::set<Table> classes;
    std::size_t quandles = 0;
    for (const auto& x : all) {
      CHECK(x.valid());
      CHECK(x.order() == m);
      classes.insert(iso_class(x));
      bool down_identity = true;
      for (std::size_t o = 0; o < m; ++o)
        for (std::size_t u = 0; u < m; ++u) down_identity = down_identity && x.down(o, u) == o;
      CHECK(down_identity == (x.kind() == StructureKind::Quandle));
      quandles += down_identity;
    }
    CHECK(classes.size() == all.size());
    // Quandles of order 2, 3, 4 up to isomorphism: 1, 3, 7.
    CHECK(quandles == (m == 2 ? 1u : m == 3 ? 3u : 7u));
  }
  CHECK(enumerate_biquandles(2).front().name() == "biquandle:2#0");
}

TEST_CASE("enumeration is complete at order 3") {
  // Exhaust all tables whose columns are permutations (a consequence of the
  // axioms) and count isomorphism classes of valid structures.
  const std::size_t m = 3;
  std::vector<Table> perms;
  Table p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto build = [&](std::size_t code) {
    Table t(m * m);
    for (std::size_t col = 0; col < m; ++col, code /= perms.size())
      for (std::size_t row = 0; row < m; ++row) t[row * m + col] = perms[code % perms.size()][row];
    return t;
  };
  std::set<Table> classes;
  const std::size_t tables = perms.size() * perms.size() * perms.size();
  for (std::size_t a = 0; a < tables; ++a)
    for (std::size_t b = 0; b < tables; ++b) {
      const FiniteBiquandle x(m, StructureKind::Biquandle, build(a), build(b));
      if (x.valid()) classes.insert(iso_class(x));
    }
  CHECK(classes.size() == enumerate_biquandles(m).size());
}

TEST_CASE("fast paths agree with exhaustive colouring") {
  auto g = oracle::rng(41);
  std::vector<FiniteBiquandle> structures = structure_catalog(3);
  structures.push_back(FiniteBiquandle::dihedral(3));
  structures.push_back(FiniteBiquandle::dihedral(5));
  structures.push_back(FiniteBiquandle::dihedral(4));
  for (std::size_t k = 0; k < enumerate_biquandles(4).size(); k += 7) structures.push_back(enumerate_biquandles(4)[k]);
  for (const auto& x : structures) {
    const std::size_t max_n = x.order() <= 3 ? 4 : 3;
    for (int i = 0; i < 12; ++i) check_matrix(oracle::random_diagram(g, g() % (max_n + 1)), x);
  }
}

TEST_CASE("coloring matrices are invariant under every single move") {
  auto g = oracle::rng(42);
  std::vector<FiniteBiquandle> structures = structure_catalog(4);
  structures.push_back(FiniteBiquandle::dihedral(3));
  structures.push_back(FiniteBiquandle::dihedral(5));
  // (diagram, crossing cap) pairs. Random diagrams get every move with up to
  // two extra crossings.
  std::vector<std::pair<GaussDiagram, std::size_t>> bases;
  for (const char* c : {"0", "O1+ O2+ U1+ U2+", "O1+ U2- U1+ O2-"}) bases.emplace_back(parse_gauss_code(c), 0);
  for (int i = 0; i < 4; ++i) bases.emplace_back(oracle::random_diagram(g, 2 + g() % 2), 0);
  for (auto& [d, cap] : bases) cap = d.crossings() + 2;
  // One diagram per R3 table entry so that each entry is exercised, with
  // the cap at its own size.
  const MoveRules& rules = MoveRules::standard();
  std::set<std::size_t> entries;
  for (int tries = 0; tries < 20000 && entries.size() < rules.r3_entries().size(); ++tries) {
    const GaussDiagram d = canonicalize(oracle::random_diagram(g, 3));
    for (const auto& r : enumerate_moves(d, 3))
      if (const auto* m = std::get_if<R3Move>(&r.event))
        if (entries.insert(*rules.r3_match(*r3_pattern_at(d, m->pairs))).second) bases.emplace_back(d, 3);
  }
  CHECK(entries.size() == rules.r3_entries().size());
  std::size_t checked = 0;
  for (const auto& [d, cap] : bases) {
    const auto moves = enumerate_moves(d, cap);
    for (const auto& x : structures) {
      const ColoringMatrix before = coloring_matrix(d, x);
      for (const auto& r : moves) {
        if (!(coloring_matrix(r.result, x) == before)) {
          FAIL_CHECK(x.name() << " changes under " << describe(r.event) << " on " << serialize(d));
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("odd writhe") {
  CHECK(odd_writhe(parse_gauss_code("O1+ O2+ U1+ U2+")) == 2);
  CHECK(odd_writhe(parse_gauss_code("O1- O2- U1- U2-")) == -2);
  CHECK(odd_writhe(parse_gauss_code("O1+ U2- U1+ O2-")) == 0);
  CHECK(odd_writhe(GaussDiagram{}) == 0);
  auto g = oracle::rng(43);
  for (int i = 0; i < 500; ++i) {
    const GaussDiagram d = oracle::random_diagram(g, g() % 10);
    CHECK(odd_writhe(d) == oracle::odd_writhe(d));
  }
  for (int i = 0; i < 100; ++i) CHECK(odd_writhe(oracle::random_realizable(g, 10)) == 0);
}

TEST_CASE("odd writhe is invariant under moves") {
  auto g = oracle::rng(44);
  for (int i = 0; i < 40; ++i) {
    const GaussDiagram d = oracle::random_diagram(g, g() % 5);
    const int j = odd_writhe(d);
    for (const auto& r : enumerate_moves(d, d.crossings() + 2)) CHECK(odd_writhe(r.result) == j);
  }
}

TEST_CASE("commutator witness between two mixed-sign variants") {
  const GaussDiagram a = parse_gauss_code("O1+ U2- U1+ O2-");
  const GaussDiagram b = parse_gauss_code("U1+ O2- O1+ U2-");
  const FiniteBiquandle x = parse_structure_spec("biquandle:4#52");
  const auto w = commutator_witness(a, b, x);
  REQUIRE(w.has_value());
  CHECK(*w == CommutatorWitness{0, 1, 4, 0});
  const ColoringMatrix ab = coloring_matrix(a, x) * coloring_matrix(b, x);
  const ColoringMatrix ba = coloring_matrix(b, x) * coloring_matrix(a, x);
  CHECK(ab.at(w->a, w->b) == w->lhs);
  CHECK(ba.at(w->a, w->b) == w->rhs);
  CHECK(w->lhs != w->rhs);
  // The same numbers from exhaustive colouring of both concatenations.
  const auto oab = oracle::coloring_matrix(concat(a, b), x);
  const auto oba = oracle::coloring_matrix(concat(b, a), x);
  CHECK(oab[w->a][w->b] == w->lhs);
  CHECK(oba[w->a][w->b] == w->rhs);
  CHECK_FALSE(commutator_witness(a, a, x).has_value());
  CHECK_FALSE(commutator_witness(a, b, FiniteBiquandle::dihedral(3)).has_value());
}

TEST_CASE("structure text format") {
  for (const auto& x : structure_catalog(3)) {
    const FiniteBiquandle back = parse_structure_text(format_structure_text(x));
    CHECK(back == x);
    CHECK(back.kind() == x.kind());
  }
  const FiniteBiquandle d3 = parse_structure_text("3 quandle\n0 2 1\n2 1 0\n1 0 2\n");
  CHECK(d3 == FiniteBiquandle::dihedral(3));
  for (const char* bad : {"", "3", "3 group\n", "2 quandle\n0 1\n1", "2 quandle\n0 1 1 7\n", "2 quandle\n0 1 1 0 9\n",
                          "2 biquandle\n0 1 1 0\n"}) {
    try {
      parse_structure_text(bad);
      FAIL("expected InvalidStructure for '" << bad << "'");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidStructure);
    }
  }
}

TEST_CASE("structure specs") {
  CHECK(parse_structure_spec("dihedral:3") == FiniteBiquandle::dihedral(3));
  CHECK(parse_structure_spec("trivial:2") == FiniteBiquandle::trivial(2));
  CHECK(parse_structure_spec("biquandle:3#4") == enumerate_biquandles(3)[4]);
  for (const char* bad : {"dihedral:", "dihedral:x", "dihedral:0", "cyclic:3", "biquandle:3", "biquandle:3#99",
                          "biquandle:9#0", "dihedral:999999999"}) {
    CHECK_THROWS_AS(parse_structure_spec(bad), Error);
  }
  const auto path = std::filesystem::temp_directory_path() / "lvk_structure.txt";
  {
    std::ofstream out(path);
    out << format_structure_text(enumerate_biquandles(3)[7]);
  }
  CHECK(parse_structure_spec("file:" + path.string()) == enumerate_biquandles(3)[7]);
  {
    std::ofstream out(path);
    out << "3 quandle\n1 1 1\n2 2 2\n0 0 0\n";
  }
  try {
    parse_structure_spec("file:" + path.string());
    FAIL("expected InvalidStructure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidStructure);
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS(parse_structure_spec("file:/nonexistent/structure.txt"), Error);
}

TEST_CASE("default catalog") {
  const auto& cat = default_catalog();
  REQUIRE(cat.size() >= 2);
  CHECK(cat[0].name() == "dihedral:3");
  CHECK(cat[1].name() == "dihedral:5");
  CHECK(cat.size() == 2 + enumerate_biquandles(2).size() + enumerate_biquandles(3).size());
}

}  // TEST_SUITE
