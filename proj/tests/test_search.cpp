#include <algorithm>

#include "doctest.h"
#include "lvk/error.hpp"
#include "lvk/report.hpp"
#include "lvk/search.hpp"
#include "lvk/surface.hpp"
#include "oracles.hpp"

using namespace lvk;

namespace {

using Outcome = Verdict::Outcome;

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("wall_ms");
  return j;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("budgets") {
  const GaussDiagram t3 = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const Budget b = default_budget(t3);
  CHECK(b.max_crossings == 5);
  CHECK(b.max_states == kDefaultMaxStates);
  CHECK(b.max_depth == kDefaultMaxDepth);
  CHECK(default_budget(t3, GaussDiagram{}).max_crossings == 5);
  CHECK_NOTHROW(validate(b));
  for (Budget bad : {Budget{0, 1, 1}, Budget{1, 0, 1}, Budget{1, 1, 0}}) {
    try {
      validate(bad);
      FAIL("expected InvalidBudget");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidBudget);
    }
    CHECK_THROWS_AS(equivalent_within(t3, t3, bad), Error);
  }
}

TEST_CASE("fingerprints are fixed width and follow the canonical form") {
  const std::string f = fingerprint(parse_gauss_code("O7+ U7+"));
  CHECK(f.size() == 16);
  CHECK(f == fingerprint(parse_gauss_code("O1+ U1+")));
  CHECK(f != fingerprint(parse_gauss_code("O1- U1-")));
  // FNV-1a-64 of the empty string.
  CHECK(fingerprint(GaussDiagram{}) == "cbf29ce484222325");
}

TEST_CASE("kinks are equivalent to the trivial knot") {
  const GaussDiagram t;
  for (const char* code : {"O1+ U1+", "U1+ O1+", "O1- U1-", "U1- O1-", "O1+ O2- U2- U1+"}) {
    const GaussDiagram d = parse_gauss_code(code);
    const Verdict v = equivalent_within(d, t, default_budget(d, t));
    CAPTURE(code);
    REQUIRE(v.outcome == Outcome::Equivalent);
    CHECK(replay(d, v.path) == t);
    CHECK(v.stats.stop_reason == "met");
  }
  const Verdict same = equivalent_within(t, t, default_budget(t));
  CHECK(same.outcome == Outcome::Equivalent);
  CHECK(same.path.empty());
}

TEST_CASE("paths found from random walks replay") {
  auto g = oracle::rng(51);
  for (int i = 0; i < 25; ++i) {
    const GaussDiagram base = canonicalize(oracle::random_diagram(g, g() % 3));
    const GaussDiagram moved = oracle::random_walk(g, base, 1 + g() % 4, base.crossings() + 2);
    const Verdict v = equivalent_within(base, moved, Budget{base.crossings() + 2, 200000, 8});
    CAPTURE(serialize(base));
    CAPTURE(serialize(moved));
    REQUIRE(v.outcome == Outcome::Equivalent);
    CHECK(replay(base, v.path) == canonicalize(moved));
    CHECK(v.path.size() <= 4);
  }
}

TEST_CASE("replay rejects a broken path") {
  const GaussDiagram kink = parse_gauss_code("O1+ U1+");
  const Verdict v = equivalent_within(kink, GaussDiagram{}, default_budget(kink));
  REQUIRE_FALSE(v.path.empty());
  try {
    replay(parse_gauss_code("O1+ O2+ U1+ U2+"), v.path);
    FAIL("expected IllegalMove");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalMove);
  }
}

TEST_CASE("distinct verdicts come from invariants") {
  const GaussDiagram v2 = parse_gauss_code("O1+ O2+ U1+ U2+");
  const Verdict odd = equivalent_within(v2, GaussDiagram{}, default_budget(v2));
  REQUIRE(odd.outcome == Outcome::Distinct);
  REQUIRE(odd.witness.has_value());
  CHECK(odd.witness->invariant == "odd_writhe");
  CHECK(odd.witness->left == 2);
  CHECK(odd.witness->right == 0);

  const GaussDiagram t3 = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const Verdict col = equivalent_within(t3, GaussDiagram{}, default_budget(t3));
  REQUIRE(col.outcome == Outcome::Distinct);
  CHECK(col.witness->invariant == "coloring_matrix");
  CHECK(col.witness->structure == "dihedral:3");
  CHECK(col.witness->left == 3);
  CHECK(col.witness->right == 1);
  CHECK(col.stats.stop_reason == "invariant");
}

TEST_CASE("an exhausted or clipped search is inconclusive") {
  const GaussDiagram t3 = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const GaussDiagram m3 = parse_gauss_code("U1- O2- U3- O1- U2- O3-");
  const Verdict v = equivalent_within(t3, m3, Budget{4, 1000, 3}, {});
  CHECK(v.outcome == Outcome::Inconclusive);
  CHECK(v.stats.states_visited <= 1000 + 64);
  CHECK(v.budget == Budget{4, 1000, 3});
}

TEST_CASE("reports are deterministic apart from timing") {
  const GaussDiagram a = parse_gauss_code("O1+ O2- U1+ U2-");
  const GaussDiagram b = parse_gauss_code("O1+ O2+ U2+ U1+");
  const auto first = without_timing(report::verdict_json(equivalent_within(a, b, default_budget(a, b))));
  for (int i = 0; i < 3; ++i) {
    CHECK(without_timing(report::verdict_json(equivalent_within(a, b, default_budget(a, b)))).dump() == first.dump());
  }
}

TEST_CASE("prime scan on small diagrams") {
  const GaussDiagram v2 = parse_gauss_code("O1+ O2+ U1+ U2+");
  const PrimeScanReport r = prime_scan(v2, Budget{4, 5000, 4});
  CHECK(r.decompositions.empty());
  CHECK(r.stats.states_visited > 0);

  // A connected sum of two virtual trefoils is found as such at once.
  const GaussDiagram sum = concat(v2, v2);
  const PrimeScanReport s = prime_scan(sum, Budget{4, 2000, 2});
  REQUIRE_FALSE(s.decompositions.empty());
  const Decomposition& d = s.decompositions.front();
  CHECK(concat(d.left, d.right) == d.representative);
  CHECK(d.left_status == PartStatus::Nontrivial);
  CHECK(d.right_status == PartStatus::Nontrivial);

  // The square knot splits into the trefoil and its mirror as written.
  const GaussDiagram t3 = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const PrimeScanReport sq = prime_scan(concat(t3, mirror(t3)), Budget{6, 500, 1});
  REQUIRE_FALSE(sq.decompositions.empty());
  CHECK(sq.decompositions.front().left == t3);
  CHECK(sq.decompositions.front().right == mirror(t3));
  CHECK(sq.decompositions.front().right_status == PartStatus::Nontrivial);
  // A kink on either side is not a decomposition.
  const GaussDiagram kink = parse_gauss_code("O1+ U1+");
  for (const auto& dec : prime_scan(concat(kink, v2), Budget{3, 1, 1}).decompositions)
    CHECK(dec.representative != concat(kink, v2));

  CHECK(reduces_to_trivial(parse_gauss_code("O1+ O2- U2- U1+")));
  CHECK_FALSE(reduces_to_trivial(v2));
}

TEST_CASE("minimal genus in the orbit") {
  const GaussDiagram v2 = parse_gauss_code("O1+ O2+ U1+ U2+");
  const GenusEstimate e = min_genus_in_orbit(v2, Budget{4, 5000, 3});
  CHECK(e.genus == 1);
  CHECK(supporting_genus(e.certificate) == 1);
}

TEST_CASE("verdicts do not flip when the budget grows") {
  const std::vector<std::string> codes = read_code_lines(oracle::corpus_dir() + "/virtual.txt");
  std::vector<GaussDiagram> ds{GaussDiagram{}, parse_gauss_code("O1+ U1+"), parse_gauss_code("O1+ O2- U1+ U2-")};
  for (std::size_t i = 0; i < 4; ++i) ds.push_back(parse_gauss_code(codes[i]));
  for (const auto& a : ds)
    for (const auto& b : ds) {
      const Budget small{std::max(a.crossings(), b.crossings()) + 1, 500, 3};
      const Budget big{2 * small.max_crossings, 2 * small.max_states, 2 * small.max_depth};
      const Verdict v1 = equivalent_within(a, b, small), v2 = equivalent_within(a, b, big);
      CAPTURE(serialize(a));
      CAPTURE(serialize(b));
      if (v1.outcome != Outcome::Inconclusive) CHECK(v2.outcome == v1.outcome);
      if (v1.outcome == Outcome::Distinct) CHECK(v2.witness->invariant == v1.witness->invariant);
    }
}

TEST_CASE("a classical knot never fails to commute") {
  const GaussDiagram t3 = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const GaussDiagram v2 = parse_gauss_code("O1+ O2+ U1+ U2+");
  const Verdict v = commute_check(t3, v2, Budget{7, 20000, 4}, structure_catalog(4));
  CHECK(v.outcome != Outcome::Distinct);
}

TEST_CASE("minimal genus examples") {
  const GaussDiagram t3 = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const GenusEstimate e = min_genus_in_orbit(t3, Budget{5, 2000, 2});
  CHECK(e.genus == 0);
  CHECK(e.certificate == t3);
}

TEST_CASE("commute check") {
  const GaussDiagram a = parse_gauss_code("O1+ U2- U1+ O2-");
  const GaussDiagram b = parse_gauss_code("U1+ O2- O1+ U2-");
  const Verdict w = commute_check(a, b, Budget{6, 1000, 2}, {parse_structure_spec("biquandle:4#52")});
  REQUIRE(w.outcome == Outcome::Distinct);
  CHECK(w.witness->invariant == "commutator");
  CHECK(w.witness->structure == "biquandle:4#52");

  const GaussDiagram kink = parse_gauss_code("O1+ U1+");
  const Verdict same = commute_check(a, a, Budget{6, 1000, 2}, default_catalog());
  CHECK(same.outcome == Outcome::Equivalent);
  const Verdict with_kink = commute_check(a, kink, default_budget(concat(a, kink)), default_catalog());
  CHECK(with_kink.outcome == Outcome::Equivalent);
  CHECK(replay(concat(a, kink), with_kink.path) == concat(kink, a));
}

}  // TEST_SUITE
