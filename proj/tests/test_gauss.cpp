#include <filesystem>
#include <fstream>
#include <map>

#include "doctest.h"
#include "lvk/error.hpp"
#include "lvk/gauss.hpp"
#include "oracles.hpp"

using namespace lvk;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    parse_gauss_code(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error for '" << std::string(text) << "'");
  return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("gauss") {

TEST_CASE("trivial knot spellings") {
  CHECK(parse_gauss_code("").empty());
  CHECK(parse_gauss_code("0").empty());
  CHECK(serialize(parse_gauss_code("0")).empty());
  CHECK(parse_gauss_code("0").crossings() == 0);
}

TEST_CASE("canonical relabelling by first appearance") {
  const GaussDiagram d = parse_gauss_code("O7+ O3+ U7+ U3+");
  CHECK(serialize(d) == "O1+ O2+ U1+ U2+");
  CHECK_FALSE(d.is_canonical());
  CHECK(canonicalize(d).is_canonical());
  CHECK(serialize(parse_gauss_code("U12- O5+ O12- U5+")) == "U1- O2+ O1- U2+");
}

TEST_CASE("chord positions are 1-based along the line") {
  const GaussDiagram d = parse_gauss_code("O1+ U2- U1+ O2-");
  REQUIRE(d.crossings() == 2);
  const Chord& c1 = d.chord_by_label(1);
  const Chord& c2 = d.chord_by_label(2);
  CHECK(c1.over_pos == 1);
  CHECK(c1.under_pos == 3);
  CHECK(c2.over_pos == 4);
  CHECK(c2.under_pos == 2);
  CHECK(c1.sign == 1);
  CHECK(c2.sign == -1);
  CHECK(d.partner(1) == 3);
  CHECK(d.partner(4) == 2);
  CHECK(d.at(2).role == Role::Under);
  CHECK(d.max_label() == 2);
}

TEST_CASE("grammar errors carry their category") {
  CHECK(code_of("O1+  U1+") == ErrorCode::MalformedToken);
  CHECK(code_of(" O1+ U1+") == ErrorCode::MalformedToken);
  CHECK(code_of("O1+ U1+ ") == ErrorCode::MalformedToken);
  CHECK(code_of("X1+ U1+") == ErrorCode::MalformedToken);
  CHECK(code_of("O1* U1*") == ErrorCode::MalformedToken);
  CHECK(code_of("O01+ U01+") == ErrorCode::MalformedToken);
  CHECK(code_of("O0+ U0+") == ErrorCode::MalformedToken);
  CHECK(code_of("Oa+ Ua+") == ErrorCode::MalformedToken);
  CHECK(code_of("O1") == ErrorCode::MalformedToken);
  CHECK(code_of("O1+ U1-") == ErrorCode::MalformedToken);
  CHECK(code_of("O99999999999+ U99999999999+") == ErrorCode::MalformedToken);
  CHECK(code_of("O1+") == ErrorCode::LabelArity);
  CHECK(code_of("O1+ U2+ U1+") == ErrorCode::LabelArity);
  CHECK(code_of("O1+ U1+ O1+") == ErrorCode::LabelArity);
  CHECK(code_of("O1+ O1+") == ErrorCode::RoleClash);
  CHECK(code_of("U3- U3-") == ErrorCode::RoleClash);
}

TEST_CASE("unknown labels") {
  const GaussDiagram d = parse_gauss_code("O1+ U1+");
  CHECK_THROWS_AS(d.chord_by_label(2), Error);
  CHECK_FALSE(d.find(2).has_value());
  try {
    d.chord_by_label(5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownLabel);
  }
}

TEST_CASE("round trip on random diagrams") {
  auto g = oracle::rng(1);
  for (int i = 0; i < 500; ++i) {
    const GaussDiagram d = oracle::random_diagram(g, g() % 9);
    const std::string s = serialize(d);
    const GaussDiagram back = parse_gauss_code(s);
    CHECK(back == canonicalize(d));
    CHECK(serialize(back) == s);
    CHECK(canonicalize(canonicalize(d)) == canonicalize(d));
    CHECK(back.key() == canonicalize(d).key());
  }
}

TEST_CASE("keys separate distinct canonical forms") {
  auto g = oracle::rng(2);
  std::map<std::string, std::string> by_key;
  for (int i = 0; i < 2000; ++i) {
    const GaussDiagram d = oracle::random_diagram(g, g() % 5);
    const auto [it, fresh] = by_key.emplace(canonicalize(d).key(), serialize(d));
    if (!fresh) CHECK(it->second == serialize(d));
  }
}

TEST_CASE("wide labels use the long key form") {
  auto g = oracle::rng(3);
  const GaussDiagram d = oracle::random_diagram(g, 70);
  CHECK(d.crossings() == 70);
  CHECK(parse_gauss_code(serialize(d)) == canonicalize(d));
  CHECK(canonicalize(d).key().front() == '\xff');
}

TEST_CASE("mirror and reverse are involutions") {
  auto g = oracle::rng(4);
  for (int i = 0; i < 200; ++i) {
    const GaussDiagram d = canonicalize(oracle::random_diagram(g, g() % 7));
    CHECK(mirror(mirror(d)) == d);
    CHECK(reverse(reverse(d)) == d);
    CHECK(mirror(d).crossings() == d.crossings());
  }
  CHECK(serialize(mirror(parse_gauss_code("O1+ O2+ U1+ U2+"))) == "U1- U2- O1- O2-");
  CHECK(serialize(reverse(parse_gauss_code("O1+ O2- U1+ U2-"))) == "U1- U2+ O1- O2+");
}

TEST_CASE("linked agrees with the interleaving count") {
  auto g = oracle::rng(5);
  for (int i = 0; i < 200; ++i) {
    const GaussDiagram d = canonicalize(oracle::random_diagram(g, 2 + g() % 6));
    for (Label a = 1; a <= d.crossings(); ++a) {
      std::size_t count = 0;
      for (Label b = 1; b <= d.crossings(); ++b) {
        if (a == b) continue;
        const Chord& x = d.chord_by_label(a);
        const Chord& y = d.chord_by_label(b);
        const auto lo = std::min(x.over_pos, x.under_pos), hi = std::max(x.over_pos, x.under_pos);
        const bool expect = (lo < y.over_pos && y.over_pos < hi) != (lo < y.under_pos && y.under_pos < hi);
        CHECK(linked(d, a, b) == expect);
        CHECK(linked(d, a, b) == linked(d, b, a));
        count += expect;
      }
      CHECK(linked_count(d, *d.find(a)) == count);
    }
  }
  const GaussDiagram t = parse_gauss_code("O1+ U1+");
  CHECK_THROWS_AS(linked(t, 1, 1), Error);
}

TEST_CASE("canonical order is by crossings first") {
  const GaussDiagram a = parse_gauss_code("O1+ U1+");
  const GaussDiagram b = parse_gauss_code("O1+ O2+ U1+ U2+");
  CHECK(canonical_less(GaussDiagram{}, a));
  CHECK(canonical_less(a, b));
  CHECK_FALSE(canonical_less(b, a));
  CHECK_FALSE(canonical_less(a, a));
}

TEST_CASE("code files skip comments and blank lines") {
  const auto path = std::filesystem::temp_directory_path() / "lvk_gauss_lines.txt";
  {
    std::ofstream out(path);
    out << "# header\n\nO1+ U1+\n0\r\n# tail\n";
  }
  const auto lines = read_code_lines(path.string());
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "O1+ U1+");
  CHECK(lines[1] == "0");
  std::filesystem::remove(path);
  try {
    read_code_lines((std::filesystem::temp_directory_path() / "lvk_missing_file.txt").string());
    FAIL("expected an Io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("corpus files parse") {
  for (const char* name : {"classical.txt", "virtual.txt"}) {
    const auto lines = read_code_lines(oracle::corpus_dir() + "/" + name);
    CHECK(lines.size() >= 8);
    for (const auto& l : lines) CHECK_NOTHROW(parse_gauss_code(l));
  }
}

}  // TEST_SUITE
