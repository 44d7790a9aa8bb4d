#include "lvk/gauss.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>

#include "lvk/error.hpp"

namespace lvk {

namespace {

Token parse_token(std::string_view tok) {
  auto bad = [&](const char* why) {
    return Error(ErrorCode::MalformedToken, "malformed token '" + std::string(tok) + "': " + why);
  };
  if (tok.size() < 3) throw bad("too short");
  Role role;
  if (tok.front() == 'O') {
    role = Role::Over;
  } else if (tok.front() == 'U') {
    role = Role::Under;
  } else {
    throw bad("role must be 'O' or 'U'");
  }
  int sign;
  if (tok.back() == '+') {
    sign = 1;
  } else if (tok.back() == '-') {
    sign = -1;
  } else {
    throw bad("sign must be '+' or '-'");
  }
  auto digits = tok.substr(1, tok.size() - 2);
  if (digits.front() == '0') throw bad("label must be a nonzero integer without leading zeros");
  for (char c : digits) {
    if (c < '0' || c > '9') throw bad("label must be decimal");
  }
  Label label = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), label);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw bad("label out of range");
  return Token{label, role, sign};
}

}  // namespace

GaussDiagram::GaussDiagram(std::span<const Token> tokens) {
  std::map<Label, std::uint32_t> index;
  std::vector<int> seen_roles;  // bitmask: 1 = over, 2 = under
  sequence_.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    auto [it, fresh] = index.try_emplace(t.label, static_cast<std::uint32_t>(chords_.size()));
    const std::size_t pos = i + 1;
    if (fresh) {
      chords_.push_back(Chord{t.label, t.sign, 0, 0});
      seen_roles.push_back(0);
    }
    const std::uint32_t c = it->second;
    Chord& chord = chords_[c];
    const int bit = t.role == Role::Over ? 1 : 2;
    if (seen_roles[c] & bit) {
      const bool twice = seen_roles[c] == bit;
      throw Error(twice ? ErrorCode::RoleClash : ErrorCode::LabelArity,
                  "label " + std::to_string(t.label) +
                      (twice ? " appears twice with the same role" : " appears more than twice"));
    }
    if (chord.sign != t.sign) {
      throw Error(ErrorCode::MalformedToken, "label " + std::to_string(t.label) + " carries both signs");
    }
    seen_roles[c] |= bit;
    (t.role == Role::Over ? chord.over_pos : chord.under_pos) = pos;
    sequence_.push_back(Endpoint{c, t.role});
  }
  for (std::size_t c = 0; c < chords_.size(); ++c) {
    if (seen_roles[c] != 3) {
      throw Error(ErrorCode::LabelArity, "label " + std::to_string(chords_[c].label) + " appears only once");
    }
  }
}

GaussDiagram GaussDiagram::canonical_from(std::span<const Endpoint> sequence, std::span<const int> signs) {
  constexpr std::uint32_t unset = UINT32_MAX;
  std::vector<std::uint32_t> relabel(signs.size(), unset);
  GaussDiagram d;
  d.sequence_.reserve(sequence.size());
  d.chords_.reserve(sequence.size() / 2);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const Endpoint& e = sequence[i];
    std::uint32_t& c = relabel[e.chord];
    if (c == unset) {
      c = static_cast<std::uint32_t>(d.chords_.size());
      d.chords_.push_back(Chord{c + 1, signs[e.chord], 0, 0});
    }
    (e.role == Role::Over ? d.chords_[c].over_pos : d.chords_[c].under_pos) = i + 1;
    d.sequence_.push_back(Endpoint{c, e.role});
  }
  return d;
}

std::size_t GaussDiagram::partner(std::size_t pos) const {
  const Endpoint& e = at(pos);
  const Chord& c = chords_[e.chord];
  return e.role == Role::Over ? c.under_pos : c.over_pos;
}

std::optional<std::uint32_t> GaussDiagram::find(Label label) const noexcept {
  for (std::size_t c = 0; c < chords_.size(); ++c) {
    if (chords_[c].label == label) return static_cast<std::uint32_t>(c);
  }
  return std::nullopt;
}

const Chord& GaussDiagram::chord_by_label(Label label) const {
  auto c = find(label);
  if (!c) throw Error(ErrorCode::UnknownLabel, "no chord labelled " + std::to_string(label));
  return chords_[*c];
}

Label GaussDiagram::max_label() const noexcept {
  Label m = 0;
  for (const Chord& c : chords_) m = std::max(m, c.label);
  return m;
}

bool GaussDiagram::is_canonical() const noexcept {
  std::uint32_t next = 0;
  for (const Endpoint& e : sequence_) {
    if (e.chord == next) {
      ++next;
    } else if (e.chord > next) {
      return false;
    }
  }
  for (std::size_t c = 0; c < chords_.size(); ++c) {
    if (chords_[c].label != c + 1) return false;
  }
  return true;
}

std::string GaussDiagram::key() const {
  std::string k;
  if (chords_.size() < 64) {
    k.reserve(sequence_.size());
    for (const Endpoint& e : sequence_) {
      const int s = chords_[e.chord].sign > 0 ? 1 : 0;
      k.push_back(static_cast<char>((e.chord << 2) | (e.role == Role::Under ? 2u : 0u) | s));
    }
  } else {
    k.push_back('\xff');
    for (const Endpoint& e : sequence_) {
      const std::uint32_t v = (e.chord << 2) | (e.role == Role::Under ? 2u : 0u) | (chords_[e.chord].sign > 0 ? 1u : 0u);
      k.push_back(static_cast<char>(v >> 16));
      k.push_back(static_cast<char>(v >> 8));
      k.push_back(static_cast<char>(v));
    }
  }
  return k;
}

GaussDiagram parse_gauss_code(std::string_view text) {
  if (text.empty() || text == "0") return GaussDiagram{};
  std::vector<Token> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t sp = text.find(' ', start);
    const std::string_view tok = text.substr(start, sp == std::string_view::npos ? std::string_view::npos : sp - start);
    if (tok.empty()) throw Error(ErrorCode::MalformedToken, "tokens must be separated by a single space");
    tokens.push_back(parse_token(tok));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return GaussDiagram(tokens);
}

std::string serialize(const GaussDiagram& d) {
  const GaussDiagram c = d.is_canonical() ? d : canonicalize(d);
  std::string out;
  for (std::size_t pos = 1; pos <= c.length(); ++pos) {
    if (pos > 1) out.push_back(' ');
    const Endpoint& e = c.at(pos);
    out.push_back(e.role == Role::Over ? 'O' : 'U');
    out += std::to_string(c.chords()[e.chord].label);
    out.push_back(c.chords()[e.chord].sign > 0 ? '+' : '-');
  }
  return out;
}

GaussDiagram canonicalize(const GaussDiagram& d) {
  std::vector<int> signs;
  signs.reserve(d.crossings());
  for (const Chord& c : d.chords()) signs.push_back(c.sign);
  return GaussDiagram::canonical_from(d.endpoints(), signs);
}

GaussDiagram mirror(const GaussDiagram& d) {
  std::vector<Endpoint> seq(d.endpoints().begin(), d.endpoints().end());
  for (Endpoint& e : seq) e.role = opposite(e.role);
  std::vector<int> signs;
  for (const Chord& c : d.chords()) signs.push_back(-c.sign);
  return GaussDiagram::canonical_from(seq, signs);
}

GaussDiagram reverse(const GaussDiagram& d) {
  std::vector<Endpoint> seq(d.endpoints().rbegin(), d.endpoints().rend());
  std::vector<int> signs;
  for (const Chord& c : d.chords()) signs.push_back(c.sign);
  return GaussDiagram::canonical_from(seq, signs);
}

namespace {

bool chords_linked(const Chord& a, const Chord& b) {
  const auto [lo, hi] = std::minmax(a.over_pos, a.under_pos);
  const bool over_in = b.over_pos > lo && b.over_pos < hi;
  const bool under_in = b.under_pos > lo && b.under_pos < hi;
  return over_in != under_in;
}

}  // namespace

bool linked(const GaussDiagram& d, Label a, Label b) {
  const Chord& ca = d.chord_by_label(a);
  const Chord& cb = d.chord_by_label(b);
  if (a == b) throw Error(ErrorCode::InvalidArgument, "linked() needs two distinct chords");
  return chords_linked(ca, cb);
}

std::size_t linked_count(const GaussDiagram& d, std::uint32_t chord) {
  const auto chords = d.chords();
  std::size_t count = 0;
  for (std::size_t c = 0; c < chords.size(); ++c) {
    if (c != chord && chords_linked(chords[chord], chords[c])) ++count;
  }
  return count;
}

bool canonical_less(const GaussDiagram& a, const GaussDiagram& b) {
  if (a.crossings() != b.crossings()) return a.crossings() < b.crossings();
  return a.key() < b.key();
}

std::vector<std::string> read_code_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<std::string> codes;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    codes.push_back(line);
  }
  return codes;
}

}  // namespace lvk
