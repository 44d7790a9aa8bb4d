#include "lvk/moves.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "lvk/error.hpp"

namespace lvk {

const char* to_string(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::R1Insert: return "R1_insert";
    case MoveKind::R1Remove: return "R1_remove";
    case MoveKind::R2Insert: return "R2_insert";
    case MoveKind::R2Remove: return "R2_remove";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

MoveKind kind_of(const MoveEvent& m) noexcept { return static_cast<MoveKind>(m.index()); }

int crossing_delta(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::R1Insert: return 1;
    case MoveKind::R1Remove: return -1;
    case MoveKind::R2Insert: return 2;
    case MoveKind::R2Remove: return -2;
    case MoveKind::R3: return 0;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Table

namespace {

Error table_error(const std::string& line, const char* why) {
  return Error(ErrorCode::InvalidArgument, "bad move table line '" + line + "': " + why);
}

bool parse_order(const std::string& word, const char* a, const char* b, bool& a_first) {
  if (word == std::string(a) + "." + b) {
    a_first = true;
    return true;
  }
  if (word == std::string(b) + "." + a) {
    a_first = false;
    return true;
  }
  return false;
}

}  // namespace

MoveRules MoveRules::parse(std::string_view text) {
  MoveRules rules;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream words(line);
    std::string head;
    words >> head;
    if (head == "version") {
      if (!(words >> rules.version_)) throw table_error(line, "missing version number");
    } else if (head == "r2") {
      std::string pairing, signs;
      words >> pairing >> signs;
      if (signs != "opposite") throw table_error(line, "only opposite-sign R2 pairs are classical moves");
      if (pairing == "parallel") {
        rules.r2_parallel_ = true;
      } else if (pairing == "crossed") {
        rules.r2_crossed_ = true;
      } else {
        throw table_error(line, "pairing must be parallel or crossed");
      }
    } else if (head == "r3") {
      std::string top, mid, bot, signs;
      words >> top >> mid >> bot >> signs;
      R3Pattern p{};
      if (!parse_order(top, "tm", "tb", p.top_tm_first) || !parse_order(mid, "tm", "mb", p.mid_tm_first) ||
          !parse_order(bot, "tb", "mb", p.bot_tb_first)) {
        throw table_error(line, "bad strand order");
      }
      if (signs.size() != 3) throw table_error(line, "expected three signs");
      for (std::size_t i = 0; i < 3; ++i) {
        if (signs[i] != '+' && signs[i] != '-') throw table_error(line, "sign must be + or -");
        p.signs[i] = signs[i] == '+' ? 1 : -1;
      }
      rules.r3_.push_back(p);
    } else {
      throw table_error(line, "unknown directive");
    }
  }
  return rules;
}

const MoveRules& MoveRules::standard() {
  static const MoveRules rules = parse(standard_move_table_text());
  return rules;
}

bool MoveRules::r2_allows(bool crossed, bool opposite_signs) const noexcept {
  if (!opposite_signs) return false;
  return crossed ? r2_crossed_ : r2_parallel_;
}

std::optional<std::size_t> MoveRules::r3_match(const R3Pattern& p) const noexcept {
  const R3Pattern q = p.swapped();
  for (std::size_t i = 0; i < r3_.size(); ++i) {
    if (r3_[i] == p || r3_[i] == q) return i;
  }
  return std::nullopt;
}

MoveRules MoveRules::without_r3_entry(std::size_t index) const {
  MoveRules copy = *this;
  if (index < copy.r3_.size()) copy.r3_.erase(copy.r3_.begin() + static_cast<std::ptrdiff_t>(index));
  return copy;
}

// ---------------------------------------------------------------------------
// Sites

std::optional<R3Pattern> r3_pattern_at(const GaussDiagram& d, const std::array<std::size_t, 3>& pairs) {
  const std::size_t len = d.length();
  if (!(pairs[0] >= 1 && pairs[1] >= pairs[0] + 2 && pairs[2] >= pairs[1] + 2 && pairs[2] + 1 <= len)) {
    return std::nullopt;
  }
  std::array<std::array<Endpoint, 2>, 3> ends;
  for (std::size_t k = 0; k < 3; ++k) {
    ends[k] = {d.at(pairs[k]), d.at(pairs[k] + 1)};
    if (ends[k][0].chord == ends[k][1].chord) return std::nullopt;
  }
  // Classify pairs: top holds two over-ends, bottom two under-ends.
  int top = -1, mid = -1, bot = -1;
  for (int k = 0; k < 3; ++k) {
    const int overs = (ends[k][0].role == Role::Over) + (ends[k][1].role == Role::Over);
    int& slot = overs == 2 ? top : overs == 0 ? bot : mid;
    if (slot != -1) return std::nullopt;
    slot = k;
  }
  auto shared = [&](int x, int y) -> std::optional<std::uint32_t> {
    for (const Endpoint& a : ends[x]) {
      for (const Endpoint& b : ends[y]) {
        if (a.chord == b.chord) return a.chord;
      }
    }
    return std::nullopt;
  };
  const auto tm = shared(top, mid), tb = shared(top, bot), mb = shared(mid, bot);
  if (!tm || !tb || !mb || *tm == *tb || *tm == *mb || *tb == *mb) return std::nullopt;
  // Each pair must hold exactly its two triangle chords.
  auto holds = [&](int k, std::uint32_t a, std::uint32_t b) {
    return (ends[k][0].chord == a && ends[k][1].chord == b) || (ends[k][0].chord == b && ends[k][1].chord == a);
  };
  if (!holds(top, *tm, *tb) || !holds(mid, *tm, *mb) || !holds(bot, *tb, *mb)) return std::nullopt;
  const auto chords = d.chords();
  R3Pattern p{};
  p.top_tm_first = ends[top][0].chord == *tm;
  p.mid_tm_first = ends[mid][0].chord == *tm;
  p.bot_tb_first = ends[bot][0].chord == *tb;
  p.signs = {chords[*tm].sign, chords[*tb].sign, chords[*mb].sign};
  return p;
}

namespace {

std::vector<int> signs_of(const GaussDiagram& d, std::size_t extra = 0) {
  std::vector<int> s;
  s.reserve(d.crossings() + extra);
  for (const Chord& c : d.chords()) s.push_back(c.sign);
  return s;
}

Error illegal(const std::string& why) { return Error(ErrorCode::IllegalMove, why); }

GaussDiagram apply_r1_insert(const GaussDiagram& d, const R1Insert& m) {
  if (m.gap > d.length()) throw illegal("R1 insertion gap out of range");
  if (m.sign != 1 && m.sign != -1) throw illegal("sign must be +1 or -1");
  auto signs = signs_of(d, 1);
  const auto c = static_cast<std::uint32_t>(signs.size());
  signs.push_back(m.sign);
  std::vector<Endpoint> seq(d.endpoints().begin(), d.endpoints().end());
  const auto at = seq.begin() + static_cast<std::ptrdiff_t>(m.gap);
  seq.insert(at, {Endpoint{c, m.first}, Endpoint{c, opposite(m.first)}});
  return GaussDiagram::canonical_from(seq, signs);
}

std::vector<Endpoint> without(const GaussDiagram& d, std::uint32_t a, std::uint32_t b) {
  std::vector<Endpoint> seq;
  seq.reserve(d.length());
  for (const Endpoint& e : d.endpoints()) {
    if (e.chord != a && e.chord != b) seq.push_back(e);
  }
  return seq;
}

bool adjacent(std::size_t p, std::size_t q) { return p + 1 == q || q + 1 == p; }

GaussDiagram apply_r1_remove(const GaussDiagram& d, const R1Remove& m) {
  const auto c = d.find(m.chord);
  if (!c) throw illegal("R1 removal: no chord " + std::to_string(m.chord));
  const Chord& ch = d.chords()[*c];
  if (!adjacent(ch.over_pos, ch.under_pos)) throw illegal("R1 removal: chord endpoints are not adjacent");
  return GaussDiagram::canonical_from(without(d, *c, *c), signs_of(d));
}

GaussDiagram apply_r2_insert(const GaussDiagram& d, const R2Insert& m, const MoveRules& rules) {
  if (m.gap1 > m.gap2 || m.gap2 > d.length()) throw illegal("R2 insertion gaps out of range");
  if (m.sign != 1 && m.sign != -1) throw illegal("sign must be +1 or -1");
  if (!rules.r2_allows(m.crossed, true)) throw illegal("R2 pairing not in the move table");
  auto signs = signs_of(d, 2);
  const auto a = static_cast<std::uint32_t>(signs.size());
  const auto b = a + 1;
  signs.push_back(m.sign);
  signs.push_back(-m.sign);
  const Role second = opposite(m.first_role);
  std::vector<Endpoint> seq;
  seq.reserve(d.length() + 4);
  const auto src = d.endpoints();
  for (std::size_t gap = 0; gap <= src.size(); ++gap) {
    if (gap == m.gap1) {
      seq.push_back({a, m.first_role});
      seq.push_back({b, m.first_role});
    }
    if (gap == m.gap2) {
      if (m.crossed) {
        seq.push_back({b, second});
        seq.push_back({a, second});
      } else {
        seq.push_back({a, second});
        seq.push_back({b, second});
      }
    }
    if (gap < src.size()) seq.push_back(src[gap]);
  }
  return GaussDiagram::canonical_from(seq, signs);
}

struct R2Site {
  std::uint32_t a, b;  // a has the earliest endpoint
  bool crossed;
};

std::optional<R2Site> r2_site(const GaussDiagram& d, std::uint32_t x, std::uint32_t y) {
  if (x == y) return std::nullopt;
  const Chord& cx = d.chords()[x];
  const Chord& cy = d.chords()[y];
  if (!adjacent(cx.over_pos, cy.over_pos) || !adjacent(cx.under_pos, cy.under_pos)) return std::nullopt;
  if (cx.sign != -cy.sign) return std::nullopt;
  const bool crossed = (cx.over_pos < cy.over_pos) != (cx.under_pos < cy.under_pos);
  const std::size_t fx = std::min(cx.over_pos, cx.under_pos), fy = std::min(cy.over_pos, cy.under_pos);
  return fx < fy ? R2Site{x, y, crossed} : R2Site{y, x, crossed};
}

GaussDiagram apply_r2_remove(const GaussDiagram& d, const R2Remove& m, const MoveRules& rules) {
  const auto x = d.find(m.first), y = d.find(m.second);
  if (!x || !y) throw illegal("R2 removal: unknown chord");
  const auto site = r2_site(d, *x, *y);
  if (!site) throw illegal("R2 removal: chords do not form an R2 pair");
  if (!rules.r2_allows(site->crossed, true)) throw illegal("R2 pairing not in the move table");
  return GaussDiagram::canonical_from(without(d, *x, *y), signs_of(d));
}

GaussDiagram apply_r3(const GaussDiagram& d, const R3Move& m, const MoveRules& rules) {
  const auto p = r3_pattern_at(d, m.pairs);
  if (!p) throw illegal("R3: pairs do not form a triangle");
  if (!rules.r3_match(*p)) throw illegal("R3: oriented variant not in the move table");
  std::vector<Endpoint> seq(d.endpoints().begin(), d.endpoints().end());
  for (std::size_t start : m.pairs) std::swap(seq[start - 1], seq[start]);
  return GaussDiagram::canonical_from(seq, signs_of(d));
}

}  // namespace

GaussDiagram apply(const GaussDiagram& d, const MoveEvent& m, const MoveRules& rules) {
  return std::visit(
      [&](const auto& mv) -> GaussDiagram {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, R1Insert>) {
          return apply_r1_insert(d, mv);
        } else if constexpr (std::is_same_v<T, R1Remove>) {
          return apply_r1_remove(d, mv);
        } else if constexpr (std::is_same_v<T, R2Insert>) {
          return apply_r2_insert(d, mv, rules);
        } else if constexpr (std::is_same_v<T, R2Remove>) {
          return apply_r2_remove(d, mv, rules);
        } else {
          return apply_r3(d, mv, rules);
        }
      },
      m);
}

MoveEvent inverse(const GaussDiagram& d, const MoveEvent& m, const MoveRules& rules) {
  const GaussDiagram result = apply(d, m, rules);
  return std::visit(
      [&](const auto& mv) -> MoveEvent {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, R1Insert>) {
          return R1Remove{result.chord_at(mv.gap + 1).label};
        } else if constexpr (std::is_same_v<T, R1Remove>) {
          const Chord& c = d.chord_by_label(mv.chord);
          const std::size_t p = std::min(c.over_pos, c.under_pos);
          return R1Insert{p - 1, c.sign, d.at(p).role};
        } else if constexpr (std::is_same_v<T, R2Insert>) {
          return R2Remove{result.chord_at(mv.gap1 + 1).label, result.chord_at(mv.gap1 + 2).label};
        } else if constexpr (std::is_same_v<T, R2Remove>) {
          const Chord& x = d.chord_by_label(mv.first);
          const Chord& y = d.chord_by_label(mv.second);
          const std::size_t i = std::min({x.over_pos, x.under_pos, y.over_pos, y.under_pos});
          const std::size_t j = std::max({x.over_pos, x.under_pos, y.over_pos, y.under_pos}) - 1;
          const bool crossed = (x.over_pos < y.over_pos) != (x.under_pos < y.under_pos);
          return R2Insert{i - 1, j - 3, d.at(i).role, crossed, d.chord_at(i).sign};
        } else {
          return mv;
        }
      },
      m);
}

std::vector<MoveResult> enumerate_moves(const GaussDiagram& d, std::size_t cap, const MoveRules& rules) {
  const std::size_t n = d.crossings();
  const std::size_t len = d.length();
  std::vector<MoveEvent> events;

  if (n + 1 <= cap) {
    for (std::size_t gap = 0; gap <= len; ++gap) {
      for (int sign : {1, -1}) {
        for (Role first : {Role::Over, Role::Under}) events.push_back(R1Insert{gap, sign, first});
      }
    }
  }
  for (const Chord& c : d.chords()) {
    if (adjacent(c.over_pos, c.under_pos)) events.push_back(R1Remove{c.label});
  }
  if (n + 2 <= cap) {
    for (std::size_t g1 = 0; g1 <= len; ++g1) {
      for (std::size_t g2 = g1; g2 <= len; ++g2) {
        for (Role role : {Role::Over, Role::Under}) {
          for (bool crossed : {false, true}) {
            if (!rules.r2_allows(crossed, true)) continue;
            for (int sign : {1, -1}) events.push_back(R2Insert{g1, g2, role, crossed, sign});
          }
        }
      }
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = x + 1; y < n; ++y) {
      const auto site = r2_site(d, x, y);
      if (site && rules.r2_allows(site->crossed, true)) {
        events.push_back(R2Remove{d.chords()[site->a].label, d.chords()[site->b].label});
      }
    }
  }
  if (len >= 6) {
    std::vector<std::size_t> starts;
    for (std::size_t p = 1; p < len; ++p) {
      if (d.at(p).chord != d.at(p + 1).chord) starts.push_back(p);
    }
    for (std::size_t i = 0; i < starts.size(); ++i) {
      for (std::size_t j = i + 1; j < starts.size(); ++j) {
        if (starts[j] < starts[i] + 2) continue;
        for (std::size_t k = j + 1; k < starts.size(); ++k) {
          if (starts[k] < starts[j] + 2) continue;
          const std::array<std::size_t, 3> pairs{starts[i], starts[j], starts[k]};
          const auto p = r3_pattern_at(d, pairs);
          if (p && rules.r3_match(*p)) events.push_back(R3Move{pairs});
        }
      }
    }
  }

  std::vector<MoveResult> out;
  out.reserve(events.size());
  for (const MoveEvent& e : events) out.push_back({e, apply(d, e, rules)});
  // Stable sort keeps the first-generated event for each canonical form.
  std::vector<std::pair<std::string, std::size_t>> order;
  order.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) order.emplace_back(out[i].result.key(), i);
  std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    const std::size_t na = out[a.second].result.crossings(), nb = out[b.second].result.crossings();
    if (na != nb) return na < nb;
    return a.first < b.first;
  });
  std::vector<MoveResult> unique;
  unique.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && order[i].first == order[i - 1].first) continue;
    unique.push_back(std::move(out[order[i].second]));
  }
  return unique;
}

std::string describe(const MoveEvent& m) {
  std::ostringstream os;
  os << to_string(kind_of(m));
  auto sign = [](int s) { return s > 0 ? '+' : '-'; };
  auto role = [](Role r) { return r == Role::Over ? 'O' : 'U'; };
  std::visit(
      [&](const auto& mv) {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, R1Insert>) {
          os << " gap=" << mv.gap << " sign=" << sign(mv.sign) << " first=" << role(mv.first);
        } else if constexpr (std::is_same_v<T, R1Remove>) {
          os << " chord=" << mv.chord;
        } else if constexpr (std::is_same_v<T, R2Insert>) {
          os << " gaps=" << mv.gap1 << "," << mv.gap2 << " first=" << role(mv.first_role)
             << (mv.crossed ? " crossed" : " parallel") << " sign=" << sign(mv.sign);
        } else if constexpr (std::is_same_v<T, R2Remove>) {
          os << " chords=" << mv.first << "," << mv.second;
        } else {
          os << " pairs=" << mv.pairs[0] << "," << mv.pairs[1] << "," << mv.pairs[2];
        }
      },
      m);
  return os.str();
}

}  // namespace lvk
