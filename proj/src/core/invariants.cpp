#include "lvk/invariants.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lvk/error.hpp"

namespace lvk {

// ---------------------------------------------------------------------------
// Axioms

namespace {

using Table = std::vector<std::uint8_t>;

std::vector<AxiomViolation> compute_violations(std::size_t m, StructureKind kind, const Table& up, const Table& down) {
  std::vector<AxiomViolation> out;
  if (m == 0 || up.size() != m * m || down.size() != m * m) {
    out.push_back({"table_shape", m, up.size(), down.size()});
    return out;
  }
  for (std::size_t i = 0; i < m * m; ++i) {
    if (up[i] >= m || down[i] >= m) {
      out.push_back({"table_range", i / m, i % m, 0});
      return out;
    }
  }
  auto U = [&](std::size_t x, std::size_t y) -> std::size_t { return up[x * m + y]; };    // x under-acted by y
  auto O = [&](std::size_t x, std::size_t y) -> std::size_t { return down[x * m + y]; };  // x over-acted by y

  if (kind == StructureKind::Quandle) {
    [&] {
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
          if (O(x, y) != x) return out.push_back({"quandle_over_identity", x, y, 0});
    }();
  }
  auto column_bijective = [&](const char* name, auto op) {
    for (std::size_t y = 0; y < m; ++y) {
      std::vector<std::size_t> first(m, m);
      for (std::size_t x = 0; x < m; ++x) {
        const std::size_t v = op(x, y);
        if (first[v] != m) return out.push_back({name, first[v], x, y});
        first[v] = x;
      }
    }
  };
  column_bijective("under_invertible", U);
  column_bijective("over_invertible", O);

  // Positive crossing: (under_in, over_in) -> (U(under_in, over_in), O(over_in, under_in)).
  Table inv(m * m * 2, 0);
  bool crossing_ok = true;
  [&] {
    std::vector<std::size_t> first(m * m, m * m);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t o = 0; o < m; ++o) {
        const std::size_t v = U(u, o) * m + O(o, u);
        if (first[v] != m * m) {
          crossing_ok = false;
          return out.push_back({"crossing_invertible", u, o, first[v]});
        }
        first[v] = u * m + o;
        inv[2 * v] = static_cast<std::uint8_t>(u);
        inv[2 * v + 1] = static_cast<std::uint8_t>(o);
      }
    }
  }();
  if (!crossing_ok) return out;
  auto cross = [&](int sign, std::size_t u, std::size_t o) -> std::pair<std::size_t, std::size_t> {
    if (sign > 0) return {U(u, o), O(o, u)};
    return {inv[2 * (u * m + o)], inv[2 * (u * m + o) + 1]};
  };

  // A kink entered with colour a must admit exactly one colouring of its
  // loop, and that colouring must leave with colour a again.
  for (int sign : {1, -1}) {
    for (bool over_first : {true, false}) {
      const char* name = sign > 0 ? (over_first ? "kink_over_first_positive" : "kink_under_first_positive")
                                  : (over_first ? "kink_over_first_negative" : "kink_under_first_negative");
      for (std::size_t a = 0; a < m; ++a) {
        std::size_t loops = 0;
        bool exits_ok = true;
        for (std::size_t c = 0; c < m; ++c) {
          const auto [uo, oo] = over_first ? cross(sign, c, a) : cross(sign, a, c);
          const std::size_t back = over_first ? oo : uo;
          const std::size_t exit = over_first ? uo : oo;
          if (back != c) continue;
          ++loops;
          exits_ok = exits_ok && exit == a;
        }
        if (loops != 1 || !exits_ok) {
          out.push_back({name, a, loops, 0});
          break;
        }
      }
    }
  }

  // Braid relation for three strands heading the same way, all crossings
  // positive, written one output position at a time.
  auto exchange = [&](const char* name, auto lhs, auto rhs) {
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t z = 0; z < m; ++z)
          if (lhs(x, y, z) != rhs(x, y, z)) return out.push_back({name, x, y, z});
  };
  exchange(
      "exchange_left", [&](auto x, auto y, auto z) { return U(U(z, O(x, y)), U(y, x)); },
      [&](auto x, auto y, auto z) { return U(U(z, y), x); });
  exchange(
      "exchange_middle", [&](auto x, auto y, auto z) { return O(U(y, x), U(z, O(x, y))); },
      [&](auto x, auto y, auto z) { return U(O(y, z), O(x, U(z, y))); });
  exchange(
      "exchange_right", [&](auto x, auto y, auto z) { return O(O(x, y), z); },
      [&](auto x, auto y, auto z) { return O(O(x, U(z, y)), O(y, z)); });
  return out;
}

bool is_prime(std::size_t m) {
  if (m < 2) return false;
  for (std::size_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

std::optional<FiniteBiquandle::Affine> detect_affine(std::size_t m, const Table& up, const Table& down) {
  if (!is_prime(m)) return std::nullopt;
  const auto M = static_cast<std::uint32_t>(m);
  auto sub = [&](std::uint32_t a, std::uint32_t b) { return (a + M - b) % M; };
  FiniteBiquandle::Affine f{};
  f.a2 = up[0];
  f.a0 = sub(up[1 * m + 0], f.a2);
  f.a1 = sub(up[0 * m + 1], f.a2);
  f.b2 = down[0];
  f.b0 = sub(down[1 * m + 0], f.b2);
  f.b1 = sub(down[0 * m + 1], f.b2);
  for (std::uint32_t x = 0; x < M; ++x) {
    for (std::uint32_t y = 0; y < M; ++y) {
      if (up[x * m + y] != (f.a0 * x + f.a1 * y + f.a2) % M) return std::nullopt;
      if (down[x * m + y] != (f.b0 * x + f.b1 * y + f.b2) % M) return std::nullopt;
    }
  }
  return f;
}

}  // namespace

FiniteBiquandle::FiniteBiquandle(std::size_t order, StructureKind kind, std::vector<std::uint8_t> up,
                                 std::vector<std::uint8_t> down, std::string name)
    : m_(order), kind_(kind), up_(std::move(up)), down_(std::move(down)), name_(std::move(name)) {
  if (kind_ == StructureKind::Quandle && down_.empty()) {
    down_.resize(m_ * m_);
    for (std::size_t o = 0; o < m_; ++o)
      for (std::size_t u = 0; u < m_; ++u) down_[o * m_ + u] = static_cast<std::uint8_t>(o);
  }
  violations_ = compute_violations(m_, kind_, up_, down_);
  if (!violations_.empty()) return;
  inverse_.assign(m_ * m_, 0);
  for (std::size_t u = 0; u < m_; ++u) {
    for (std::size_t o = 0; o < m_; ++o) {
      inverse_[this->up(u, o) * m_ + this->down(o, u)] = static_cast<std::uint8_t>(u * m_ + o);
    }
  }
  affine_ = detect_affine(m_, up_, down_);
}

FiniteBiquandle FiniteBiquandle::dihedral(std::size_t m) {
  std::vector<std::uint8_t> up(m * m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t o = 0; o < m; ++o) up[u * m + o] = static_cast<std::uint8_t>((2 * o + m - u) % m);
  return FiniteBiquandle(m, StructureKind::Quandle, std::move(up), {}, "dihedral:" + std::to_string(m));
}

FiniteBiquandle FiniteBiquandle::trivial(std::size_t m) {
  std::vector<std::uint8_t> up(m * m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t o = 0; o < m; ++o) up[u * m + o] = static_cast<std::uint8_t>(u);
  return FiniteBiquandle(m, StructureKind::Quandle, std::move(up), {}, "trivial:" + std::to_string(m));
}

std::pair<std::uint8_t, std::uint8_t> FiniteBiquandle::cross(int sign, std::uint8_t under_in,
                                                             std::uint8_t over_in) const noexcept {
  if (sign > 0) return {up(under_in, over_in), down(over_in, under_in)};
  const std::uint8_t packed = inverse_[under_in * m_ + over_in];
  return {static_cast<std::uint8_t>(packed / m_), static_cast<std::uint8_t>(packed % m_)};
}

std::vector<AxiomViolation> check_axioms(const FiniteBiquandle& x) { return x.violations(); }

// ---------------------------------------------------------------------------
// Matrices

ColoringMatrix ColoringMatrix::identity(std::size_t m) {
  ColoringMatrix id(m);
  for (std::size_t a = 0; a < m; ++a) id.at(a, a) = 1;
  return id;
}

ColoringMatrix operator*(const ColoringMatrix& x, const ColoringMatrix& y) {
  const std::size_t m = x.order();
  ColoringMatrix z(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t k = 0; k < m; ++k) {
      const std::uint64_t xa = x.at(a, k);
      if (xa == 0) continue;
      for (std::size_t b = 0; b < m; ++b) z.at(a, b) += xa * y.at(k, b);
    }
  return z;
}

int odd_writhe(const GaussDiagram& d) {
  int j = 0;
  for (std::uint32_t c = 0; c < d.crossings(); ++c) {
    if (linked_count(d, c) % 2 == 1) j += d.chords()[c].sign;
  }
  return j;
}

namespace {

void require_valid(const FiniteBiquandle& x) {
  if (!x.valid()) {
    const auto& v = x.violations().front();
    throw Error(ErrorCode::InvalidStructure, "structure " + (x.name().empty() ? std::string("<unnamed>") : x.name()) +
                                                 " violates " + v.axiom);
  }
}

// Colourings of an affine structure over Z/p form an affine subspace; count
// by elimination instead of enumeration.
ColoringMatrix coloring_matrix_affine(const GaussDiagram& d, const FiniteBiquandle& x) {
  const std::size_t m = x.order();
  const auto p = static_cast<std::uint32_t>(m);
  const auto& f = *x.affine();
  const std::size_t len = d.length();
  const std::size_t interior = len - 1;  // semiarcs 1..len-1
  const std::size_t cols = len + 2;      // interior, c_0, c_len, rhs
  auto col = [&](std::size_t semiarc) {
    if (semiarc == 0) return interior;
    if (semiarc == len) return interior + 1;
    return semiarc - 1;
  };
  auto neg = [&](std::uint32_t v) { return (p - v % p) % p; };

  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(len);
  for (const Chord& c : d.chords()) {
    const std::size_t ui = c.under_pos - 1, uo = c.under_pos, oi = c.over_pos - 1, oo = c.over_pos;
    // Positive: uo = a0 ui + a1 oi + a2, oo = b0 oi + b1 ui + b2.
    // Negative: the same with ins and outs exchanged.
    const bool pos = c.sign > 0;
    const std::size_t u_res = pos ? uo : ui, u_arg = pos ? ui : uo;
    const std::size_t o_res = pos ? oo : oi, o_arg = pos ? oi : oo;
    std::vector<std::uint32_t> r1(cols, 0), r2(cols, 0);
    r1[col(u_res)] = (r1[col(u_res)] + 1) % p;
    r1[col(u_arg)] = (r1[col(u_arg)] + neg(f.a0)) % p;
    r1[col(o_arg)] = (r1[col(o_arg)] + neg(f.a1)) % p;
    r1[cols - 1] = f.a2 % p;
    r2[col(o_res)] = (r2[col(o_res)] + 1) % p;
    r2[col(o_arg)] = (r2[col(o_arg)] + neg(f.b0)) % p;
    r2[col(u_arg)] = (r2[col(u_arg)] + neg(f.b1)) % p;
    r2[cols - 1] = f.b2 % p;
    rows.push_back(std::move(r1));
    rows.push_back(std::move(r2));
  }

  auto inv = [&](std::uint32_t a) {
    std::uint32_t r = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = static_cast<std::uint32_t>((std::uint64_t{r} * base) % p);
      base = static_cast<std::uint32_t>((std::uint64_t{base} * base) % p);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < interior && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const std::uint32_t s = inv(rows[rank][c]);
    for (auto& v : rows[rank]) v = static_cast<std::uint32_t>((std::uint64_t{v} * s) % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint32_t factor = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + std::uint64_t{p - factor} * rows[rank][k]) % p);
      }
    }
    ++rank;
  }
  std::uint64_t per_solution = 1;
  for (std::size_t i = rank; i < interior; ++i) per_solution *= p;

  ColoringMatrix out(m);
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t b = 0; b < p; ++b) {
      bool ok = true;
      for (std::size_t r = rank; r < rows.size() && ok; ++r) {
        const std::uint64_t lhs = std::uint64_t{rows[r][interior]} * a + std::uint64_t{rows[r][interior + 1]} * b;
        ok = lhs % p == rows[r][cols - 1];
      }
      if (ok) out.at(a, b) = per_solution;
    }
  }
  return out;
}

}  // namespace

ColoringMatrix coloring_matrix_sweep(const GaussDiagram& d, const FiniteBiquandle& x) {
  require_valid(x);
  const std::size_t m = x.order();
  if (d.empty()) return ColoringMatrix::identity(m);

  // State key: current semiarc colour, then (guessed incoming colour of the
  // other strand, its outgoing colour) for every open chord in opening order.
  // Values: counts by incoming end colour.
  using Counts = std::vector<std::uint64_t>;
  std::unordered_map<std::string, Counts> states, next;
  for (std::size_t a = 0; a < m; ++a) {
    Counts c(m, 0);
    c[a] = 1;
    states.emplace(std::string(1, static_cast<char>(a)), std::move(c));
  }
  std::vector<std::uint32_t> open;
  auto add = [&](std::string key, const Counts& c) {
    auto [it, fresh] = next.try_emplace(std::move(key), c);
    if (!fresh)
      for (std::size_t i = 0; i < m; ++i) it->second[i] += c[i];
  };

  for (std::size_t pos = 1; pos <= d.length(); ++pos) {
    const Endpoint& e = d.at(pos);
    const int sign = d.chords()[e.chord].sign;
    const auto slot = std::find(open.begin(), open.end(), e.chord);
    next.clear();
    if (slot == open.end()) {
      for (const auto& [key, counts] : states) {
        const auto cur = static_cast<std::uint8_t>(key[0]);
        for (std::size_t g = 0; g < m; ++g) {
          const auto other = static_cast<std::uint8_t>(g);
          const auto [u_out, o_out] = e.role == Role::Under ? x.cross(sign, cur, other) : x.cross(sign, other, cur);
          std::string k = key;
          k[0] = static_cast<char>(e.role == Role::Under ? u_out : o_out);
          k.push_back(static_cast<char>(other));
          k.push_back(static_cast<char>(e.role == Role::Under ? o_out : u_out));
          add(std::move(k), counts);
        }
      }
      open.push_back(e.chord);
    } else {
      const std::size_t idx = static_cast<std::size_t>(slot - open.begin());
      for (const auto& [key, counts] : states) {
        if (key[0] != key[1 + 2 * idx]) continue;
        std::string k = key;
        k[0] = key[2 + 2 * idx];
        k.erase(1 + 2 * idx, 2);
        add(std::move(k), counts);
      }
      open.erase(slot);
    }
    std::swap(states, next);
  }
  ColoringMatrix out(m);
  for (const auto& [key, counts] : states) {
    const auto b = static_cast<std::size_t>(static_cast<std::uint8_t>(key[0]));
    for (std::size_t a = 0; a < m; ++a) out.at(a, b) += counts[a];
  }
  return out;
}

ColoringMatrix coloring_matrix(const GaussDiagram& d, const FiniteBiquandle& x) {
  require_valid(x);
  if (d.empty()) return ColoringMatrix::identity(x.order());
  if (x.affine()) return coloring_matrix_affine(d, x);
  return coloring_matrix_sweep(d, x);
}

std::optional<CommutatorWitness> commutator_witness(const ColoringMatrix& ma, const ColoringMatrix& mb) {
  const ColoringMatrix ab = ma * mb, ba = mb * ma;
  const std::size_t m = ma.order();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (ab.at(a, b) != ba.at(a, b)) return CommutatorWitness{a, b, ab.at(a, b), ba.at(a, b)};
  return std::nullopt;
}

std::optional<CommutatorWitness> commutator_witness(const GaussDiagram& a, const GaussDiagram& b,
                                                    const FiniteBiquandle& x) {
  return commutator_witness(coloring_matrix(a, x), coloring_matrix(b, x));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::pair<Table, Table> relabel(std::size_t m, const Table& up, const Table& down, const std::vector<std::size_t>& s) {
  Table u(m * m), d(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      u[s[x] * m + s[y]] = static_cast<std::uint8_t>(s[up[x * m + y]]);
      d[s[x] * m + s[y]] = static_cast<std::uint8_t>(s[down[x * m + y]]);
    }
  return {u, d};
}

std::pair<Table, Table> canonical_tables(std::size_t m, const Table& up, const Table& down) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::pair<Table, Table> best{up, down};
  do {
    auto cand = relabel(m, up, down, perm);
    if (cand < best) best = std::move(cand);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

class Enumerator {
public:
  explicit Enumerator(std::size_t m) : m_(m), up_(m * m, kUnset), down_(m * m, kUnset) {
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
          if (std::max(x, y) == k) cells_.push_back(x * m + y);
    up_used_.assign(m * m, false);
    down_used_.assign(m * m, false);
    std::vector<std::uint8_t> p(m);
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    while (std::next_permutation(p.begin(), p.end())) {
      std::vector<std::uint8_t> inv(m);
      for (std::size_t i = 0; i < m; ++i) inv[p[i]] = static_cast<std::uint8_t>(i);
      perms_.push_back({p, inv});
    }
  }

  std::vector<std::pair<Table, Table>> run() {
    search(0, false);
    return std::move(found_);
  }

private:
  static constexpr std::uint8_t kUnset = 0xff;

  // up_used_[y*m+v]: some x already has up[x][y] = v. Same for down.
  void search(std::size_t idx, bool in_down) {
    if (idx == cells_.size()) {
      if (compute_violations(m_, StructureKind::Biquandle, up_, down_).empty()) found_.emplace_back(up_, down_);
      return;
    }
    const std::size_t cell = cells_[idx];
    const std::size_t y = cell % m_;
    for (std::size_t v = 0; v < m_; ++v) {
      if (!in_down) {
        if (up_used_[y * m_ + v]) continue;
        up_[cell] = static_cast<std::uint8_t>(v);
        up_used_[y * m_ + v] = true;
        if (kinks_ok() && consistent() && least_relabelling()) search(idx, true);
        up_used_[y * m_ + v] = false;
        up_[cell] = kUnset;
      } else {
        if (down_used_[y * m_ + v]) continue;
        down_[cell] = static_cast<std::uint8_t>(v);
        down_used_[y * m_ + v] = true;
        if (pair_ok() && kinks_ok() && consistent() && least_relabelling()) search(idx + 1, false);
        down_used_[y * m_ + v] = false;
        down_[cell] = kUnset;
      }
    }
  }

  // S(a, b) = (O(b, a), U(a, b)) must be injective over all assigned pairs.
  bool pair_ok() const {
    std::vector<bool> seen(m_ * m_, false);
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = 0; b < m_; ++b) {
        const std::uint8_t o = down_[b * m_ + a], u = up_[a * m_ + b];
        if (o == kUnset || u == kUnset) continue;
        const std::size_t k = o * m_ + u;
        if (seen[k]) return false;
        seen[k] = true;
      }
    return true;
  }

  // Orderly generation. Tables are compared as the sequence up[c], down[c]
  // over cells_ in order. If some relabelling of the assigned prefix is
  // already smaller, every completion has a smaller isomorphic copy and the
  // branch is dropped; the least member of each class always survives.
  bool least_relabelling() const {
    for (const auto& [p, inv] : perms_) {
      for (std::size_t cell : cells_) {
        const std::size_t from = inv[cell / m_] * m_ + inv[cell % m_];
        const int cmp = compare_entry(up_, cell, from, p);
        if (cmp < 0) return false;
        if (cmp > 0) break;
        const int cmp2 = compare_entry(down_, cell, from, p);
        if (cmp2 < 0) return false;
        if (cmp2 > 0) break;
      }
    }
    return true;
  }

  // -1: the relabelled entry is smaller; 1: larger or undecided; 0: equal.
  static int compare_entry(const Table& t, std::size_t cell, std::size_t from, const std::vector<std::uint8_t>& p) {
    const std::uint8_t own = t[cell], src = t[from];
    if (own == kUnset || src == kUnset) return 1;
    const std::uint8_t moved = p[src];
    return moved < own ? -1 : moved > own ? 1 : 0;
  }

  // Positive kinks on a partial table: for every colour a there is at most
  // one loop colour c with O(a, c) = c, and it must satisfy U(c, a) = a; the
  // same with the roles of the tables exchanged. Completeness of the count is
  // left to the final axiom check.
  bool kinks_ok() const {
    for (std::size_t a = 0; a < m_; ++a) {
      std::size_t over_loops = 0, under_loops = 0;
      for (std::size_t c = 0; c < m_; ++c) {
        if (down_[a * m_ + c] == c) {
          const std::uint8_t exit = up_[c * m_ + a];
          if (++over_loops > 1 || (exit != kUnset && exit != a)) return false;
        }
        if (up_[a * m_ + c] == c) {
          const std::uint8_t exit = down_[c * m_ + a];
          if (++under_loops > 1 || (exit != kUnset && exit != a)) return false;
        }
      }
    }
    return true;
  }

  bool consistent() const {
    auto U = [&](std::uint8_t a, std::uint8_t b) -> std::uint8_t {
      return (a == kUnset || b == kUnset) ? kUnset : up_[a * m_ + b];
    };
    auto O = [&](std::uint8_t a, std::uint8_t b) -> std::uint8_t {
      return (a == kUnset || b == kUnset) ? kUnset : down_[a * m_ + b];
    };
    auto clash = [](std::uint8_t l, std::uint8_t r) { return l != kUnset && r != kUnset && l != r; };
    for (std::uint8_t x = 0; x < m_; ++x)
      for (std::uint8_t y = 0; y < m_; ++y)
        for (std::uint8_t z = 0; z < m_; ++z) {
          if (clash(U(U(z, O(x, y)), U(y, x)), U(U(z, y), x))) return false;
          if (clash(O(U(y, x), U(z, O(x, y))), U(O(y, z), O(x, U(z, y))))) return false;
          if (clash(O(O(x, y), z), O(O(x, U(z, y)), O(y, z)))) return false;
        }
    return true;
  }

  std::size_t m_;
  Table up_, down_;
  std::vector<std::size_t> cells_;
  std::vector<bool> up_used_, down_used_;
  std::vector<std::pair<Table, Table>> found_;
  std::vector<std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>> perms_;  // (p, p^-1), identity excluded
};

}  // namespace

const std::vector<FiniteBiquandle>& enumerate_biquandles(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<FiniteBiquandle>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  std::vector<std::pair<Table, Table>> classes;
  for (const auto& [up, down] : Enumerator(m).run()) classes.push_back(canonical_tables(m, up, down));
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::vector<FiniteBiquandle> out;
  out.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto& [up, down] = classes[i];
    bool quandle = true;
    for (std::size_t o = 0; o < m && quandle; ++o)
      for (std::size_t u = 0; u < m && quandle; ++u) quandle = down[o * m + u] == o;
    const std::string name = "biquandle:" + std::to_string(m) + "#" + std::to_string(i);
    out.emplace_back(m, quandle ? StructureKind::Quandle : StructureKind::Biquandle, std::move(up), std::move(down), name);
  }
  return cache.emplace(m, std::move(out)).first->second;
}

std::vector<FiniteBiquandle> structure_catalog(std::size_t max_order) {
  std::vector<FiniteBiquandle> out;
  for (std::size_t m = 2; m <= max_order; ++m) {
    const auto& level = enumerate_biquandles(m);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

const std::vector<FiniteBiquandle>& default_catalog() {
  static const std::vector<FiniteBiquandle> catalog = [] {
    std::vector<FiniteBiquandle> c{FiniteBiquandle::dihedral(3), FiniteBiquandle::dihedral(5)};
    const auto rest = structure_catalog(3);
    c.insert(c.end(), rest.begin(), rest.end());
    return c;
  }();
  return catalog;
}

// ---------------------------------------------------------------------------
// Text formats

FiniteBiquandle parse_structure_text(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  auto fail = [](const std::string& why) { return Error(ErrorCode::InvalidStructure, "structure file: " + why); };
  std::size_t m = 0;
  std::string kind_word;
  if (!(in >> m >> kind_word) || m == 0 || m > 255) throw fail("first line must be 'm kind' with 1 <= m <= 255");
  StructureKind kind;
  if (kind_word == "quandle") {
    kind = StructureKind::Quandle;
  } else if (kind_word == "biquandle") {
    kind = StructureKind::Biquandle;
  } else {
    throw fail("kind must be quandle or biquandle");
  }
  auto read_table = [&](const char* what) {
    Table t(m * m);
    for (auto& v : t) {
      long long x;
      if (!(in >> x)) throw fail(std::string("truncated ") + what + " table");
      if (x < 0 || x >= static_cast<long long>(m)) throw fail(std::string(what) + " entry out of range");
      v = static_cast<std::uint8_t>(x);
    }
    return t;
  };
  Table up = read_table("up");
  Table down = kind == StructureKind::Biquandle ? read_table("down") : Table{};
  std::string extra;
  if (in >> extra) throw fail("trailing data");
  return FiniteBiquandle(m, kind, std::move(up), std::move(down), std::move(name));
}

std::string format_structure_text(const FiniteBiquandle& x) {
  std::ostringstream os;
  const std::size_t m = x.order();
  os << m << (x.kind() == StructureKind::Quandle ? " quandle\n" : " biquandle\n");
  auto dump = [&](const Table& t) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) os << (c ? " " : "") << int(t[r * m + c]);
      os << "\n";
    }
  };
  dump(x.up_table());
  if (x.kind() == StructureKind::Biquandle) dump(x.down_table());
  return os.str();
}

FiniteBiquandle parse_structure_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, "structure spec needs 'kind:arg'");
  const std::string_view head = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (head == "file") {
    std::ifstream in{std::string(arg)};
    if (!in) throw Error(ErrorCode::Io, "cannot open structure file " + std::string(arg));
    std::stringstream buf;
    buf << in.rdbuf();
    auto x = parse_structure_text(buf.str(), std::string(spec));
    if (!x.valid()) throw Error(ErrorCode::InvalidStructure, std::string(spec) + " violates " + x.violations().front().axiom);
    return x;
  }
  auto number = [&](std::string_view digits) {
    std::size_t v = 0;
    if (digits.empty()) throw Error(ErrorCode::InvalidArgument, "bad structure spec " + std::string(spec));
    for (char c : digits) {
      if (c < '0' || c > '9') throw Error(ErrorCode::InvalidArgument, "bad structure spec " + std::string(spec));
      v = v * 10 + static_cast<std::size_t>(c - '0');
      if (v > 100000) throw Error(ErrorCode::InvalidArgument, "structure spec number too large");
    }
    return v;
  };
  if (head == "biquandle") {
    // biquandle:M#K is entry K of the enumerated structures of order M.
    const auto hash = arg.find('#');
    if (hash == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, "expected biquandle:M#K");
    const std::size_t m = number(arg.substr(0, hash)), k = number(arg.substr(hash + 1));
    if (m < 2 || m > 5) throw Error(ErrorCode::InvalidArgument, "enumerated structures exist for orders 2..5");
    const auto& level = enumerate_biquandles(m);
    if (k >= level.size()) throw Error(ErrorCode::InvalidArgument, "no enumerated structure " + std::string(spec));
    return level[k];
  }
  const std::size_t m = number(arg);
  if (m == 0 || m > 255) throw Error(ErrorCode::InvalidArgument, "structure order must be in 1..255");
  if (head == "dihedral") return FiniteBiquandle::dihedral(m);
  if (head == "trivial") return FiniteBiquandle::trivial(m);
  throw Error(ErrorCode::InvalidArgument, "unknown structure kind '" + std::string(head) + "'");
}

}  // namespace lvk
