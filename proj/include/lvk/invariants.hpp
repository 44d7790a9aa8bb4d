#pragma once

// Invariants of long virtual knots: odd writhe (Gaussian parity) and
// end-coloring count matrices over finite quandles and biquandles.
//
// Coloring convention. Semiarcs run between consecutive passages; semiarc k
// leaves position k (semiarc 0 starts at the incoming end, semiarc 2n
// reaches the outgoing end). At a crossing with incoming under colour u and
// incoming over colour o, a positive crossing produces
//
//     under_out = up(u, o),   over_out = down(o, u)
//
// and a negative crossing is the inverse: (u, o) = that map applied to the
// outgoing colours. For a quandle down(o, u) = o, so colours only change at
// under-passages and semiarc colourings coincide with arc colourings.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvk/gauss.hpp"

namespace lvk {

enum class StructureKind { Quandle, Biquandle };

struct AxiomViolation {
  std::string axiom;
  std::size_t x, y, z;
};

class FiniteBiquandle {
public:
  /// `up` is row-major up[u * m + o], `down` is row-major down[o * m + u].
  /// For a quandle an empty `down` means the identity on the first slot.
  FiniteBiquandle(std::size_t order, StructureKind kind, std::vector<std::uint8_t> up,
                  std::vector<std::uint8_t> down = {}, std::string name = {});

  static FiniteBiquandle dihedral(std::size_t m);
  static FiniteBiquandle trivial(std::size_t m);

  std::size_t order() const noexcept { return m_; }
  StructureKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  std::uint8_t up(std::size_t u, std::size_t o) const noexcept { return up_[u * m_ + o]; }
  std::uint8_t down(std::size_t o, std::size_t u) const noexcept { return down_[o * m_ + u]; }
  const std::vector<std::uint8_t>& up_table() const noexcept { return up_; }
  const std::vector<std::uint8_t>& down_table() const noexcept { return down_; }

  /// Violations found at construction; empty iff all axioms hold.
  const std::vector<AxiomViolation>& violations() const noexcept { return violations_; }
  bool valid() const noexcept { return violations_.empty(); }

  /// Outgoing (under, over) colours at a crossing of the given sign.
  std::pair<std::uint8_t, std::uint8_t> cross(int sign, std::uint8_t under_in, std::uint8_t over_in) const noexcept;

  /// Coefficients when both tables are affine over the prime field Z/m:
  /// up(u,o) = a0 u + a1 o + a2, down(o,u) = b0 o + b1 u + b2.
  struct Affine {
    std::uint32_t a0, a1, a2, b0, b1, b2;
  };
  const std::optional<Affine>& affine() const noexcept { return affine_; }

  friend bool operator==(const FiniteBiquandle& a, const FiniteBiquandle& b) {
    return a.m_ == b.m_ && a.up_ == b.up_ && a.down_ == b.down_;
  }

private:
  std::size_t m_;
  StructureKind kind_;
  std::vector<std::uint8_t> up_, down_;
  std::string name_;
  std::vector<AxiomViolation> violations_;
  std::vector<std::uint8_t> inverse_;  // inverse of the positive crossing map, (u'*m+o') -> u*m+o
  std::optional<Affine> affine_;
};

/// The first witness of each violated axiom; empty iff the structure is valid.
std::vector<AxiomViolation> check_axioms(const FiniteBiquandle& x);

class ColoringMatrix {
public:
  explicit ColoringMatrix(std::size_t m) : m_(m), entries_(m * m, 0) {}
  static ColoringMatrix identity(std::size_t m);

  std::size_t order() const noexcept { return m_; }
  std::uint64_t& at(std::size_t a, std::size_t b) { return entries_[a * m_ + b]; }
  std::uint64_t at(std::size_t a, std::size_t b) const { return entries_[a * m_ + b]; }
  const std::vector<std::uint64_t>& entries() const noexcept { return entries_; }

  friend ColoringMatrix operator*(const ColoringMatrix& x, const ColoringMatrix& y);
  friend bool operator==(const ColoringMatrix&, const ColoringMatrix&) = default;

private:
  std::size_t m_;
  std::vector<std::uint64_t> entries_;
};

/// Sum of signs of chords interleaved with an odd number of other chords.
int odd_writhe(const GaussDiagram& d);

/// Entry [a][b] counts colourings with incoming end colour a and outgoing
/// end colour b. Throws lvk::Error(InvalidStructure).
ColoringMatrix coloring_matrix(const GaussDiagram& d, const FiniteBiquandle& x);

/// The general sweep, bypassing the affine fast path (exposed for testing).
ColoringMatrix coloring_matrix_sweep(const GaussDiagram& d, const FiniteBiquandle& x);

struct CommutatorWitness {
  std::size_t a, b;
  std::uint64_t lhs;  // (M(A) M(B))[a][b]
  std::uint64_t rhs;  // (M(B) M(A))[a][b]
  friend bool operator==(const CommutatorWitness&, const CommutatorWitness&) = default;
};

/// First entry (row-major) where M(A)M(B) and M(B)M(A) differ.
std::optional<CommutatorWitness> commutator_witness(const GaussDiagram& a, const GaussDiagram& b,
                                                    const FiniteBiquandle& x);
std::optional<CommutatorWitness> commutator_witness(const ColoringMatrix& ma, const ColoringMatrix& mb);

/// All biquandles of order m up to isomorphism, in canonical table form and
/// sorted. Quandles (down = identity) are included and tagged as such.
const std::vector<FiniteBiquandle>& enumerate_biquandles(std::size_t m);

/// Every enumerated structure of order 2..max_order.
std::vector<FiniteBiquandle> structure_catalog(std::size_t max_order);

/// dihedral:3, dihedral:5 and the enumerated structures of order 2 and 3.
const std::vector<FiniteBiquandle>& default_catalog();

/// "dihedral:M", "trivial:M", "biquandle:M#K" or "file:PATH". Throws lvk::Error.
FiniteBiquandle parse_structure_spec(std::string_view spec);

/// Text format: "m kind", then m rows of the up table, then (biquandle) m
/// rows of the down table.
FiniteBiquandle parse_structure_text(std::string_view text, std::string name = {});
std::string format_structure_text(const FiniteBiquandle& x);

}  // namespace lvk
