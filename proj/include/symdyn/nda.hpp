#pragma once

// Nonlinear dynamical automata: the unit square cut into rectangles, with an
// affine map  y -> a + diag(λ) y  on each rectangle, obtained by Gödel
// encoding both halves of a versatile shift's tape.
//
// Coordinates: y1 encodes the input (right) side with the input ordering,
// y2 encodes the stack (left) side read outward from the dot with the stack
// ordering.  Cell (i, j) is  [i/m_in^r, (i+1)/m_in^r) x [j/m_st^l, (j+1)/m_st^l).

#include "symdyn/rational.hpp"
#include "symdyn/symbol_space.hpp"
#include "symdyn/versatile_shift.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace symdyn {

struct PhasePoint {
  Rational y1;  // input side
  Rational y2;  // stack side
  bool operator==(const PhasePoint&) const = default;
};

std::string to_string(const PhasePoint& p);

/// A Gödel encoding of a machine: one blank-pinned ordering per tape side.
struct Encoding {
  std::string name;
  Ordering input;
  Ordering stack;
};

/// y1 = ψ_in(input), y2 = ψ_st(stack, top first).
PhasePoint encode_tape(const DottedSequence& s, const Encoding& encoding);

struct NdaCell {
  std::size_t i = 0;  // input axis
  std::size_t j = 0;  // stack axis
  Interval input_interval;
  Interval stack_interval;
  Digits input_window;  // r corner digits
  Digits stack_window;  // l corner digits
  Rational a1, a2;
  Rational lambda1 = 1, lambda2 = 1;
  std::optional<std::size_t> rule;  // nullopt for halting cells
  std::string label;

  PhasePoint apply(const PhasePoint& p) const { return {a1 + lambda1 * p.y1, a2 + lambda2 * p.y2}; }
};

struct CellLocation {
  std::size_t i = 0;
  std::size_t j = 0;
  Digits input_digits;
  Digits stack_digits;
};

inline constexpr std::string_view kHaltLabel = "halt";

class Nda {
 public:
  /// Validates the cell table: complete, cells at their grid positions,
  /// λ components integer powers of the side's alphabet size, and every
  /// cell mapped into the unit square.  Throws BuildError otherwise.
  Nda(Dod dod, Encoding encoding, std::vector<NdaCell> cells);

  Dod dod() const { return dod_; }
  const Encoding& encoding() const { return encoding_; }
  int m_in() const { return encoding_.input.m(); }
  int m_st() const { return encoding_.stack.m(); }
  std::size_t input_cells() const { return input_cells_; }
  std::size_t stack_cells() const { return stack_cells_; }
  const std::vector<NdaCell>& cells() const { return cells_; }
  const NdaCell& cell(std::size_t i, std::size_t j) const { return cells_.at(i * stack_cells_ + j); }

  /// Throws DomainError for points outside [0, 1)^2.
  CellLocation decode_point(const PhasePoint& p) const;

  /// Throws ConsistencyError if the image leaves [0, 1)^2.
  PhasePoint step(const PhasePoint& p) const;

 private:
  Dod dod_;
  Encoding encoding_;
  std::size_t input_cells_ = 1;
  std::size_t stack_cells_ = 1;
  std::vector<NdaCell> cells_;
};

/// Derives each cell's affine map by running the machine on two tapes in
/// the cell that differ beyond the window, solving  ψ' = a + λψ  per
/// coordinate, and confirming the solution on further tails.  Throws
/// BuildError naming the rule when its action is not of that form.
Nda from_versatile_shift(const VersatileShift& vs, const Encoding& encoding);

PhasePoint nda_step(const Nda& nda, const PhasePoint& p);

/// p, Φ(p), ..., Φ^steps(p).
std::vector<PhasePoint> nda_orbit(const Nda& nda, const PhasePoint& p, int steps);

/// True iff x is m^k for some integer k.
bool is_power_of(const Rational& x, int m);

}  // namespace symdyn
