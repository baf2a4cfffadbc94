#pragma once

// Patterns of equality and the recoding orbits they classify.
//
// Two digit words of the same length are related by a recoding (a
// permutation applied positionwise) exactly when their positions split into
// the same blocks of equal digits.  With the blank pinned to 0 only the
// permutations fixing 0 are allowed, so the block holding the 0 digits must
// also coincide.

#include "symdyn/symbol_space.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace symdyn {

struct EqualityPattern {
  // labels[k] is the block of position k; blocks are numbered by first
  // occurrence, which is the same as sorting blocks by smallest element.
  std::vector<int> labels;
  bool blank_pinned = false;
  // Block whose positions carry digit 0.  Only meaningful when
  // blank_pinned; nullopt then means no position is 0.
  std::optional<int> zero_block;

  std::size_t length() const { return labels.size(); }
  int block_count() const;
  /// Blocks as 1-based position sets, sorted by smallest element.
  std::vector<std::vector<int>> blocks() const;

  auto operator<=>(const EqualityPattern&) const = default;
};

EqualityPattern pattern_of(const Digits& word, bool blank_pinned = false);
EqualityPattern pattern_of(const Word& word);

/// e.g. "{{1,2,3,6},{4,7},{5,8}}"; pinned patterns append " zero:<block>"
/// or " zero:absent".
std::string format_pattern(const EqualityPattern& pattern);

/// True iff some permitted recoding maps w to u.
bool same_orbit(const Digits& w, const Digits& u, int m, bool blank_pinned);

/// {recode(w, π)} over all permitted π, sorted.
std::vector<Digits> orbit(const Digits& w, int m, bool blank_pinned);

enum class PartitionMode {
  Joint,    // one permutation shared by both sides of the dot
  Product,  // independent permutations per side
};

std::string to_string(PartitionMode mode);
PartitionMode parse_partition_mode(std::string_view text);

inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 22;

/// Class assignment for the cylinder cells of the interval (r == 0) or of
/// the unit square.  Cells are numbered left_index * m_right^r + right_index,
/// where the indices read the corner digits as base-m numbers.
struct PatternClassMap {
  int m_left = 0;
  int l = 0;
  int m_right = 0;
  int r = 0;
  PartitionMode mode = PartitionMode::Product;
  bool blank_pinned = false;
  std::size_t left_cells = 0;   // m_left^l
  std::size_t right_cells = 1;  // m_right^r, 1 for the interval
  std::vector<int> class_of;
  int class_count = 0;

  std::size_t cell_count() const { return class_of.size(); }
  std::size_t cell_index(std::size_t left_index, std::size_t right_index) const;
  Digits left_digits(std::size_t cell) const;
  Digits right_digits(std::size_t cell) const;
  /// Corner of the cell: x = left_index / m_left^l, y = right_index / m_right^r.
  Rational left_corner(std::size_t cell) const;
  Rational right_corner(std::size_t cell) const;
  std::vector<std::size_t> members(int class_id) const;
};

/// Cells [k/m^l, (k+1)/m^l) of the interval classified by the pattern of
/// their l corner digits.
PatternClassMap interval_partition(int m, int l, bool blank_pinned, std::size_t max_cells = kDefaultMaxCells);

/// Rectangles [i/m_left^l, ..) x [j/m_right^r, ..).  Joint mode requires
/// m_left == m_right and classifies by the pattern of the concatenated
/// l + r digit word; product mode by the pair of per-side patterns.
PatternClassMap square_partition(int m_left, int l, int m_right, int r, PartitionMode mode, bool blank_pinned,
                                 std::size_t max_cells = kDefaultMaxCells);

inline PatternClassMap square_partition(int m, int l, int r, PartitionMode mode, bool blank_pinned,
                                        std::size_t max_cells = kDefaultMaxCells) {
  return square_partition(m, l, m, r, mode, blank_pinned, max_cells);
}

/// m^k with overflow and bound checks; throws ResourceLimit above `bound`.
std::size_t checked_power(int m, int k, std::size_t bound);

/// Base-m digits of `index`, most significant first, exactly `length` of them.
Digits index_to_digits(std::size_t index, int m, int length);
std::size_t digits_to_index(const Digits& digits, int m);

}  // namespace symdyn
