#include "symdyn/equality_patterns.hpp"

#include "symdyn/errors.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace symdyn {

int EqualityPattern::block_count() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::vector<std::vector<int>> EqualityPattern::blocks() const {
  std::vector<std::vector<int>> out(block_count());
  for (std::size_t k = 0; k < labels.size(); ++k) out[labels[k]].push_back(static_cast<int>(k) + 1);
  return out;
}

namespace {

template <class Seq>
std::vector<int> first_occurrence_labels(const Seq& word) {
  std::vector<int> labels;
  labels.reserve(word.size());
  std::map<typename Seq::value_type, int> seen;
  for (const auto& a : word) {
    auto [it, inserted] = seen.emplace(a, static_cast<int>(seen.size()));
    labels.push_back(it->second);
  }
  return labels;
}

}  // namespace

EqualityPattern pattern_of(const Digits& word, bool blank_pinned) {
  EqualityPattern p;
  p.labels = first_occurrence_labels(word);
  p.blank_pinned = blank_pinned;
  if (blank_pinned) {
    auto zero = std::find(word.begin(), word.end(), 0);
    if (zero != word.end()) p.zero_block = p.labels[zero - word.begin()];
  }
  return p;
}

EqualityPattern pattern_of(const Word& word) {
  EqualityPattern p;
  p.labels = first_occurrence_labels(word);
  return p;
}

std::string format_pattern(const EqualityPattern& pattern) {
  std::string out = "{";
  auto blocks = pattern.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += ',';
    out += '{';
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(blocks[b][i]);
    }
    out += '}';
  }
  out += '}';
  if (pattern.blank_pinned) {
    out += " zero:";
    out += pattern.zero_block ? std::to_string(*pattern.zero_block + 1) : std::string("absent");
  }
  return out;
}

namespace {

void check_digits(const Digits& w, int m, const char* what) {
  if (m < 2) throw DomainError(std::string(what) + ": m must be at least 2");
  for (Digit d : w) {
    if (d < 0 || d >= m) throw DomainError(std::string(what) + ": digit " + std::to_string(d) + " out of range");
  }
}

}  // namespace

bool same_orbit(const Digits& w, const Digits& u, int m, bool blank_pinned) {
  check_digits(w, m, "same_orbit");
  check_digits(u, m, "same_orbit");
  return w.size() == u.size() && pattern_of(w, blank_pinned) == pattern_of(u, blank_pinned);
}

std::vector<Digits> orbit(const Digits& w, int m, bool blank_pinned) {
  check_digits(w, m, "orbit");
  // The orbit is the set of injective relabelings of the blocks; in pinned
  // mode the zero block stays 0 and every other block avoids 0.
  const EqualityPattern p = pattern_of(w, blank_pinned);
  const int k = p.block_count();
  std::vector<Digit> assigned(k, -1);
  std::vector<bool> used(m, false);
  std::vector<Digits> out;

  auto emit = [&] {
    Digits word(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) word[i] = assigned[p.labels[i]];
    out.push_back(std::move(word));
  };
  auto assign = [&](auto& self, int block) -> void {
    if (block == k) return emit();
    if (blank_pinned && p.zero_block == block) {
      assigned[block] = 0;
      self(self, block + 1);
      return;
    }
    for (Digit d = blank_pinned ? 1 : 0; d < m; ++d) {
      if (used[d]) continue;
      used[d] = true;
      assigned[block] = d;
      self(self, block + 1);
      used[d] = false;
    }
  };
  if (blank_pinned) used[0] = true;
  assign(assign, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(PartitionMode mode) { return mode == PartitionMode::Joint ? "joint" : "product"; }

PartitionMode parse_partition_mode(std::string_view text) {
  if (text == "joint") return PartitionMode::Joint;
  if (text == "product") return PartitionMode::Product;
  throw DomainError("unknown partition mode '" + std::string(text) + "' (expected joint or product)");
}

std::size_t checked_power(int m, int k, std::size_t bound) {
  if (m < 1 || k < 0) throw DomainError("checked_power: bad arguments");
  std::size_t v = 1;
  for (int i = 0; i < k; ++i) {
    if (v > bound / static_cast<std::size_t>(m)) {
      throw ResourceLimit(std::to_string(m) + "^" + std::to_string(k) + " cells exceed the bound of " +
                          std::to_string(bound));
    }
    v *= static_cast<std::size_t>(m);
  }
  return v;
}

Digits index_to_digits(std::size_t index, int m, int length) {
  Digits out(length);
  for (int k = length - 1; k >= 0; --k) {
    out[k] = static_cast<Digit>(index % m);
    index /= m;
  }
  return out;
}

std::size_t digits_to_index(const Digits& digits, int m) {
  std::size_t index = 0;
  for (Digit d : digits) index = index * m + static_cast<std::size_t>(d);
  return index;
}

std::size_t PatternClassMap::cell_index(std::size_t left_index, std::size_t right_index) const {
  return left_index * right_cells + right_index;
}

Digits PatternClassMap::left_digits(std::size_t cell) const {
  return index_to_digits(cell / right_cells, m_left, l);
}

Digits PatternClassMap::right_digits(std::size_t cell) const {
  if (r == 0) return {};
  return index_to_digits(cell % right_cells, m_right, r);
}

Rational PatternClassMap::left_corner(std::size_t cell) const {
  return Rational(static_cast<long long>(cell / right_cells)) / power(m_left, l);
}

Rational PatternClassMap::right_corner(std::size_t cell) const {
  if (r == 0) return 0;
  return Rational(static_cast<long long>(cell % right_cells)) / power(m_right, r);
}

std::vector<std::size_t> PatternClassMap::members(int class_id) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < class_of.size(); ++c) {
    if (class_of[c] == class_id) out.push_back(c);
  }
  return out;
}

namespace {

// Assigns contiguous ids in order of first appearance while walking cells in
// increasing index, so ids follow the minimal cell of each class.
template <class Key, class KeyOf>
void assign_classes(PatternClassMap& map, std::size_t cells, KeyOf key_of) {
  std::map<Key, int> ids;
  map.class_of.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    auto [it, inserted] = ids.emplace(key_of(c), static_cast<int>(ids.size()));
    map.class_of[c] = it->second;
  }
  map.class_count = static_cast<int>(ids.size());
}

}  // namespace

PatternClassMap interval_partition(int m, int l, bool blank_pinned, std::size_t max_cells) {
  if (m < 2) throw DomainError("interval_partition: m must be at least 2");
  if (l < 1) throw DomainError("interval_partition: l must be at least 1");
  PatternClassMap map;
  map.m_left = m;
  map.l = l;
  map.m_right = m;
  map.r = 0;
  map.blank_pinned = blank_pinned;
  const std::size_t cells = checked_power(m, l, max_cells);
  map.left_cells = cells;
  assign_classes<EqualityPattern>(map, cells,
                                  [&](std::size_t c) { return pattern_of(index_to_digits(c, m, l), blank_pinned); });
  return map;
}

PatternClassMap square_partition(int m_left, int l, int m_right, int r, PartitionMode mode, bool blank_pinned,
                                 std::size_t max_cells) {
  if (m_left < 2 || m_right < 2) throw DomainError("square_partition: alphabet sizes must be at least 2");
  if (l < 1 || r < 1) throw DomainError("square_partition: window lengths must be at least 1");
  if (mode == PartitionMode::Joint && m_left != m_right) {
    throw DomainError("square_partition: joint mode needs the same alphabet size on both sides");
  }
  PatternClassMap map;
  map.m_left = m_left;
  map.l = l;
  map.m_right = m_right;
  map.r = r;
  map.mode = mode;
  map.blank_pinned = blank_pinned;
  const std::size_t left = checked_power(m_left, l, max_cells);
  const std::size_t right = checked_power(m_right, r, max_cells);
  if (left > max_cells / right) throw ResourceLimit("square_partition: cell count exceeds the bound");
  map.left_cells = left;
  map.right_cells = right;

  if (mode == PartitionMode::Joint) {
    assign_classes<EqualityPattern>(map, left * right, [&](std::size_t c) {
      Digits word = index_to_digits(c / right, m_left, l);
      Digits rhs = index_to_digits(c % right, m_right, r);
      word.insert(word.end(), rhs.begin(), rhs.end());
      return pattern_of(word, blank_pinned);
    });
  } else {
    assign_classes<std::pair<EqualityPattern, EqualityPattern>>(map, left * right, [&](std::size_t c) {
      return std::pair{pattern_of(index_to_digits(c / right, m_left, l), blank_pinned),
                       pattern_of(index_to_digits(c % right, m_right, r), blank_pinned)};
    });
  }
  return map;
}

}  // namespace symdyn
