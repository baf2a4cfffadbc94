#pragma once

// Alphabets, orderings, words and their Gödel encodings.
//
// A word w = a_1 ... a_l over an alphabet of size m is mapped by an ordering
// γ to the rational  Σ_k γ(a_k) m^{-k}  in [0, 1).  Infinite sequences are
// represented as a finite prefix followed by a periodic tail; only blank
// tails under an ordering that pins the blank to digit 0 encode to a finite
// sum.

#include "symdyn/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

using Symbol = std::string;
using Word = std::vector<Symbol>;
using Digit = int;
using Digits = std::vector<Digit>;

/// Token used for the blank symbol in files and on the command line.
inline constexpr std::string_view kBlank = "_";

class Alphabet {
 public:
  /// Symbols must be pairwise distinct and at least two; `blank`, when
  /// given, must be one of them.
  explicit Alphabet(std::vector<Symbol> symbols, std::optional<Symbol> blank = std::nullopt);

  /// Alphabet whose first symbol is the blank `_`, followed by `symbols`.
  static Alphabet with_blank(const std::vector<Symbol>& symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const std::optional<Symbol>& blank() const { return blank_; }
  bool contains(std::string_view symbol) const;
  bool is_blank(std::string_view symbol) const { return blank_ && *blank_ == symbol; }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Symbol> symbols_;
  std::optional<Symbol> blank_;
};

/// A bijection alphabet -> {0, ..., m-1}.
class Ordering {
 public:
  /// Throws DomainError unless `digits` is a bijection onto {0..m-1}, or if
  /// `blank_pinned` is set and the blank is missing or not sent to 0.
  Ordering(Alphabet alphabet, const std::map<Symbol, Digit>& digits, bool blank_pinned = false);

  /// The i-th symbol of the alphabet gets digit i.
  static Ordering identity(const Alphabet& alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  int m() const { return alphabet_.size(); }
  bool blank_pinned() const { return blank_pinned_; }

  Digit digit(std::string_view symbol) const;
  const Symbol& symbol(Digit digit) const;

  Digits digits(const Word& word) const;
  Word word(const Digits& digits) const;

 private:
  Alphabet alphabet_;
  std::map<Symbol, Digit, std::less<>> to_digit_;
  std::vector<Symbol> to_symbol_;
  bool blank_pinned_;
};

/// prefix, then `tail` repeated forever.  An empty tail means a blank tail
/// (the alphabet must then have a blank).
struct OneSidedSequence {
  Alphabet alphabet;
  Word prefix;
  Word tail;

  /// Symbol at 0-based position k.
  const Symbol& at(std::size_t k) const;
};

/// Half-open interval [lo, hi).
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x < hi; }
  bool operator==(const Interval&) const = default;
};

Rational godel_encode(const Word& word, const Ordering& ordering);
Rational godel_encode_digits(const Digits& digits, int m);

/// Throws UnsupportedInput when the tail is not blank or the blank is not
/// pinned to 0, since the sum would not terminate.
Rational godel_encode(const OneSidedSequence& sequence, const Ordering& ordering);

/// First l digits of the base-m expansion of x (x in [0, 1]).  For x = 1
/// the expansion 0.(m-1)(m-1)... is used.
Digits godel_decode(const Rational& x, int m, int l);

/// 0 if p == q, otherwise m^{-n} where n is the length of the longest
/// common prefix.
Rational ultrametric(const OneSidedSequence& p, const OneSidedSequence& q);

/// [ψ(w), ψ(w) + m^{-|w|})
Interval cylinder(const Word& word, const Ordering& ordering);
Interval cylinder_digits(const Digits& digits, int m);

/// A permutation of {0, ..., m-1}, stored as its image vector.
class Permutation {
 public:
  /// Throws DomainError unless `image` is a bijection of {0..size-1}.
  explicit Permutation(std::vector<Digit> image);

  static Permutation identity(int m);

  int size() const { return static_cast<int>(image_.size()); }
  Digit operator()(Digit d) const;
  const std::vector<Digit>& image() const { return image_; }
  bool fixes_zero() const { return image_.empty() || image_[0] == 0; }

  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Digit> image_;
};

/// (outer ∘ inner)(d) = outer(inner(d)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// All of S_m, or only the permutations fixing 0 when `fix_zero` is set;
/// lexicographic order of image vectors.
std::vector<Permutation> all_permutations(int m, bool fix_zero);

/// Positionwise substitution d -> π(d).
Digits recode(const Digits& digits, const Permutation& pi);

/// The recoding π with π ∘ from = to.  Both orderings must share an alphabet.
Permutation recoding_between(const Ordering& from, const Ordering& to);

std::string format_digits(const Digits& digits);
std::string format_word(const Word& word);

}  // namespace symdyn
