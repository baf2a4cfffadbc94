#include "symdyn/symbol_space.hpp"

#include "symdyn/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace symdyn {

Alphabet::Alphabet(std::vector<Symbol> symbols, std::optional<Symbol> blank)
    : symbols_(std::move(symbols)), blank_(std::move(blank)) {
  if (symbols_.size() < 2) throw DomainError("alphabet needs at least two symbols");
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw DomainError("alphabet: empty symbol");
    if (!seen.insert(s).second) throw DomainError("alphabet: duplicate symbol '" + s + "'");
  }
  if (blank_ && !contains(*blank_)) throw DomainError("alphabet: blank '" + *blank_ + "' is not a member");
}

Alphabet Alphabet::with_blank(const std::vector<Symbol>& symbols) {
  std::vector<Symbol> all;
  all.reserve(symbols.size() + 1);
  all.emplace_back(kBlank);
  all.insert(all.end(), symbols.begin(), symbols.end());
  return Alphabet(std::move(all), Symbol(kBlank));
}

bool Alphabet::contains(std::string_view symbol) const {
  return std::find(symbols_.begin(), symbols_.end(), symbol) != symbols_.end();
}

Ordering::Ordering(Alphabet alphabet, const std::map<Symbol, Digit>& digits, bool blank_pinned)
    : alphabet_(std::move(alphabet)), blank_pinned_(blank_pinned) {
  const int m = alphabet_.size();
  if (static_cast<int>(digits.size()) != m) throw DomainError("ordering: must assign every symbol exactly once");
  to_symbol_.assign(m, Symbol{});
  for (const auto& [symbol, d] : digits) {
    if (!alphabet_.contains(symbol)) throw DomainError("ordering: '" + symbol + "' is not in the alphabet");
    if (d < 0 || d >= m) throw DomainError("ordering: digit out of range for '" + symbol + "'");
    if (!to_symbol_[d].empty()) throw DomainError("ordering: digit " + std::to_string(d) + " assigned twice");
    to_symbol_[d] = symbol;
    to_digit_.emplace(symbol, d);
  }
  if (blank_pinned_) {
    if (!alphabet_.blank()) throw DomainError("ordering: blank-pinned ordering needs an alphabet with a blank");
    if (to_digit_.at(*alphabet_.blank()) != 0) throw DomainError("ordering: blank must be sent to 0");
  }
}

Ordering Ordering::identity(const Alphabet& alphabet) {
  std::map<Symbol, Digit> digits;
  for (int i = 0; i < alphabet.size(); ++i) digits.emplace(alphabet.symbols()[i], i);
  bool pinned = alphabet.blank() && alphabet.symbols().front() == *alphabet.blank();
  return Ordering(alphabet, digits, pinned);
}

Digit Ordering::digit(std::string_view symbol) const {
  auto it = to_digit_.find(symbol);
  if (it == to_digit_.end()) throw DomainError("symbol '" + std::string(symbol) + "' is not in the alphabet");
  return it->second;
}

const Symbol& Ordering::symbol(Digit d) const {
  if (d < 0 || d >= m()) throw DomainError("digit " + std::to_string(d) + " out of range");
  return to_symbol_[d];
}

Digits Ordering::digits(const Word& word) const {
  Digits out;
  out.reserve(word.size());
  for (const auto& s : word) out.push_back(digit(s));
  return out;
}

Word Ordering::word(const Digits& ds) const {
  Word out;
  out.reserve(ds.size());
  for (Digit d : ds) out.push_back(symbol(d));
  return out;
}

const Symbol& OneSidedSequence::at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  if (tail.empty()) {
    if (!alphabet.blank()) throw UnsupportedInput("sequence has an implicit blank tail but no blank symbol");
    return *alphabet.blank();
  }
  return tail[(k - prefix.size()) % tail.size()];
}

Rational godel_encode_digits(const Digits& digits, int m) {
  if (m < 2) throw DomainError("godel_encode: m must be at least 2");
  // Horner from the last digit: ψ = (c_1 + (c_2 + ...)/m)/m
  Rational x = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it < 0 || *it >= m) throw DomainError("godel_encode: digit out of range");
    x = (x + *it) / m;
  }
  return x;
}

Rational godel_encode(const Word& word, const Ordering& ordering) {
  return godel_encode_digits(ordering.digits(word), ordering.m());
}

Rational godel_encode(const OneSidedSequence& sequence, const Ordering& ordering) {
  if (!(sequence.alphabet == ordering.alphabet())) throw DomainError("godel_encode: alphabet mismatch");
  bool blank_tail = std::all_of(sequence.tail.begin(), sequence.tail.end(),
                                [&](const Symbol& s) { return sequence.alphabet.is_blank(s); });
  if (!blank_tail) throw UnsupportedInput("godel_encode: non-blank infinite tail");
  if (!sequence.alphabet.blank() || ordering.digit(*sequence.alphabet.blank()) != 0) {
    throw UnsupportedInput("godel_encode: blank tail does not encode to 0 under this ordering");
  }
  return godel_encode(sequence.prefix, ordering);
}

Digits godel_decode(const Rational& x, int m, int l) {
  if (m < 2) throw DomainError("godel_decode: m must be at least 2");
  if (l < 0) throw DomainError("godel_decode: negative length");
  if (x < 0 || x > 1) throw DomainError("godel_decode: value outside [0, 1]");
  Digits out;
  out.reserve(l);
  Rational rest = x;
  for (int k = 0; k < l; ++k) {
    rest *= m;
    long long c = std::min<long long>(floor_to_int(rest), m - 1);
    out.push_back(static_cast<Digit>(c));
    rest -= c;
  }
  return out;
}

Rational ultrametric(const OneSidedSequence& p, const OneSidedSequence& q) {
  if (!(p.alphabet == q.alphabet)) throw DomainError("ultrametric: sequences over different alphabets");
  const int m = p.alphabet.size();
  auto period = [](const OneSidedSequence& s) { return s.tail.empty() ? std::size_t{1} : s.tail.size(); };
  // Beyond max prefix both sequences are periodic with period lcm(...), so a
  // difference, if any, shows up within one joint period.
  std::size_t horizon = std::max(p.prefix.size(), q.prefix.size()) + std::lcm(period(p), period(q));
  for (std::size_t k = 0; k < horizon; ++k) {
    if (p.at(k) != q.at(k)) return power(m, -static_cast<int>(k));
  }
  return 0;
}

Interval cylinder_digits(const Digits& digits, int m) {
  Rational lo = godel_encode_digits(digits, m);
  return {lo, lo + power(m, -static_cast<int>(digits.size()))};
}

Interval cylinder(const Word& word, const Ordering& ordering) {
  return cylinder_digits(ordering.digits(word), ordering.m());
}

Permutation::Permutation(std::vector<Digit> image) : image_(std::move(image)) {
  std::vector<bool> hit(image_.size(), false);
  for (Digit d : image_) {
    if (d < 0 || d >= size() || hit[d]) throw DomainError("permutation: image is not a bijection");
    hit[d] = true;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<Digit> image(m);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Digit Permutation::operator()(Digit d) const {
  if (d < 0 || d >= size()) throw DomainError("permutation: digit " + std::to_string(d) + " out of range");
  return image_[d];
}

Permutation Permutation::inverse() const {
  std::vector<Digit> inv(image_.size());
  for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw DomainError("compose: permutations of different degree");
  std::vector<Digit> image(inner.size());
  for (int i = 0; i < inner.size(); ++i) image[i] = outer(inner(i));
  return Permutation(std::move(image));
}

std::vector<Permutation> all_permutations(int m, bool fix_zero) {
  if (m < 1) throw DomainError("all_permutations: m must be positive");
  std::vector<Digit> image(m);
  std::iota(image.begin(), image.end(), 0);
  std::vector<Permutation> out;
  auto first = fix_zero ? image.begin() + 1 : image.begin();
  do {
    out.emplace_back(image);
  } while (std::next_permutation(first, image.end()));
  return out;
}

Digits recode(const Digits& digits, const Permutation& pi) {
  Digits out;
  out.reserve(digits.size());
  for (Digit d : digits) out.push_back(pi(d));
  return out;
}

Permutation recoding_between(const Ordering& from, const Ordering& to) {
  if (!(from.alphabet() == to.alphabet())) throw DomainError("recoding_between: orderings over different alphabets");
  std::vector<Digit> image(from.m());
  for (Digit d = 0; d < from.m(); ++d) image[d] = to.digit(from.symbol(d));
  return Permutation(std::move(image));
}

std::string format_digits(const Digits& digits) {
  std::string out;
  for (Digit d : digits) out += std::to_string(d);
  return out;
}

std::string format_word(const Word& word) {
  std::string out;
  for (const auto& s : word) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

}  // namespace symdyn
