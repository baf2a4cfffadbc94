#include "symdyn/nda.hpp"

#include "symdyn/equality_patterns.hpp"
#include "symdyn/errors.hpp"

namespace symdyn {

std::string to_string(const PhasePoint& p) { return "(" + to_string(p.y1) + ", " + to_string(p.y2) + ")"; }

PhasePoint encode_tape(const DottedSequence& s, const Encoding& encoding) {
  if (!encoding.input.blank_pinned() || !encoding.stack.blank_pinned()) {
    throw DomainError("encode_tape: encoding '" + encoding.name + "' must pin the blank to 0");
  }
  return {godel_encode(s.input, encoding.input), godel_encode(s.stack, encoding.stack)};
}

bool is_power_of(const Rational& x, int m) {
  if (x <= 0) return false;
  auto pure_power = [m](BigInt v) {
    while (v > 1 && v % m == 0) v /= m;
    return v == 1;
  };
  return (numerator(x) == 1 || denominator(x) == 1) && pure_power(numerator(x)) && pure_power(denominator(x));
}

Nda::Nda(Dod dod, Encoding encoding, std::vector<NdaCell> cells)
    : dod_(dod), encoding_(std::move(encoding)), cells_(std::move(cells)) {
  if (!encoding_.input.blank_pinned() || !encoding_.stack.blank_pinned()) {
    throw BuildError("nda: encoding '" + encoding_.name + "' must pin the blank to 0");
  }
  input_cells_ = checked_power(m_in(), dod_.r, kDefaultMaxCells);
  stack_cells_ = checked_power(m_st(), dod_.l, kDefaultMaxCells);
  if (cells_.size() != input_cells_ * stack_cells_) throw BuildError("nda: cell table is incomplete");

  const Rational in_width = power(m_in(), -dod_.r);
  const Rational st_width = power(m_st(), -dod_.l);
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    const NdaCell& c = cells_[k];
    auto where = [&] { return "nda cell (" + std::to_string(c.i) + "," + std::to_string(c.j) + "): "; };
    if (c.i * stack_cells_ + c.j != k) throw BuildError(where() + "out of order");
    Interval in{in_width * static_cast<long long>(c.i), in_width * static_cast<long long>(c.i + 1)};
    Interval st{st_width * static_cast<long long>(c.j), st_width * static_cast<long long>(c.j + 1)};
    if (!(c.input_interval == in) || !(c.stack_interval == st)) throw BuildError(where() + "interval mismatch");
    if (!is_power_of(c.lambda1, m_in()) || !is_power_of(c.lambda2, m_st())) {
      throw BuildError(where() + "λ is not a power of the alphabet size");
    }
    // λ > 0, so the image of [lo, hi) is [a + λ lo, a + λ hi)
    auto inside = [](const Rational& a, const Rational& lambda, const Interval& iv) {
      return a + lambda * iv.lo >= 0 && a + lambda * iv.hi <= 1;
    };
    if (!inside(c.a1, c.lambda1, in) || !inside(c.a2, c.lambda2, st)) {
      throw BuildError(where() + "image leaves the unit square");
    }
  }
}

CellLocation Nda::decode_point(const PhasePoint& p) const {
  if (p.y1 < 0 || p.y1 >= 1 || p.y2 < 0 || p.y2 >= 1) {
    throw DomainError("decode_point: " + to_string(p) + " is outside [0,1)^2");
  }
  CellLocation loc;
  loc.input_digits = godel_decode(p.y1, m_in(), dod_.r);
  loc.stack_digits = godel_decode(p.y2, m_st(), dod_.l);
  loc.i = digits_to_index(loc.input_digits, m_in());
  loc.j = digits_to_index(loc.stack_digits, m_st());
  return loc;
}

PhasePoint Nda::step(const PhasePoint& p) const {
  CellLocation loc = decode_point(p);
  const NdaCell& c = cell(loc.i, loc.j);
  PhasePoint next = c.apply(p);
  if (next.y1 < 0 || next.y1 >= 1 || next.y2 < 0 || next.y2 >= 1) {
    throw ConsistencyError("nda_step: cell (" + std::to_string(loc.i) + "," + std::to_string(loc.j) + ") maps " +
                           to_string(p) + " to " + to_string(next) + ", outside the unit square");
  }
  return next;
}

PhasePoint nda_step(const Nda& nda, const PhasePoint& p) { return nda.step(p); }

std::vector<PhasePoint> nda_orbit(const Nda& nda, const PhasePoint& p, int steps) {
  std::vector<PhasePoint> out{p};
  for (int t = 0; t < steps; ++t) out.push_back(nda.step(out.back()));
  return out;
}

namespace {

struct Tails {
  Word stack;
  Word input;
};

DottedSequence with_tails(const Word& stack_window, const Word& input_window, const Tails& tails) {
  Word stack = stack_window, input = input_window;
  stack.insert(stack.end(), tails.stack.begin(), tails.stack.end());
  input.insert(input.end(), tails.input.begin(), tails.input.end());
  return DottedSequence(std::move(stack), std::move(input));
}

std::vector<Word> tail_family(const Ordering& ord) {
  const Symbol& lo = ord.symbol(1);
  const Symbol& hi = ord.symbol(ord.m() - 1);
  return {{}, {lo}, {hi}, {lo, hi}, {hi, lo, lo}};
}

}  // namespace

Nda from_versatile_shift(const VersatileShift& vs, const Encoding& encoding) {
  if (!(encoding.input.alphabet() == vs.input_alphabet()) || !(encoding.stack.alphabet() == vs.stack_alphabet())) {
    throw BuildError("nda: encoding '" + encoding.name + "' does not match the machine's alphabets");
  }
  if (!encoding.input.blank_pinned() || !encoding.stack.blank_pinned()) {
    throw BuildError("nda: encoding '" + encoding.name + "' must pin the blank to 0");
  }
  const Dod dod = vs.dod();
  const int m_in = encoding.input.m();
  const int m_st = encoding.stack.m();
  const std::size_t n_in = checked_power(m_in, dod.r, kDefaultMaxCells);
  const std::size_t n_st = checked_power(m_st, dod.l, kDefaultMaxCells);
  const Rational in_width = power(m_in, -dod.r);
  const Rational st_width = power(m_st, -dod.l);
  const auto stack_tails = tail_family(encoding.stack);
  const auto input_tails = tail_family(encoding.input);

  std::vector<NdaCell> cells;
  cells.reserve(n_in * n_st);
  for (std::size_t i = 0; i < n_in; ++i) {
    for (std::size_t j = 0; j < n_st; ++j) {
      NdaCell c;
      c.i = i;
      c.j = j;
      c.input_window = index_to_digits(i, m_in, dod.r);
      c.stack_window = index_to_digits(j, m_st, dod.l);
      c.input_interval = {in_width * static_cast<long long>(i), in_width * static_cast<long long>(i + 1)};
      c.stack_interval = {st_width * static_cast<long long>(j), st_width * static_cast<long long>(j + 1)};
      const Word stack_window = encoding.stack.word(c.stack_window);
      const Word input_window = encoding.input.word(c.input_window);

      auto run = [&](const Tails& tails) {
        DottedSequence s = with_tails(stack_window, input_window, tails);
        StepResult r = vs_step(vs, s);
        return std::pair{encode_tape(s, encoding), r};
      };
      auto [p_a, r_a] = run({stack_tails[0], input_tails[0]});
      auto [p_b, r_b] = run({stack_tails[1], input_tails[1]});
      if (r_a.rule != r_b.rule) throw BuildError("nda: rule choice depends on symbols outside the window");
      c.rule = r_a.rule;
      c.label = r_a.rule ? vs.rules()[*r_a.rule].label : std::string(kHaltLabel);

      const PhasePoint img_a = encode_tape(r_a.next, encoding);
      const PhasePoint img_b = encode_tape(r_b.next, encoding);
      c.lambda1 = (img_b.y1 - img_a.y1) / (p_b.y1 - p_a.y1);
      c.lambda2 = (img_b.y2 - img_a.y2) / (p_b.y2 - p_a.y2);
      c.a1 = img_a.y1 - c.lambda1 * p_a.y1;
      c.a2 = img_a.y2 - c.lambda2 * p_a.y2;

      auto non_affine = [&](const std::string& why) {
        std::string rule = c.rule ? "rule '" + format_rule(vs.rules()[*c.rule]) + "'" : std::string("halting cell");
        return BuildError("nda: " + rule + " is not affine on cell (" + std::to_string(i) + "," +
                          std::to_string(j) + "): " + why);
      };
      if (!is_power_of(c.lambda1, m_in) || !is_power_of(c.lambda2, m_st)) throw non_affine("λ is not a power of m");
      for (const auto& st : stack_tails) {
        for (const auto& in : input_tails) {
          auto [p, r] = run({st, in});
          if (r.rule != c.rule) throw non_affine("rule choice depends on the tail");
          if (!(encode_tape(r.next, encoding) == c.apply(p))) {
            throw non_affine("tape " + format_dotted(with_tails(stack_window, input_window, {st, in})) +
                             " does not follow the solved map");
          }
        }
      }
      cells.push_back(std::move(c));
    }
  }
  return Nda(dod, encoding, std::move(cells));
}

}  // namespace symdyn
