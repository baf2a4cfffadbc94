#include "symdyn/versatile_shift.hpp"

#include "symdyn/errors.hpp"

#include <algorithm>
#include <sstream>

namespace symdyn {

namespace {

const Symbol& blank_symbol() {
  static const Symbol blank(kBlank);
  return blank;
}

void trim_blanks(Word& side) {
  while (!side.empty() && side.back() == kBlank) side.pop_back();
}

}  // namespace

DottedSequence::DottedSequence(Word stack_top_first, Word input_side)
    : stack(std::move(stack_top_first)), input(std::move(input_side)) {
  trim_blanks(stack);
  trim_blanks(input);
}

DottedSequence DottedSequence::from_tape(const Word& left, const Word& right) {
  return DottedSequence(Word(left.rbegin(), left.rend()), right);
}

Word DottedSequence::left_tape() const { return Word(stack.rbegin(), stack.rend()); }

const Symbol& DottedSequence::left_at(std::size_t k) const { return k < stack.size() ? stack[k] : blank_symbol(); }

const Symbol& DottedSequence::right_at(std::size_t k) const { return k < input.size() ? input[k] : blank_symbol(); }

Word split_words(std::string_view text) {
  Word out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) {
    if (tok == kEmptySide) continue;
    out.push_back(tok);
  }
  return out;
}

std::string format_side(const Word& side) { return side.empty() ? std::string(kEmptySide) : format_word(side); }

std::string format_dotted(const DottedSequence& s) {
  return format_side(s.left_tape()) + " . " + format_side(s.input);
}

DottedSequence parse_dotted(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  auto dot = std::find(tokens.begin(), tokens.end(), ".");
  if (dot == tokens.end() || std::find(dot + 1, tokens.end(), ".") != tokens.end()) {
    throw DomainError("dotted sequence needs exactly one ' . ' separator: '" + std::string(text) + "'");
  }
  Word left, right;
  for (auto it = tokens.begin(); it != dot; ++it) {
    if (*it != kEmptySide) left.push_back(*it);
  }
  for (auto it = dot + 1; it != tokens.end(); ++it) {
    if (*it != kEmptySide) right.push_back(*it);
  }
  return DottedSequence::from_tape(left, right);
}

std::string format_rule(const VsRule& rule, std::string_view variable_name) {
  auto side = [&](const std::vector<Slot>& slots, bool reversed) {
    std::vector<std::string> parts;
    for (const auto& s : slots) parts.push_back(s.is_var() ? std::string(variable_name) : *s.symbol);
    if (reversed) std::reverse(parts.begin(), parts.end());
    return format_side(parts);
  };
  std::string out = side(rule.match.left, true) + " . " + side(rule.match.right, false) + " -> " +
                    side(rule.replace.left, true) + " . " + side(rule.replace.right, false);
  if (rule.shift != 0) out += " shift " + std::to_string(rule.shift);
  return out;
}

VersatileShift::VersatileShift(Alphabet stack_alphabet, Alphabet input_alphabet, Dod dod, std::vector<VsRule> rules)
    : stack_alphabet_(std::move(stack_alphabet)),
      input_alphabet_(std::move(input_alphabet)),
      dod_(dod),
      rules_(std::move(rules)) {
  if (dod_.l < 0 || dod_.r < 0 || dod_.l + dod_.r < 1) throw BuildError("domain of dependence must satisfy l, r >= 0 and l + r >= 1");
  if (!stack_alphabet_.is_blank(kBlank) || !input_alphabet_.is_blank(kBlank)) {
    throw BuildError("versatile shift alphabets must include the blank '_'");
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) validate_rule(rules_[i], i);
  check_determinism();
}

void VersatileShift::validate_rule(const VsRule& rule, std::size_t index) const {
  auto fail = [&](const std::string& why) {
    throw BuildError("rule " + std::to_string(index) + " (" + format_rule(rule) + "): " + why);
  };
  if (static_cast<int>(rule.match.left.size()) > dod_.l || static_cast<int>(rule.match.right.size()) > dod_.r) {
    fail("match window exceeds the domain of dependence");
  }
  bool uses_var = false;
  auto scan = [&](const std::vector<Slot>& slots, const Alphabet& alphabet) {
    for (const auto& s : slots) {
      if (s.is_var()) {
        uses_var = true;
      } else if (!alphabet.contains(*s.symbol)) {
        fail("symbol '" + *s.symbol + "' is not in the alphabet");
      }
    }
  };
  scan(rule.match.left, stack_alphabet_);
  scan(rule.match.right, input_alphabet_);
  scan(rule.replace.left, stack_alphabet_);
  scan(rule.replace.right, input_alphabet_);
  if (uses_var && (rule.match.right.empty() || !rule.match.right.front().is_var())) {
    fail("the wildcard must be bound by the first input symbol of the match");
  }
  if (uses_var) {
    // every value the variable can take must be writable where it is used
    auto writable = [&](const std::vector<Slot>& slots, const Alphabet& alphabet) {
      for (const auto& s : slots) {
        if (!s.is_var()) continue;
        for (const auto& a : input_alphabet_.symbols()) {
          if (a != kBlank && !alphabet.contains(a)) fail("wildcard value '" + a + "' is not a stack symbol");
        }
      }
    };
    writable(rule.replace.left, stack_alphabet_);
  }
}

bool VersatileShift::matches(const VsRule& rule, const DottedSequence& s) const {
  std::optional<Symbol> bound;
  if (!rule.match.right.empty() && rule.match.right.front().is_var()) {
    if (s.right_at(0) == kBlank) return false;
    bound = s.right_at(0);
  }
  auto slot_ok = [&](const Slot& slot, const Symbol& actual) {
    return slot.is_var() ? (bound && *bound == actual) : *slot.symbol == actual;
  };
  for (std::size_t k = 0; k < rule.match.left.size(); ++k) {
    if (!slot_ok(rule.match.left[k], s.left_at(k))) return false;
  }
  for (std::size_t k = 0; k < rule.match.right.size(); ++k) {
    if (!slot_ok(rule.match.right[k], s.right_at(k))) return false;
  }
  return true;
}

void VersatileShift::check_determinism() const {
  // Every window over stack^l x input^r must match at most one rule.
  const std::size_t ms = stack_alphabet_.symbols().size();
  const std::size_t mi = input_alphabet_.symbols().size();
  std::size_t windows = 1;
  for (int k = 0; k < dod_.l; ++k) windows *= ms;
  for (int k = 0; k < dod_.r; ++k) windows *= mi;
  if (windows > (std::size_t{1} << 24)) throw ResourceLimit("determinism check: too many windows");

  for (std::size_t w = 0; w < windows; ++w) {
    std::size_t rest = w;
    Word stack(dod_.l), input(dod_.r);
    for (int k = 0; k < dod_.r; ++k, rest /= mi) input[k] = input_alphabet_.symbols()[rest % mi];
    for (int k = 0; k < dod_.l; ++k, rest /= ms) stack[k] = stack_alphabet_.symbols()[rest % ms];
    DottedSequence s;
    s.stack = stack;  // keep window blanks; matching pads with blanks anyway
    s.input = input;
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (matches(rules_[i], s)) hits.push_back(i);
    }
    if (hits.size() > 1) {
      std::string msg = "nondeterministic machine: window '" + format_dotted(DottedSequence(stack, input)) +
                        "' matches rules";
      for (auto i : hits) msg += " [" + format_rule(rules_[i]) + "]";
      throw BuildError(msg);
    }
  }
}

std::optional<std::size_t> VersatileShift::match(const DottedSequence& s) const {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (matches(rules_[i], s)) return i;
  }
  return std::nullopt;
}

DottedSequence VersatileShift::apply(std::size_t index, const DottedSequence& s) const {
  const VsRule& rule = rules_.at(index);
  const Symbol bound = s.right_at(0);
  auto instantiate = [&](const Slot& slot) { return slot.is_var() ? bound : *slot.symbol; };

  Word stack, input;
  for (const auto& slot : rule.replace.left) stack.push_back(instantiate(slot));
  for (std::size_t k = rule.match.left.size(); k < s.stack.size(); ++k) stack.push_back(s.stack[k]);
  for (const auto& slot : rule.replace.right) input.push_back(instantiate(slot));
  for (std::size_t k = rule.match.right.size(); k < s.input.size(); ++k) input.push_back(s.input[k]);

  // σ^F: each unit step carries one symbol across the dot
  for (int k = 0; k < rule.shift; ++k) {
    Symbol moved = input.empty() ? blank_symbol() : input.front();
    if (!input.empty()) input.erase(input.begin());
    stack.insert(stack.begin(), moved);
  }
  for (int k = 0; k < -rule.shift; ++k) {
    Symbol moved = stack.empty() ? blank_symbol() : stack.front();
    if (!stack.empty()) stack.erase(stack.begin());
    input.insert(input.begin(), moved);
  }
  return DottedSequence(std::move(stack), std::move(input));
}

void VersatileShift::check_tape(const DottedSequence& s) const {
  for (const auto& a : s.stack) {
    if (!stack_alphabet_.contains(a)) throw DomainError("tape: '" + a + "' is not a stack symbol");
  }
  for (const auto& a : s.input) {
    if (!input_alphabet_.contains(a)) throw DomainError("tape: '" + a + "' is not an input symbol");
  }
}

StepResult vs_step(const VersatileShift& vs, const DottedSequence& s) {
  vs.check_tape(s);
  if (auto rule = vs.match(s)) {
    return {vs.apply(*rule, s), StepKind::Rule, rule, vs.rules()[*rule].label};
  }
  if (s.blank()) return {s, StepKind::Accept, std::nullopt, std::string(kAcceptLabel)};
  return {s, StepKind::Reject, std::nullopt, std::string(kRejectLabel)};
}

std::string to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::Accept: return std::string(kAcceptLabel);
    case RunOutcome::Reject: return std::string(kRejectLabel);
    case RunOutcome::StepLimit: return std::string(kStepLimitLabel);
  }
  return {};
}

RunTrace vs_run(const VersatileShift& vs, const DottedSequence& s0, int max_steps) {
  if (max_steps < 1) throw DomainError("vs_run: max_steps must be at least 1");
  RunTrace trace;
  DottedSequence s = s0;
  for (int t = 0;; ++t) {
    if (t == max_steps) {
      vs.check_tape(s);
      trace.rows.push_back({t, s, std::string(kStepLimitLabel)});
      trace.outcome = RunOutcome::StepLimit;
      return trace;
    }
    StepResult step = vs_step(vs, s);
    trace.rows.push_back({t, s, step.label});
    if (step.kind == StepKind::Accept) {
      trace.outcome = RunOutcome::Accept;
      return trace;
    }
    if (step.kind == StepKind::Reject) {
      trace.outcome = RunOutcome::Reject;
      return trace;
    }
    s = std::move(step.next);
  }
}

}  // namespace symdyn
