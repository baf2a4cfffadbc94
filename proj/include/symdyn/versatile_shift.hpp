#pragma once

// Versatile shifts: machines on dotted sequences  ... a_-2 a_-1 . a_0 a_1 ...
// that rewrite a window around the dot and then shift the dot.
//
// The left half of the tape is kept as a stack: element 0 is the symbol
// adjacent to the dot.  Printed tapes show the left half in tape order, so
// "VP NP . NP V NP" has NP on top of the stack.

#include "symdyn/symbol_space.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

/// Rendering of an empty tape side.
inline constexpr std::string_view kEmptySide = "ε";

struct DottedSequence {
  Word stack;  // stack[0] sits left of the dot
  Word input;  // input[0] sits right of the dot

  DottedSequence() = default;
  /// Trailing blanks on either side are trimmed, so blank padding never
  /// affects equality.
  DottedSequence(Word stack_top_first, Word input);

  /// Left side given in tape order (bottom of stack first).
  static DottedSequence from_tape(const Word& left, const Word& right);

  Word left_tape() const;
  bool blank() const { return stack.empty() && input.empty(); }

  /// Symbol k positions left of the dot (k = 0 is adjacent), blank if past the end.
  const Symbol& left_at(std::size_t k) const;
  const Symbol& right_at(std::size_t k) const;

  bool operator==(const DottedSequence&) const = default;
};

/// "ε" for an empty side, otherwise symbols joined by spaces.
std::string format_side(const Word& side);
std::string format_dotted(const DottedSequence& s);
/// Inverse of format_dotted: "S . NP V NP", "ε . ε".
DottedSequence parse_dotted(std::string_view text);
/// Space separated symbols; "ε" or empty text is the empty word.
Word split_words(std::string_view text);

/// Domain of dependence: how many symbols left (l) and right (r) of the dot
/// the machine inspects.
struct Dod {
  int l = 1;
  int r = 1;
  bool operator==(const Dod&) const = default;
};

/// A concrete symbol, or the rule's single wildcard variable.  The variable
/// is bound to the input symbol right of the dot and ranges over the
/// non-blank input symbols.
struct Slot {
  std::optional<Symbol> symbol;

  static Slot var() { return Slot{}; }
  static Slot sym(Symbol s) { return Slot{std::move(s)}; }
  bool is_var() const { return !symbol; }
  bool operator==(const Slot&) const = default;
};

/// Dotted word with slots; `left` is in stack order (top first).
struct DottedPattern {
  std::vector<Slot> left;
  std::vector<Slot> right;
};

struct VsRule {
  DottedPattern match;
  DottedPattern replace;
  int shift = 0;  // > 0 moves the dot right, < 0 left
  std::string label;
};

/// "S . a -> VP NP . a", left sides printed in tape order.
std::string format_rule(const VsRule& rule, std::string_view variable_name = "a");

class VersatileShift {
 public:
  /// Both alphabets must contain the blank `_`.  Throws BuildError when a
  /// rule is malformed or when two rules match the same window.
  VersatileShift(Alphabet stack_alphabet, Alphabet input_alphabet, Dod dod, std::vector<VsRule> rules);

  const Alphabet& stack_alphabet() const { return stack_alphabet_; }
  const Alphabet& input_alphabet() const { return input_alphabet_; }
  Dod dod() const { return dod_; }
  const std::vector<VsRule>& rules() const { return rules_; }

  /// Index of the rule matching the window around the dot, if any.
  std::optional<std::size_t> match(const DottedSequence& s) const;

  /// Applies rule `index` (⊕ then the shift) without checking that it matches.
  DottedSequence apply(std::size_t index, const DottedSequence& s) const;

  /// Throws DomainError when a symbol is outside the machine's alphabets.
  void check_tape(const DottedSequence& s) const;

 private:
  bool matches(const VsRule& rule, const DottedSequence& s) const;
  void validate_rule(const VsRule& rule, std::size_t index) const;
  void check_determinism() const;

  Alphabet stack_alphabet_;
  Alphabet input_alphabet_;
  Dod dod_;
  std::vector<VsRule> rules_;
};

enum class StepKind { Rule, Accept, Reject };

inline constexpr std::string_view kAcceptLabel = "accept";
inline constexpr std::string_view kRejectLabel = "halt-reject";
inline constexpr std::string_view kStepLimitLabel = "step-limit";

struct StepResult {
  DottedSequence next;
  StepKind kind = StepKind::Reject;
  std::optional<std::size_t> rule;
  std::string label;
};

/// One application of Ω.  A matching rule always fires; otherwise the blank
/// tape accepts and any other tape halts with a reject label.  Halting
/// states are fixed points.
StepResult vs_step(const VersatileShift& vs, const DottedSequence& s);

enum class RunOutcome { Accept, Reject, StepLimit };

std::string to_string(RunOutcome outcome);

struct TraceRow {
  int time = 0;
  DottedSequence state;
  std::string operation;  // operation applied to `state`
};

struct RunTrace {
  std::vector<TraceRow> rows;
  RunOutcome outcome = RunOutcome::StepLimit;
};

/// Runs until accept or reject, or until `max_steps` transitions have been
/// made, in which case the last row is labelled step-limit.
RunTrace vs_run(const VersatileShift& vs, const DottedSequence& s0, int max_steps);

}  // namespace symdyn
