#pragma once

// Context-free grammars and their compilation into a top-down recognizer
// running as a versatile shift.
//
// Grammar file format: one rule per line, "LHS -> RHS1 RHS2 ...".  Lines
// starting with '#' and blank lines are ignored.  The first rule's LHS is
// the start symbol; every symbol that appears as a LHS is a nonterminal and
// all other RHS symbols are terminals.

#include "symdyn/symbol_space.hpp"
#include "symdyn/versatile_shift.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

struct CfgRule {
  Symbol lhs;
  Word rhs;
  int line = 0;  // source line, 0 when built in code
};

struct Cfg {
  std::vector<Symbol> nonterminals;  // order of first appearance as LHS
  std::vector<Symbol> terminals;     // order of first appearance in a RHS
  std::vector<CfgRule> rules;
  Symbol start;

  /// Builds the symbol sets from `rules`; the first LHS is the start.
  static Cfg from_rules(std::vector<CfgRule> rules);

  bool is_nonterminal(std::string_view s) const;
};

std::string format_cfg_rule(const CfgRule& rule);

/// Throws ParseError with "<source>:<line>: ..." messages.
Cfg parse_grammar(std::string_view text, std::string_view source = "<grammar>");
Cfg load_grammar(const std::filesystem::path& path);

/// Predict rules  Z . a -> reverse(α) . a  and the attach rule  a . a -> ε . ε
/// with zero shift and DoD (1, 1).  A nonterminal with one rule predicts on
/// any input symbol; one with several rules predicts on the FIRST set of each
/// alternative, and overlapping FIRST sets are a BuildError.
VersatileShift compile_cfg_topdown(const Cfg& grammar);

/// Stack alphabet: blank, terminals, nonterminals.  Input alphabet: blank, terminals.
Alphabet stack_alphabet_of(const Cfg& grammar);
Alphabet input_alphabet_of(const Cfg& grammar);

/// Initial tape "S . w".
DottedSequence initial_tape(const Cfg& grammar, const Word& sentence);

}  // namespace symdyn
