#include "symdyn/grammar.hpp"

#include "symdyn/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace symdyn {

namespace {

bool contains(const std::vector<Symbol>& v, std::string_view s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::string where(const CfgRule& rule) { return rule.line > 0 ? "line " + std::to_string(rule.line) + ": " : ""; }

std::string quoted(const CfgRule& rule) {
  std::string out = "'" + format_cfg_rule(rule) + "'";
  if (rule.line > 0) out += " (line " + std::to_string(rule.line) + ")";
  return out;
}

}  // namespace

Cfg Cfg::from_rules(std::vector<CfgRule> rules) {
  Cfg g;
  if (rules.empty()) throw ParseError("grammar has no rules");
  g.rules = std::move(rules);
  g.start = g.rules.front().lhs;
  for (const auto& r : g.rules) {
    if (!contains(g.nonterminals, r.lhs)) g.nonterminals.push_back(r.lhs);
  }
  for (const auto& r : g.rules) {
    if (r.rhs.empty()) throw ParseError(where(r) + "empty right-hand side for '" + r.lhs + "' is not supported");
    for (const auto& s : r.rhs) {
      if (s == kBlank || s == kEmptySide || s == ".") {
        throw ParseError(where(r) + "reserved token '" + s + "' in a rule");
      }
      if (!contains(g.nonterminals, s) && !contains(g.terminals, s)) g.terminals.push_back(s);
    }
  }
  if (g.terminals.empty()) throw ParseError("grammar has no terminal symbols");
  return g;
}

bool Cfg::is_nonterminal(std::string_view s) const { return contains(nonterminals, s); }

std::string format_cfg_rule(const CfgRule& rule) { return rule.lhs + " -> " + format_word(rule.rhs); }

Cfg parse_grammar(std::string_view text, std::string_view source) {
  std::vector<CfgRule> rules;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto err = [&](const std::string& why) {
      return ParseError(std::string(source) + ":" + std::to_string(lineno) + ": " + why);
    };
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw err("expected 'LHS -> RHS'");
    Word lhs = split_words(line.substr(0, arrow));
    Word rhs = split_words(line.substr(arrow + 2));
    if (lhs.size() != 1) throw err("left-hand side must be exactly one symbol");
    if (rhs.empty()) throw err("empty right-hand side is not supported");
    rules.push_back({lhs.front(), rhs, lineno});
  }
  try {
    return Cfg::from_rules(std::move(rules));
  } catch (const ParseError& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
}

Cfg load_grammar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open grammar file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_grammar(text.str(), path.string());
}

Alphabet stack_alphabet_of(const Cfg& g) {
  std::vector<Symbol> symbols = g.terminals;
  symbols.insert(symbols.end(), g.nonterminals.begin(), g.nonterminals.end());
  return Alphabet::with_blank(symbols);
}

Alphabet input_alphabet_of(const Cfg& g) { return Alphabet::with_blank(g.terminals); }

DottedSequence initial_tape(const Cfg& g, const Word& sentence) {
  for (const auto& s : sentence) {
    if (!contains(g.terminals, s)) throw DomainError("sentence symbol '" + s + "' is not a terminal of the grammar");
  }
  return DottedSequence({g.start}, sentence);
}

VersatileShift compile_cfg_topdown(const Cfg& g) {
  // FIRST sets; no ε-productions, so FIRST(α) = FIRST(α_1).
  std::map<Symbol, std::set<Symbol>> first;
  for (const auto& t : g.terminals) first[t] = {t};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      for (const auto& t : first[r.rhs.front()]) changed |= first[r.lhs].insert(t).second;
    }
  }

  std::vector<VsRule> rules;
  auto predict = [](const CfgRule& r, Slot lookahead) {
    VsRule rule;
    rule.match.left = {Slot::sym(r.lhs)};
    rule.match.right = {lookahead};
    // α = X_1 ... X_k is pushed so that X_1 ends up on top
    for (const auto& s : r.rhs) rule.replace.left.push_back(Slot::sym(s));
    rule.replace.right = {lookahead};
    rule.label = "predict (" + format_cfg_rule(r) + ")";
    return rule;
  };

  for (const auto& z : g.nonterminals) {
    std::vector<const CfgRule*> alternatives;
    for (const auto& r : g.rules) {
      if (r.lhs == z) alternatives.push_back(&r);
    }
    if (alternatives.size() == 1) {
      rules.push_back(predict(*alternatives.front(), Slot::var()));
      continue;
    }
    std::map<Symbol, const CfgRule*> owner;
    for (const CfgRule* r : alternatives) {
      for (const auto& t : first[r->rhs.front()]) {
        auto [it, inserted] = owner.emplace(t, r);
        if (!inserted) {
          throw BuildError("grammar is not top-down deterministic with one symbol of lookahead: rules " +
                           quoted(*it->second) + " and " + quoted(*r) + " both predict on '" + t + "'");
        }
        rules.push_back(predict(*r, Slot::sym(t)));
      }
    }
  }

  VsRule attach;
  attach.match.left = {Slot::var()};
  attach.match.right = {Slot::var()};
  attach.label = "attach";
  rules.push_back(attach);

  return VersatileShift(stack_alphabet_of(g), input_alphabet_of(g), Dod{1, 1}, std::move(rules));
}

}  // namespace symdyn
