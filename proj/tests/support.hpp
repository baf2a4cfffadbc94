#pragma once

#include "symdyn/grammar.hpp"
#include "symdyn/nda.hpp"

#include <filesystem>
#include <string>

namespace symdyn::test {

inline std::filesystem::path source_dir() { return SYMDYN_SOURCE_DIR; }
inline std::filesystem::path config_path(const std::string& name) { return source_dir() / "configs" / name; }

inline Cfg svo_grammar() { return parse_grammar("S -> NP VP\nVP -> V NP\n", "svo"); }

inline Encoding svo_encoding(const Cfg& g, const std::string& name) {
  const bool gamma = name == "gamma";
  std::map<Symbol, Digit> in = gamma ? std::map<Symbol, Digit>{{"_", 0}, {"NP", 1}, {"V", 2}}
                                     : std::map<Symbol, Digit>{{"_", 0}, {"NP", 2}, {"V", 1}};
  std::map<Symbol, Digit> st = gamma ? std::map<Symbol, Digit>{{"_", 0}, {"NP", 1}, {"V", 2}, {"VP", 3}, {"S", 4}}
                                     : std::map<Symbol, Digit>{{"_", 0}, {"NP", 4}, {"V", 3}, {"VP", 1}, {"S", 2}};
  return {name, Ordering(input_alphabet_of(g), in, true), Ordering(stack_alphabet_of(g), st, true)};
}

}  // namespace symdyn::test
