#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "wa/automaton.hpp"

namespace wa {

/// Line-based automaton format. ';' starts a comment.
///
///   measure sum | avg | dsum <p>/<q> | ratio
///   alphabet <letter>*            (optional, declares extra letters)
///   endsym <letter>               (optional)
///   initial <state>
///   finals <state>*
///   trans <src> <letter> <dst> <weight>        sum/avg/dsum, integer or p/q
///   trans <src> <letter> <dst> <reward> <cost> ratio, naturals, cost >= 1
///
/// Errors are reported as InputError with the offending line number.
WeightedAutomaton parse_automaton(std::string_view text);

/// Deterministic rendering: measure, alphabet (only when some letter has no
/// transition), endsym, initial, finals (sorted), then transitions sorted by
/// (src, letter, dst, weight).
std::string serialize_automaton(const WeightedAutomaton& a);

enum class Owner { O, I };

/// Arena files are automaton files plus `owner <state> O|I` lines.
struct ArenaDocument {
  WeightedAutomaton automaton;
  std::map<std::string, Owner> owners;
};

ArenaDocument parse_arena_document(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace wa
