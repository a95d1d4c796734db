#include "wa/text_format.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "wa/error.hpp"

namespace wa {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  if (auto semi = line.find(';'); semi != std::string_view::npos) line = line.substr(0, semi);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return static_cast<unsigned char>(c) > 32 && static_cast<unsigned char>(c) < 127 && c != ';';
  });
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

Rational parse_number(const std::string& tok, std::size_t line) {
  try {
    return Rational::parse(tok);
  } catch (const std::invalid_argument& e) {
    fail(line, e.what());
  }
}

Integer parse_natural(const std::string& tok, std::size_t line) {
  const Rational r = parse_number(tok, line);
  if (!r.is_integer() || r.sign() < 0) fail(line, "expected a natural number, got '" + tok + "'");
  return r.numerator();
}

ArenaDocument parse_impl(std::string_view text, bool allow_owner) {
  std::optional<Measure> measure;
  std::optional<std::string> initial;
  std::optional<std::string> endsym;
  std::vector<std::string> finals;
  std::vector<std::string> letters;
  struct Pending {
    std::size_t line;
    std::string src, letter, dst;
    std::vector<std::string> weight;
  };
  std::vector<Pending> trans;
  std::map<std::string, Owner> owners;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    const auto toks = tokenize(text.substr(pos, end - pos));
    pos = end + 1;
    if (toks.empty()) continue;
    for (const auto& t : toks) {
      if (!is_identifier(t)) fail(lineno, "invalid token '" + t + "'");
    }
    const std::string& kw = toks[0];
    if (kw == "measure") {
      if (measure) fail(lineno, "duplicate measure line");
      if (toks.size() == 2 && toks[1] == "sum") {
        measure = Measure::sum();
      } else if (toks.size() == 2 && toks[1] == "avg") {
        measure = Measure::avg();
      } else if (toks.size() == 2 && toks[1] == "ratio") {
        measure = Measure::ratio();
      } else if (toks.size() == 3 && toks[1] == "dsum") {
        try {
          measure = Measure::dsum(parse_number(toks[2], lineno));
        } catch (const InputError& e) {
          if (std::string(e.what()).rfind("line ", 0) == 0) throw;
          fail(lineno, e.what());
        }
      } else {
        fail(lineno, "expected 'measure sum|avg|ratio|dsum <p>/<q>'");
      }
    } else if (kw == "initial") {
      if (toks.size() != 2) fail(lineno, "expected 'initial <state>'");
      if (initial) fail(lineno, "duplicate initial line");
      initial = toks[1];
    } else if (kw == "finals") {
      finals.insert(finals.end(), toks.begin() + 1, toks.end());
    } else if (kw == "alphabet") {
      letters.insert(letters.end(), toks.begin() + 1, toks.end());
    } else if (kw == "endsym") {
      if (toks.size() != 2) fail(lineno, "expected 'endsym <letter>'");
      endsym = toks[1];
    } else if (kw == "trans") {
      if (toks.size() != 5 && toks.size() != 6) fail(lineno, "expected 'trans <src> <letter> <dst> <weight...>'");
      trans.push_back({lineno, toks[1], toks[2], toks[3], {toks.begin() + 4, toks.end()}});
    } else if (kw == "owner" && allow_owner) {
      if (toks.size() != 3 || (toks[2] != "O" && toks[2] != "I")) fail(lineno, "expected 'owner <state> O|I'");
      if (owners.count(toks[1])) fail(lineno, "duplicate owner for " + toks[1]);
      owners[toks[1]] = toks[2] == "O" ? Owner::O : Owner::I;
    } else {
      fail(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!measure) throw InputError("missing 'measure' line");
  if (!initial) throw InputError("missing 'initial' line");

  AutomatonBuilder b(*measure);
  b.set_initial(*initial);
  for (const auto& f : finals) b.add_final(f);
  for (const auto& l : letters) b.add_letter(l);
  if (endsym) b.set_end_symbol(*endsym);
  for (const auto& t : trans) {
    Weight w;
    const std::string where = "transition " + t.src + " " + t.letter + " " + t.dst + ": ";
    if (measure->is_ratio()) {
      if (t.weight.size() != 2) fail(t.line, where + "ratio transitions need '<reward> <cost>'");
      const Integer reward = parse_natural(t.weight[0], t.line);
      const Integer cost = parse_natural(t.weight[1], t.line);
      if (cost < 1) fail(t.line, where + "ratio cost must be >= 1");
      w = Weight::ratio(reward, cost);
    } else {
      if (t.weight.size() != 1) fail(t.line, where + "expected a single weight");
      w = Weight::scalar(parse_number(t.weight[0], t.line));
    }
    b.add_transition(t.src, t.letter, t.dst, w);
  }
  for (const auto& [s, o] : owners) b.add_state(s);
  return ArenaDocument{b.build(), std::move(owners)};
}

}  // namespace

WeightedAutomaton parse_automaton(std::string_view text) { return parse_impl(text, false).automaton; }

ArenaDocument parse_arena_document(std::string_view text) { return parse_impl(text, true); }

std::string serialize_automaton(const WeightedAutomaton& a) {
  std::ostringstream out;
  out << "measure " << a.measure().name() << "\n";
  std::set<LetterId> used;
  for (const auto& t : a.transitions()) used.insert(t.letter);
  bool unused_letter = false;
  for (LetterId l = 0; l < a.num_letters(); ++l) {
    if (!used.count(l) && (!a.end_symbol() || a.letter_name(l) != *a.end_symbol())) unused_letter = true;
  }
  if (unused_letter) {
    out << "alphabet";
    for (const auto& l : a.alphabet()) out << " " << l;
    out << "\n";
  }
  if (a.end_symbol()) out << "endsym " << *a.end_symbol() << "\n";
  out << "initial " << a.state_name(a.initial()) << "\n";
  out << "finals";
  for (StateId f : a.finals()) out << " " << a.state_name(f);
  out << "\n";
  // States and letters are numbered in name order, so id order is name order.
  for (const auto& t : a.transitions()) {
    out << "trans " << a.state_name(t.src) << " " << a.letter_name(t.letter) << " " << a.state_name(t.dst) << " "
        << t.weight.str() << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wa
