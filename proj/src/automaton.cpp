#include "wa/automaton.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "wa/error.hpp"

namespace wa {

namespace {

template <typename T>
std::optional<std::size_t> index_of(const std::vector<T>& sorted, std::string_view name) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == sorted.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

std::optional<StateId> WeightedAutomaton::find_state(std::string_view name) const {
  return index_of(states_, name);
}

std::optional<LetterId> WeightedAutomaton::find_letter(std::string_view name) const {
  return index_of(alphabet_, name);
}

std::vector<StateId> WeightedAutomaton::finals() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < final_.size(); ++s) {
    if (final_[s]) out.push_back(s);
  }
  return out;
}

bool WeightedAutomaton::is_deterministic() const {
  for (const auto& out : outgoing_) {
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (transitions_[out[i]].letter == transitions_[out[i - 1]].letter) return false;
    }
  }
  return true;
}

std::string WeightedAutomaton::format_word(const Word& word) const {
  const bool compact =
      std::all_of(alphabet_.begin(), alphabet_.end(), [](const std::string& l) { return l.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += alphabet_.at(word[i]);
  }
  return out;
}

Word WeightedAutomaton::parse_word(std::string_view text) const {
  Word out;
  const bool spaced = text.find(' ') != std::string_view::npos;
  if (spaced) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && text[pos] == ' ') ++pos;
      std::size_t end = text.find(' ', pos);
      if (end == std::string_view::npos) end = text.size();
      if (end > pos) {
        auto letter = find_letter(text.substr(pos, end - pos));
        if (!letter) throw InputError("unknown letter '" + std::string(text.substr(pos, end - pos)) + "'");
        out.push_back(*letter);
      }
      pos = end;
    }
    return out;
  }
  if (auto whole = find_letter(text); whole && text.size() > 1) return {*whole};
  for (char c : text) {
    auto letter = find_letter(std::string_view(&c, 1));
    if (!letter) throw InputError("unknown letter '" + std::string(1, c) + "'");
    out.push_back(*letter);
  }
  return out;
}

AutomatonBuilder& AutomatonBuilder::add_state(const std::string& name) {
  states_.push_back(name);
  return *this;
}

AutomatonBuilder& AutomatonBuilder::add_letter(const std::string& name) {
  letters_.push_back(name);
  return *this;
}

AutomatonBuilder& AutomatonBuilder::set_initial(const std::string& name) {
  initial_ = name;
  return *this;
}

AutomatonBuilder& AutomatonBuilder::add_final(const std::string& name) {
  finals_.push_back(name);
  return *this;
}

AutomatonBuilder& AutomatonBuilder::add_transition(const std::string& src, const std::string& letter,
                                                   const std::string& dst, Weight weight) {
  transitions_.push_back({src, letter, dst, std::move(weight)});
  return *this;
}

AutomatonBuilder& AutomatonBuilder::set_end_symbol(const std::string& letter) {
  end_symbol_ = letter;
  return *this;
}

WeightedAutomaton AutomatonBuilder::build() const {
  if (!initial_) throw InputError("automaton has no initial state");
  std::set<std::string> states(states_.begin(), states_.end());
  std::set<std::string> letters(letters_.begin(), letters_.end());
  states.insert(*initial_);
  states.insert(finals_.begin(), finals_.end());
  for (const auto& t : transitions_) {
    states.insert(t.src);
    states.insert(t.dst);
    letters.insert(t.letter);
  }
  if (end_symbol_) letters.insert(*end_symbol_);

  WeightedAutomaton a(measure_);
  a.states_.assign(states.begin(), states.end());
  a.alphabet_.assign(letters.begin(), letters.end());
  a.end_symbol_ = end_symbol_;
  a.initial_ = *a.find_state(*initial_);
  a.final_.assign(a.states_.size(), false);
  for (const auto& f : finals_) a.final_[*a.find_state(f)] = true;

  const bool want_pair = measure_.is_ratio();
  for (const auto& t : transitions_) {
    if (t.weight.is_pair() != want_pair) {
      throw InputError("transition " + t.src + " " + t.letter + " " + t.dst + ": weight kind does not match measure " +
                       measure_.name());
    }
    a.transitions_.push_back({*a.find_state(t.src), *a.find_letter(t.letter), *a.find_state(t.dst), t.weight});
  }
  auto key = [](const Transition& t) { return std::tie(t.src, t.letter, t.dst, t.weight); };
  std::sort(a.transitions_.begin(), a.transitions_.end(),
            [&](const Transition& x, const Transition& y) { return key(x) < key(y); });
  for (std::size_t i = 1; i < a.transitions_.size(); ++i) {
    if (key(a.transitions_[i]) == key(a.transitions_[i - 1])) {
      const auto& t = a.transitions_[i];
      throw InputError("duplicate transition " + a.states_[t.src] + " " + a.alphabet_[t.letter] + " " +
                       a.states_[t.dst] + " " + t.weight.str());
    }
  }
  a.outgoing_.assign(a.states_.size(), {});
  for (std::size_t i = 0; i < a.transitions_.size(); ++i) a.outgoing_[a.transitions_[i].src].push_back(i);
  return a;
}

namespace {

AutomatonBuilder rebuild(const WeightedAutomaton& a, const Measure& m) {
  AutomatonBuilder b(m);
  for (StateId s = 0; s < a.num_states(); ++s) b.add_state(a.state_name(s));
  for (const auto& l : a.alphabet()) b.add_letter(l);
  b.set_initial(a.state_name(a.initial()));
  for (StateId f : a.finals()) b.add_final(a.state_name(f));
  for (const auto& t : a.transitions()) {
    b.add_transition(a.state_name(t.src), a.letter_name(t.letter), a.state_name(t.dst), t.weight);
  }
  if (a.end_symbol()) b.set_end_symbol(*a.end_symbol());
  return b;
}

}  // namespace

WeightedAutomaton with_measure(const WeightedAutomaton& a, const Measure& m) { return rebuild(a, m).build(); }

WeightedAutomaton extend_alphabet(const WeightedAutomaton& a, const std::vector<std::string>& extra) {
  AutomatonBuilder b = rebuild(a, a.measure());
  for (const auto& l : extra) b.add_letter(l);
  return b.build();
}

std::pair<WeightedAutomaton, WeightedAutomaton> align_alphabets(const WeightedAutomaton& a,
                                                                const WeightedAutomaton& b) {
  if (a.alphabet() == b.alphabet()) return {a, b};
  return {extend_alphabet(a, b.alphabet()), extend_alphabet(b, a.alphabet())};
}

}  // namespace wa
