#include "wa/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "wa/decide.hpp"
#include "wa/determinize.hpp"
#include "wa/error.hpp"
#include "wa/functionality.hpp"
#include "wa/games.hpp"
#include "wa/oracle.hpp"
#include "wa/semantics.hpp"
#include "wa/text_format.hpp"

namespace wa {

namespace {

enum Exit { kHolds = 0, kFails = 1 };

struct Options {
  std::vector<std::string> files;
  std::string threshold = "0";
  bool strict = false;
  bool nonstrict = false;
  std::size_t max_len = 4;
  std::optional<std::size_t> cap;
  std::string output;
  std::optional<std::string> end;
  std::string word;
};

WeightedAutomaton load(const std::string& path) { return parse_automaton(read_file(path)); }

Rational parse_threshold(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument&) {
    throw InputError("threshold must be an integer or p/q, got '" + text + "'");
  }
}

std::string value_str(const std::optional<Rational>& v) { return v ? v->str() : "undefined"; }

[[noreturn]] void revalidation_failed() {
  throw std::logic_error("witness failed re-validation; refusing to print it");
}

/// Writes an automaton to -o, or after the verdict line.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InputError("cannot write '" + o.output + "'");
  f << text;
}

int cmd_functional(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const auto r = check_functional(a, o.cap.value_or(kDefaultRatioConfigCap));
  if (r.functional) {
    out << "FUNCTIONAL\n";
    return kHolds;
  }
  const Witness& w = *r.witness;
  const auto va = evaluate_run(a, w.run_a);
  const auto vb = evaluate_run(a, *w.run_b);
  if (!va || !vb || *va == *vb || run_word(a, w.run_a) != w.word || run_word(a, *w.run_b) != w.word) {
    revalidation_failed();
  }
  out << "NOT_FUNCTIONAL\nwitness " << a.format_word(w.word) << "\nvalues " << va->str() << " " << vb->str() << "\n";
  return kFails;
}

ThresholdQuery query_of(const Options& o, bool default_strict) {
  const bool strict = o.strict ? true : (o.nonstrict ? false : default_strict);
  return ThresholdQuery{parse_threshold(o.threshold), strict ? Comparison::Greater : Comparison::GreaterEqual};
}

bool meets(const Rational& v, const ThresholdQuery& q) { return q.strict() ? v > q.threshold : v >= q.threshold; }

int cmd_empty(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const ThresholdQuery q = query_of(o, true);
  const auto r = emptiness(a, q);
  if (r.holds) {
    out << "EMPTY\n";
    return kFails;
  }
  const auto v = evaluate_word(a, r.witness->word);
  if (!v || !meets(*v, q)) revalidation_failed();
  out << "NON_EMPTY\nwitness " << a.format_word(r.witness->word) << "\nvalue " << v->str() << "\n";
  return kHolds;
}

int cmd_universal(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const ThresholdQuery q = query_of(o, false);
  const auto r = universality(a, q);
  if (r.holds) {
    out << "UNIVERSAL\n";
    return kHolds;
  }
  const auto v = evaluate_word(a, r.witness->word);
  if (!v || meets(*v, q)) revalidation_failed();
  out << "NOT_UNIVERSAL\nwitness " << a.format_word(r.witness->word) << "\nvalue " << v->str() << "\n";
  return kFails;
}

int cmd_include(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const WeightedAutomaton b = load(o.files[1]);
  const auto r = inclusion(a, b, o.cap.value_or(kDefaultSubsetCap));
  if (r.holds) {
    out << "INCLUDED\n";
    return kHolds;
  }
  const auto [x, y] = align_alphabets(a, b);
  const Word& w = r.witness->word;
  const auto va = evaluate_word(x, w);
  const auto vb = evaluate_word(y, w);
  if (!va || (vb && !(*va > *vb))) revalidation_failed();
  out << "NOT_INCLUDED\nwitness " << x.format_word(w) << "\nvalues " << va->str() << " " << value_str(vb) << "\n";
  return kFails;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const WeightedAutomaton b = load(o.files[1]);
  const auto r = equivalence(a, b, o.cap.value_or(kDefaultSubsetCap));
  if (r.holds) {
    out << "EQUIVALENT\n";
    return kHolds;
  }
  const auto [x, y] = align_alphabets(a, b);
  const Word& w = r.witness->word;
  const auto va = evaluate_word(x, w);
  const auto vb = evaluate_word(y, w);
  if (va == vb) revalidation_failed();
  out << "NOT_EQUIVALENT\nwitness " << x.format_word(w) << "\nvalues " << value_str(va) << " " << value_str(vb)
      << "\n";
  return kFails;
}

int cmd_determinize(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  DeterminizeOptions opts;
  opts.end_symbol = o.end;
  if (o.cap) opts.state_cap = *o.cap;
  try {
    const Determinization d = determinize(a, opts);
    out << "DETERMINIZED\n";
    emit(o, out, serialize_automaton(d.automaton));
    return kHolds;
  } catch (const NotDeterminizableError& e) {
    const TwinningWitness& w = e.witness();
    out << "NOT_DETERMINIZABLE\npair " << w.p << " " << w.q << "\nw1 " << a.format_word(w.access) << "\nw2 "
        << a.format_word(w.loop) << "\ndelays " << w.delay_before.str() << " " << w.delay_after.str() << "\n";
    return kFails;
  }
}

int cmd_unambiguize(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const WeightedAutomaton u = unambiguize(a, o.cap.value_or(std::size_t{1} << 20));
  out << "UNAMBIGUOUS\n";
  emit(o, out, serialize_automaton(u));
  return kHolds;
}

int cmd_realizable(const Options& o, std::ostream& out) {
  const ArenaDocument doc = parse_arena_document(read_file(o.files[0]));
  const GameArena arena = validate_arena(doc.automaton, doc.owners, o.end);
  const RealizabilityResult r = solve_realizability(arena);
  if (!r.realizable) {
    out << "UNREALIZABLE\n";
    if (r.game_value) out << "value " << r.game_value->str() << "\n";
    return kFails;
  }
  const ReplayReport replay = replay_strategy(arena, r);
  if (!replay.ok) throw std::logic_error("strategy failed replay: " + replay.detail);
  out << "REALIZABLE\n";
  emit(o, out, dump_strategy(arena, r));
  return kHolds;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const auto v = evaluate_word(a, a.parse_word(o.word));
  out << "value " << value_str(v) << "\n";
  return v ? kHolds : kFails;
}

int cmd_oracle_enum(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = load(o.files[0]);
  const auto table = oracle::enumerate_values(a, o.max_len, o.cap.value_or(oracle::kDefaultBudget));
  std::vector<std::pair<Word, std::vector<Rational>>> rows(table.values.begin(), table.values.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first.size() < y.first.size(); });
  for (auto& [w, vals] : rows) {
    std::sort(vals.begin(), vals.end());
    out << a.format_word(w);
    for (const auto& v : vals) out << " " << v.str();
    out << "\n";
  }
  return kHolds;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for functional weighted automata (sum, avg, dsum, ratio)", "wa"};
  app.require_subcommand(1);
  Options o;

  o.files.resize(2);
  auto files = [&](CLI::App* sub, int n) {
    if (n == 1) {
      sub->add_option("file", o.files[0], "automaton file")->required();
    } else {
      sub->add_option("a", o.files[0], "automaton A")->required();
      sub->add_option("b", o.files[1], "automaton B")->required();
    }
  };
  auto threshold = [&](CLI::App* sub) {
    sub->add_option("--threshold", o.threshold, "threshold nu as an integer or p/q (default 0)");
    auto* s = sub->add_flag("--strict", o.strict, "compare with >");
    auto* n = sub->add_flag("--nonstrict", o.nonstrict, "compare with >=");
    s->excludes(n);
  };
  auto cap = [&](CLI::App* sub, const char* what) { sub->add_option("--cap", o.cap, what); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o", o.output, "write the automaton to this file"); };

  std::map<CLI::App*, int (*)(const Options&, std::ostream&)> handlers;
  auto* f = app.add_subcommand("functional", "test functionality; prints a two-value witness on failure");
  files(f, 1);
  cap(f, "ratio witness-search configuration cap");
  handlers[f] = cmd_functional;
  auto* e = app.add_subcommand(
      "empty", "is some word valued ~ threshold? exit 0 for NON_EMPTY. Dsum supports only --strict, and a dsum "
               "optimum exactly at the threshold is EMPTY");
  files(e, 1);
  threshold(e);
  handlers[e] = cmd_empty;
  auto* u = app.add_subcommand("universal", "is every accepted word valued ~ threshold? (default >=; dsum: >= only)");
  files(u, 1);
  threshold(u);
  handlers[u] = cmd_universal;
  auto* i = app.add_subcommand("include", "L_A <= L_B (B functional; sum, avg, dsum)");
  files(i, 2);
  cap(i, "subset construction cap for the domain test");
  handlers[i] = cmd_include;
  auto* q = app.add_subcommand("equiv", "L_A = L_B for functional A and B");
  files(q, 2);
  cap(q, "subset construction cap for the domain test");
  handlers[q] = cmd_equiv;
  auto* d = app.add_subcommand("determinize", "delay subset construction (sum, avg, dsum)");
  files(d, 1);
  output(d);
  cap(d, "maximal number of subset states");
  d->add_option("--end", o.end, "ending symbol (default: endsym declaration, else #)");
  handlers[d] = cmd_determinize;
  auto* n = app.add_subcommand("unambiguize", "equivalent unambiguous automaton of a functional one");
  files(n, 1);
  output(n);
  cap(n, "maximal number of states");
  handlers[n] = cmd_unambiguize;
  auto* r = app.add_subcommand("realizable", "solve the realizability game on a deterministic arena");
  files(r, 1);
  output(r);
  r->add_option("--end", o.end, "end letter (default: endsym declaration, else #)");
  handlers[r] = cmd_realizable;
  auto* v = app.add_subcommand("eval", "value of a word");
  files(v, 1);
  v->add_option("word", o.word, "the word (letters concatenated, or separated by spaces)")->required();
  handlers[v] = cmd_eval;
  auto* x = app.add_subcommand("oracle-enum", "values of every accepting run, for words up to --max-len");
  files(x, 1);
  x->add_option("--max-len", o.max_len, "maximal word length (default 4)");
  cap(x, "run budget");
  handlers[x] = cmd_oracle_enum;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& pe) {
    out << "ERROR " << pe.what() << "\n";
    return 2;
  }

  try {
    for (auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler(o, out);
    }
    out << "ERROR no command\n";
    return 2;
  } catch (const UnsupportedError& ex) {
    out << "UNSUPPORTED " << ex.what() << "\n";
    return ex.exit_code();
  } catch (const ResourceLimitError& ex) {
    out << "ERROR resource limit: " << ex.what() << "\n";
    return ex.exit_code();
  } catch (const Error& ex) {
    out << "ERROR " << ex.what() << "\n";
    return ex.exit_code();
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << "\n";
    out << "ERROR internal: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace wa
