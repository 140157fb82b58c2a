#pragma once

// Subcommands of the oblig tool.  Kept in a header so that the tests can
// drive them with in-memory streams.
//
// Exit codes:
//   translate, classify: 0 ok, 1 parse error, 2 not a syntactic
//     obligation, 3 state limit or I/O failure
//   solve: 0 realizable, 1 unrealizable, 10 input/output overlap,
//     11 not a syntactic obligation, 12 parse error, 13 other errors
//   bench: 0 ok, 2 unknown pattern, 3 other errors
//   64 for command-line usage errors

#include <oblig/oblig.hh>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace oblig::cli {

constexpr int exit_usage = 64;

struct input_opts {
  std::string formula;
  std::string file;
};

/// Formula texts given on the command line or in a file (one per line,
/// blank lines and lines starting with '#' skipped).
inline std::vector<std::string> read_inputs(const input_opts& in) {
  std::vector<std::string> res;
  if (!in.formula.empty()) res.push_back(in.formula);
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw std::runtime_error("cannot open '" + in.file + "'");
    std::string line;
    while (std::getline(f, line)) {
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      auto e = line.find_last_not_of(" \t\r");
      res.push_back(line.substr(b, e - b + 1));
    }
  }
  return res;
}

inline int cmd_translate(const input_opts& in, bool minimize, const std::string& out_path,
                         std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return 3;
    }
    os = &file;
  }
  std::vector<std::string> texts;
  try {
    texts = read_inputs(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  for (const auto& text : texts) {
    auto fs = std::make_shared<formula_store>();
    try {
      formula f = parse(*fs, text);
      mtdwa a = translate(fs, f);
      if (minimize) a = moore_minimize(a);
      explicit_automaton e = to_explicit(a);
      e.name = text;
      write_hoa(e, *os);
    } catch (const parse_error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const not_obligation_error& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 3;
    }
  }
  return 0;
}

inline int cmd_classify(const input_opts& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> texts;
  try {
    texts = read_inputs(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  for (const auto& text : texts) {
    formula_store fs;
    try {
      fragment_set c = classify(fs, parse(fs, text));
      out << most_specific(c) << ' ' << to_string(c) << '\n';
    } catch (const parse_error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}

struct solve_opts {
  std::vector<std::string> ins, outs;
  std::string part;
  std::string sem = "mealy";
  bool synthesis = false;
};

/// Reads ".inputs a b" / ".outputs c d" lines.
inline void read_part(const std::string& path, std::vector<std::string>& ins, std::vector<std::string>& outs) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  while (std::getline(f, line)) {
    std::istringstream ls(line);
    std::string head, w;
    if (!(ls >> head)) continue;
    std::vector<std::string>* dst = nullptr;
    if (head == ".inputs") dst = &ins;
    else if (head == ".outputs") dst = &outs;
    else throw std::runtime_error("unexpected '" + head + "' in partition file");
    while (ls >> w) dst->push_back(w);
  }
}

inline int cmd_solve(const input_opts& in, solve_opts so, std::ostream& out, std::ostream& err) {
  if (!so.part.empty()) {
    try {
      read_part(so.part, so.ins, so.outs);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 13;
    }
  }
  semantics sem;
  if (so.sem == "mealy") sem = semantics::mealy;
  else if (so.sem == "moore") sem = semantics::moore;
  else {
    err << "error: unknown semantics '" << so.sem << "'\n";
    return exit_usage;
  }
  std::vector<std::string> texts;
  try {
    texts = read_inputs(in);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 13;
  }
  int code = 0;
  for (const auto& text : texts) {
    auto fs = std::make_shared<formula_store>();
    try {
      formula f = parse(*fs, text);
      synthesis_spec spec{f, so.ins, so.outs, sem};
      // A missing side of the partition is everything else.
      if (so.ins.empty() != so.outs.empty()) {
        auto& known = so.ins.empty() ? spec.outputs : spec.inputs;
        auto& rest = so.ins.empty() ? spec.inputs : spec.outputs;
        for (formula a : atoms_of(*fs, f)) {
          const std::string& n = fs->atom_name(a);
          if (std::find(known.begin(), known.end(), n) == known.end()) rest.push_back(n);
        }
      }
      game_solver g(fs, spec);
      bool ok = g.solve().realizable;
      out << (ok ? "REALIZABLE" : "UNREALIZABLE") << '\n';
      if (ok && so.synthesis) write_strategy(g.extract_strategy(), out);
      if (!ok) code = 1;
    } catch (const io_overlap_error& e) {
      err << "error: " << e.what() << '\n';
      return 10;
    } catch (const not_obligation_error& e) {
      err << "error: " << e.what() << '\n';
      return 11;
    } catch (const parse_error& e) {
      err << "error: " << e.what() << '\n';
      return 12;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 13;
    }
  }
  return code;
}

struct bench_opts {
  std::string pattern;
  unsigned from = 1, to = 1;
  std::optional<unsigned> k;
  std::string mode = "translate";
  std::string csv;
  std::vector<std::string> ins;
  std::string sem = "mealy";
};

/// One CSV row per instance.  In translate mode the timing covers
/// translation and minimization; in solve mode it covers solving only,
/// states_raw is the number of states the solver visited and states_min
/// is left empty.
inline int cmd_bench(const bench_opts& bo, std::ostream& out, std::ostream& err) {
  if (bo.mode != "translate" && bo.mode != "solve") {
    err << "error: unknown mode '" << bo.mode << "'\n";
    return exit_usage;
  }
  try {
    pattern_class(bo.pattern);
  } catch (const unknown_pattern& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  std::ofstream file;
  std::ostream* os = &out;
  if (!bo.csv.empty() && bo.csv != "-") {
    file.open(bo.csv);
    if (!file) {
      err << "error: cannot write '" << bo.csv << "'\n";
      return 3;
    }
    os = &file;
  }
  *os << "pattern,n,states_raw,states_min,ms,verdict\n";
  for (unsigned n = bo.from; n <= bo.to; ++n) {
    try {
      auto fs = std::make_shared<formula_store>();
      formula f = gen_pattern(*fs, bo.pattern, n, bo.k);
      auto t0 = std::chrono::steady_clock::now();
      std::string raw, min, verdict;
      if (bo.mode == "translate") {
        mtdwa a = translate(fs, f);
        mtdwa m = moore_minimize(a);
        raw = std::to_string(a.size());
        min = std::to_string(m.size());
      } else {
        synthesis_spec spec{f, {}, {}, bo.sem == "moore" ? semantics::moore : semantics::mealy};
        for (formula a : atoms_of(*fs, f)) {
          const std::string& p = fs->atom_name(a);
          bool is_in = std::find(bo.ins.begin(), bo.ins.end(), p) != bo.ins.end();
          (is_in ? spec.inputs : spec.outputs).push_back(p);
        }
        solve_result r = solve(fs, spec);
        raw = std::to_string(r.states_explored);
        verdict = r.realizable ? "REALIZABLE" : "UNREALIZABLE";
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      std::ostringstream msf;
      msf.setf(std::ios::fixed);
      msf.precision(3);
      msf << ms;
      *os << bo.pattern << ',' << n << ',' << raw << ',' << min << ',' << msf.str() << ',' << verdict << '\n';
      os->flush();
    } catch (const std::exception& e) {
      err << "error: " << bo.pattern << ' ' << n << ": " << e.what() << '\n';
      return 3;
    }
  }
  return 0;
}

/// Parses the command line and dispatches.  `args` excludes the program
/// name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translation and synthesis for syntactic obligations", "oblig"};
  app.require_subcommand(1);

  input_opts tin, cin, sin;
  bool tmin = true;
  std::string tout;
  auto add_inputs = [](CLI::App* sub, input_opts& in) {
    auto* f = sub->add_option("-f,--formula", in.formula, "formula text");
    auto* p = sub->add_option("-F,--file", in.file, "file with one formula per line");
    f->excludes(p);
  };

  auto* tr = app.add_subcommand("translate", "print a minimal deterministic weak automaton in HOA format");
  add_inputs(tr, tin);
  tr->add_flag("--min,!--no-min", tmin, "minimize (default)");
  tr->add_option("-o,--out", tout, "output file (default standard output)");

  auto* cl = app.add_subcommand("classify", "print the syntactic fragments of the formulas");
  add_inputs(cl, cin);

  solve_opts so;
  auto* sv = app.add_subcommand("solve", "decide realizability");
  add_inputs(sv, sin);
  sv->add_option("--ins", so.ins, "input propositions")->delimiter(',');
  sv->add_option("--outs", so.outs, "output propositions")->delimiter(',');
  sv->add_option("--part", so.part, "partition file with .inputs/.outputs lines");
  sv->add_option("--semantics", so.sem, "mealy or moore")->check(CLI::IsMember({"mealy", "moore"}));
  auto* real = sv->add_flag("--realizability", "only print the verdict (default)");
  auto* synt = sv->add_flag("--synthesis", so.synthesis, "also print a strategy");
  real->excludes(synt);

  bench_opts bo;
  unsigned kval = 0;
  auto* bn = app.add_subcommand("bench", "run a scalable pattern family");
  bn->add_option("--pattern", bo.pattern, "pattern name")->required();
  bn->add_option("--from", bo.from, "first parameter")->check(CLI::PositiveNumber);
  bn->add_option("--to", bo.to, "last parameter")->check(CLI::PositiveNumber);
  auto* kopt = bn->add_option("--k", kval, "secondary parameter of kr-n-delta1");
  bn->add_option("--mode", bo.mode, "translate or solve")->check(CLI::IsMember({"translate", "solve"}));
  bn->add_option("--csv", bo.csv, "output file (default standard output)");
  bn->add_option("--ins", bo.ins, "input propositions in solve mode (others are outputs)")->delimiter(',');
  bn->add_option("--semantics", bo.sem, "mealy or moore")->check(CLI::IsMember({"mealy", "moore"}));

  std::vector<std::string> argv_store{"oblig"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return exit_usage;
  }

  auto need_input = [&](const input_opts& in) {
    if (in.formula.empty() && in.file.empty()) {
      err << "error: one of --formula or --file is required\n";
      return false;
    }
    return true;
  };
  if (tr->parsed()) return need_input(tin) ? cmd_translate(tin, tmin, tout, out, err) : exit_usage;
  if (cl->parsed()) return need_input(cin) ? cmd_classify(cin, out, err) : exit_usage;
  if (sv->parsed()) return need_input(sin) ? cmd_solve(sin, so, out, err) : exit_usage;
  if (bn->parsed()) {
    if (*kopt) bo.k = kval;
    if (bo.to < bo.from) {
      err << "error: --to must not be smaller than --from\n";
      return exit_usage;
    }
    return cmd_bench(bo, out, err);
  }
  return exit_usage;
}

}  // namespace oblig::cli
