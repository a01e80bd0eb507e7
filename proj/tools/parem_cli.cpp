// parem: compile patterns to DFAs, match with the sequential, speculative
// parallel or enumeration engine, generate inputs and run benchmarks.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parem/bench.hpp"
#include "parem/dfa.hpp"
#include "parem/error.hpp"
#include "parem/matcher.hpp"

namespace {

using namespace parem;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct AutomatonSource {
  std::string dfa_path;
  std::string regex;
  std::string literal;
  std::string alphabet;
  std::size_t max_states = 0;  // 0: env or library default
};

void add_source_options(CLI::App& cmd, AutomatonSource& src, bool allow_dfa_file) {
  auto* regex = cmd.add_option("--regex", src.regex, "Regular expression to compile");
  auto* literal = cmd.add_option("--literal", src.literal, "Word to search for (all occurrences)");
  cmd.add_option("--alphabet", src.alphabet, "Alphabet for --literal, as a string of symbols")
      ->needs(literal);
  literal->excludes(regex);
  if (allow_dfa_file) {
    auto* dfa = cmd.add_option("--dfa", src.dfa_path, "Transition-table file from `compile`");
    dfa->excludes(regex)->excludes(literal);
  }
  cmd.add_option("--max-dfa-states", src.max_states,
                 "State-explosion cap for subset construction (env PAREM_MAX_DFA_STATES)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "failed reading '" + path + "'");
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

SubsetOptions subset_options(const AutomatonSource& src) {
  SubsetOptions options;
  if (src.max_states != 0) {
    options.max_states = src.max_states;
  } else if (const char* env = std::getenv("PAREM_MAX_DFA_STATES")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || value == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("PAREM_MAX_DFA_STATES must be a positive integer, got '") + env + "'");
    }
    options.max_states = static_cast<std::size_t>(value);
  }
  return options;
}

Dfa build_automaton(const AutomatonSource& src, bool default_to_parallel) {
  if (!src.dfa_path.empty()) return load_dfa_table(read_file(src.dfa_path));
  if (!src.regex.empty()) return compile_regex(src.regex, subset_options(src));
  if (!src.literal.empty()) {
    if (src.alphabet.empty()) {
      throw Error(ErrorCode::InvalidArgument, "--literal requires --alphabet");
    }
    return build_search_dfa(src.literal, src.alphabet);
  }
  if (default_to_parallel) return build_search_dfa("parallel", "parel");
  throw Error(ErrorCode::InvalidArgument, "give one of --regex, --literal or --dfa");
}

std::string alphabet_string(const Dfa& dfa) {
  return std::string(dfa.alphabet().begin(), dfa.alphabet().end());
}

std::string state_list(const StateSet& states) {
  std::string out = "{";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(states[i]);
  }
  return out + "}";
}

const std::map<std::string, MatchMode> kModes{{"accept", MatchMode::Accept},
                                              {"count", MatchMode::Count}};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
      return kExitIo;
    case ErrorCode::MissingRoute:
    case ErrorCode::ResultMismatch:
      return kExitInternal;
    default:
      return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parem - parallel regular expression matching"};
  app.require_subcommand(1);

  // compile
  AutomatonSource compile_src;
  std::string compile_out;
  std::string compile_dot;
  auto* compile = app.add_subcommand("compile", "Build a DFA and write its transition table");
  add_source_options(*compile, compile_src, false);
  compile->add_option("-o,--out", compile_out, "Transition-table output file (default: stdout)");
  compile->add_option("--dot", compile_dot, "Also write a Graphviz rendering to this file");

  // match
  AutomatonSource match_src;
  std::string match_input;
  std::string engine_name_opt = "parem";
  std::size_t match_threads = default_workers();
  MatchMode match_mode = MatchMode::Count;
  bool match_trace = false;
  auto* match = app.add_subcommand("match", "Run a DFA over an input file");
  add_source_options(*match, match_src, true);
  match->add_option("-i,--input", match_input, "Input file, read as raw bytes")->required();
  match->add_option("--engine", engine_name_opt, "seq, parem or enum")
      ->check(CLI::IsMember({"seq", "parem", "enum"}));
  match->add_option("--threads", match_threads, "Chunks / worker threads")
      ->check(CLI::PositiveNumber);
  match->add_option("--mode", match_mode, "accept or count")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  match->add_flag("--trace", match_trace, "Print the speculative routes of every chunk");

  // gen
  std::size_t gen_length = 0;
  std::string gen_alphabet;
  std::uint64_t gen_seed = 42;
  std::string gen_plant;
  std::size_t gen_occurrences = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random input file");
  gen->add_option("--length", gen_length, "Number of characters")->required();
  gen->add_option("--alphabet", gen_alphabet, "Symbols to draw from")->required();
  gen->add_option("--seed", gen_seed, "RNG seed");
  auto* plant_opt = gen->add_option("--plant", gen_plant, "Literal to plant");
  gen->add_option("--occurrences", gen_occurrences, "Number of planted copies")->needs(plant_opt);
  gen->add_option("-o,--out", gen_out, "Output file (default: stdout)");

  // bench
  AutomatonSource bench_src;
  BenchConfig bench;
  std::vector<std::string> bench_engines{"seq", "parem", "enum"};
  std::string bench_out;
  std::string bench_plant;
  std::size_t bench_occurrences = 0;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Time engines over generated inputs and write CSV (default DFA: 'parallel' over 'parel')");
  add_source_options(*bench_cmd, bench_src, true);
  bench_cmd->add_option("--engine,--engines", bench_engines, "Engines to time")
      ->delimiter(',')
      ->check(CLI::IsMember({"seq", "parem", "enum"}));
  bench_cmd->add_option("--threads", bench.threads, "Thread counts, comma separated")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--lengths", bench.lengths, "Input lengths, comma separated")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", bench.repetitions, "Timed repetitions per combination")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Input generator seed");
  bench_cmd->add_option("--mode", bench.mode, "accept or count")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  auto* bench_plant_opt = bench_cmd->add_option("--plant", bench_plant, "Literal to plant in inputs");
  bench_cmd->add_option("--occurrences", bench_occurrences, "Planted copies per input")
      ->needs(bench_plant_opt);
  bench_cmd->add_option("-o,--out", bench_out, "CSV output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*compile) {
      const Dfa dfa = build_automaton(compile_src, false);
      const std::string table = export_dfa_table(dfa);
      std::ostream& info = compile_out.empty() ? std::cerr : std::cout;
      if (compile_out.empty()) {
        std::cout << table;
      } else {
        write_file(compile_out, table);
      }
      if (!compile_dot.empty()) write_file(compile_dot, export_dot(dfa));
      info << "states: " << dfa.state_count() << "\n"
           << "alphabet: " << alphabet_string(dfa) << "\n"
           << "complete: " << (dfa.complete() ? "true" : "false") << "\n";
      return kExitOk;
    }

    if (*match) {
      const Dfa dfa = build_automaton(match_src, false);
      const std::string input = read_file(match_input);
      const auto engine = *parse_engine(engine_name_opt);

      RunOptions options;
      options.workers = match_threads;
      options.trace = match_trace;
      const auto begin = std::chrono::steady_clock::now();
      MatchReport report;
      std::uint64_t routes = 1;
      ParallelRun run;
      if (engine == Engine::Sequential) {
        report = run_sequential(dfa, input, match_mode);
      } else {
        run = engine == Engine::Parem ? run_parem(dfa, input, match_threads, match_mode, options)
                                      : run_enum(dfa, input, match_threads, match_mode, options);
        report = run.report;
        routes = engine == Engine::Parem ? run.stats.total_routes_parem
                                         : run.stats.total_routes_enum;
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();

      if (match_mode == MatchMode::Accept) {
        std::cout << "accepted: " << (report.accepted ? "true" : "false") << "\n";
      } else {
        std::cout << "count: " << report.count << "\n";
      }
      std::cout << "end_state: "
                << (report.end_state ? std::to_string(*report.end_state) : std::string("none"))
                << "\n"
                << "routes: " << routes << "\n"
                << "time_ms: " << ms << "\n";
      if (match_trace && engine != Engine::Sequential) {
        for (std::size_t i = 0; i < run.stats.chunks.size(); ++i) {
          const auto& c = run.stats.chunks[i];
          std::cout << "chunk " << i << " |S|=" << c.s_size << " |L|=" << c.l_size
                    << " R=" << state_list(c.starts) << "\n";
          for (const Route& r : run.routes[i]) {
            std::cout << "  from " << r.start << ":";
            for (StateId s : r.visited) std::cout << " " << s;
            if (r.dead) std::cout << " (dead)";
            std::cout << "  hits " << r.hits << "\n";
          }
        }
      }
      return kExitOk;
    }

    if (*gen) {
      std::optional<Plant> plant;
      if (!gen_plant.empty()) plant = Plant{gen_plant, gen_occurrences};
      const std::string text = gen_input(gen_length, gen_alphabet, gen_seed, plant);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, text);
      }
      return kExitOk;
    }

    if (*bench_cmd) {
      const Dfa dfa = build_automaton(bench_src, true);
      bench.engines.clear();
      for (const auto& name : bench_engines) bench.engines.push_back(*parse_engine(name));
      if (!bench_plant.empty()) bench.plant = Plant{bench_plant, bench_occurrences};
      const auto rows = run_bench(dfa, bench, [](const BenchRow& row) {
        std::cerr << format_csv_row(row) << "\n";
      });
      const std::string csv = to_csv(rows);
      if (bench_out.empty()) {
        std::cout << csv;
      } else {
        write_file(bench_out, csv);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "parem: error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "parem: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
