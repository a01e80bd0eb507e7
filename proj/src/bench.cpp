#include "parem/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "parem/error.hpp"

namespace parem {

namespace {

// Uniform draw in [0, bound) independent of the standard library's
// distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

struct Timing {
  double mean_ms;
  double stddev_ms;
  double min_ms;
  MatchReport report;
  std::uint64_t routes;
};

template <typename Run>
Timing measure(std::size_t repetitions, Run&& run) {
  using Clock = std::chrono::steady_clock;
  auto [report, routes] = run();  // warm-up, discarded from timing
  std::vector<double> samples;
  samples.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const auto begin = Clock::now();
    auto [rep, rt] = run();
    const auto end = Clock::now();
    samples.push_back(std::chrono::duration<double, std::milli>(end - begin).count());
    if (!(rep == report)) {
      throw Error(ErrorCode::ResultMismatch, "engine result changed between repetitions");
    }
  }
  double sum = 0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(samples.size());
  double sq = 0;
  for (double s : samples) sq += (s - mean) * (s - mean);
  const double stddev =
      samples.size() > 1 ? std::sqrt(sq / static_cast<double>(samples.size() - 1)) : 0.0;
  return {mean, stddev, *std::min_element(samples.begin(), samples.end()), report, routes};
}

std::uint64_t match_count(const MatchReport& report) {
  if (report.mode == MatchMode::Count) return report.count;
  return report.accepted ? 1 : 0;
}

}  // namespace

std::string gen_input(std::size_t length, std::string_view alphabet, std::uint64_t seed,
                      const std::optional<Plant>& plant) {
  if (alphabet.empty()) {
    throw Error(ErrorCode::InvalidArgument, "generator alphabet must not be empty");
  }
  std::mt19937_64 rng(seed);
  std::string out(length, '\0');
  for (char& c : out) c = alphabet[draw_below(rng, alphabet.size())];

  if (!plant || plant->occurrences == 0) return out;
  const std::size_t m = plant->literal.size();
  if (m == 0) {
    throw Error(ErrorCode::InvalidArgument, "planted literal must not be empty");
  }
  if (plant->occurrences > length / m) {
    throw Error(ErrorCode::PlantOverflow,
                std::to_string(plant->occurrences) + " copies of a " + std::to_string(m) +
                    "-character literal do not fit in " + std::to_string(length) +
                    " characters");
  }
  // Sorted gaps in [0, slack] shifted by i*m give non-overlapping slots.
  const std::size_t slack = length - plant->occurrences * m;
  std::vector<std::size_t> gaps(plant->occurrences);
  for (auto& g : gaps) g = draw_below(rng, slack + 1);
  std::sort(gaps.begin(), gaps.end());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    std::copy(plant->literal.begin(), plant->literal.end(),
              out.begin() + static_cast<std::ptrdiff_t>(gaps[i] + i * m));
  }
  return out;
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::Sequential: return "seq";
    case Engine::Parem: return "parem";
    case Engine::Enum: return "enum";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
  if (name == "seq") return Engine::Sequential;
  if (name == "parem") return Engine::Parem;
  if (name == "enum") return Engine::Enum;
  return std::nullopt;
}

void validate(const BenchConfig& config) {
  if (config.engines.empty() || config.threads.empty() || config.lengths.empty()) {
    throw Error(ErrorCode::InvalidArgument, "engines, threads and lengths must be non-empty");
  }
  if (config.repetitions == 0) {
    throw Error(ErrorCode::InvalidArgument, "repetitions must be at least 1");
  }
  if (std::find(config.threads.begin(), config.threads.end(), 0u) != config.threads.end()) {
    throw Error(ErrorCode::InvalidArgument, "thread counts must be positive");
  }
  if (std::find(config.lengths.begin(), config.lengths.end(), 0u) != config.lengths.end()) {
    throw Error(ErrorCode::InvalidArgument, "input lengths must be positive");
  }
}

std::vector<BenchRow> run_bench(const Dfa& dfa, const BenchConfig& config,
                                const std::function<void(const BenchRow&)>& progress) {
  validate(config);
  std::string alphabet(dfa.alphabet().begin(), dfa.alphabet().end());
  std::vector<BenchRow> rows;

  for (std::size_t length : config.lengths) {
    const std::string input = gen_input(length, alphabet, config.seed, config.plant);

    const Timing seq = measure(config.repetitions, [&] {
      return std::pair{run_sequential(dfa, input, config.mode), std::uint64_t{1}};
    });

    for (Engine engine : config.engines) {
      for (std::size_t threads : config.threads) {
        Timing t = seq;
        if (engine != Engine::Sequential) {
          RunOptions options;
          options.workers = threads;
          t = measure(config.repetitions, [&] {
            ParallelRun run = engine == Engine::Parem
                                  ? run_parem(dfa, input, threads, config.mode, options)
                                  : run_enum(dfa, input, threads, config.mode, options);
            const std::uint64_t routes = engine == Engine::Parem
                                             ? run.stats.total_routes_parem
                                             : run.stats.total_routes_enum;
            return std::pair{run.report, routes};
          });
          if (!(t.report == seq.report)) {
            throw Error(ErrorCode::ResultMismatch,
                        std::string(engine_name(engine)) + " with " +
                            std::to_string(threads) + " threads disagrees with seq at length " +
                            std::to_string(length));
          }
        }
        BenchRow row;
        row.engine = engine;
        row.threads = threads;
        row.input_length = length;
        row.mean_ms = t.mean_ms;
        row.stddev_ms = t.stddev_ms;
        row.min_ms = t.min_ms;
        row.speedup_vs_seq = engine == Engine::Sequential ? 1.0 : seq.mean_ms / t.mean_ms;
        row.routes_total = t.routes;
        row.match_count = match_count(t.report);
        if (progress) progress(row);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string format_csv_row(const BenchRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f,%.6f,%.6f,%.6f,%llu,%llu",
                std::string(engine_name(row.engine)).c_str(), row.threads, row.input_length,
                row.mean_ms, row.stddev_ms, row.min_ms, row.speedup_vs_seq,
                static_cast<unsigned long long>(row.routes_total),
                static_cast<unsigned long long>(row.match_count));
  return buf;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out(kBenchCsvHeader);
  out.push_back('\n');
  for (const auto& row : rows) {
    out += format_csv_row(row);
    out.push_back('\n');
  }
  return out;
}

}  // namespace parem
