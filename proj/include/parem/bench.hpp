#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parem/dfa.hpp"
#include "parem/matcher.hpp"

namespace parem {

struct Plant {
  std::string literal;
  std::size_t occurrences = 0;
};

/// Seeded random text over `alphabet`. With a plant, exactly `occurrences`
/// non-overlapping copies of the literal overwrite the background at
/// seeded-random positions. Bit-reproducible for fixed arguments on any
/// platform (mt19937_64 plus an explicit rejection-sampling reduction).
std::string gen_input(std::size_t length, std::string_view alphabet,
                      std::uint64_t seed, const std::optional<Plant>& plant = std::nullopt);

enum class Engine { Sequential, Parem, Enum };

std::string_view engine_name(Engine engine);
std::optional<Engine> parse_engine(std::string_view name);

struct BenchConfig {
  std::vector<Engine> engines{Engine::Sequential, Engine::Parem, Engine::Enum};
  std::vector<std::size_t> threads{1, 2, 4};
  std::vector<std::size_t> lengths{1'000'000};
  std::size_t repetitions = 20;
  std::uint64_t seed = 42;
  MatchMode mode = MatchMode::Count;
  std::optional<Plant> plant;
};

struct BenchRow {
  Engine engine = Engine::Sequential;
  std::size_t threads = 1;
  std::size_t input_length = 0;
  double mean_ms = 0;
  double stddev_ms = 0;
  double min_ms = 0;
  double speedup_vs_seq = 0;
  std::uint64_t routes_total = 0;
  std::uint64_t match_count = 0;
};

inline constexpr std::string_view kBenchCsvHeader =
    "engine,threads,input_length,mean_ms,stddev_ms,min_ms,speedup_vs_seq,"
    "routes_total,match_count";

/// Throws InvalidArgument on an empty axis or zero repetitions.
void validate(const BenchConfig& config);

/// Times every (length, engine, threads) combination: one discarded warm-up
/// then `repetitions` timed runs of the matching call alone. The sequential
/// engine is timed once per length and reused as the speedup baseline (and
/// for every seq row, since it ignores the thread count). Throws
/// ResultMismatch if any engine disagrees with the sequential report.
/// `progress`, if set, receives each row as soon as it is measured.
std::vector<BenchRow> run_bench(const Dfa& dfa, const BenchConfig& config,
                                const std::function<void(const BenchRow&)>& progress = {});

std::string format_csv_row(const BenchRow& row);
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace parem
