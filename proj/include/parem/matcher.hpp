#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "parem/dfa.hpp"
#include "parem/types.hpp"

namespace parem {

/// Accept: whole-input acceptance. Count: number of steps whose destination
/// is a final state.
enum class MatchMode { Accept, Count };

/// How per-chunk summaries are folded together after the barrier.
enum class Reduction { LeftFold, Tree };

struct Chunk {
  std::size_t index = 0;
  std::size_t offset = 0;
  std::string_view text;
  std::optional<char> boundary_char;  // last character of the previous chunk
};

/// Splits `input` into `parts` chunks of floor(|input| / parts) characters,
/// the last chunk taking the remainder. `parts` is clamped to
/// max(1, |input|). Throws InvalidArgument when parts == 0.
std::vector<Chunk> chunk_input(std::string_view input, std::size_t parts);

/// States with a defined move on `first_char`.
StateSet compute_S(const Dfa& dfa, char first_char);

/// Distinct destinations of defined moves on `prev_last_char`.
StateSet compute_L(const Dfa& dfa, char prev_last_char);

/// Speculative start states for a chunk: {q0} for chunk 0, otherwise
/// compute_S(first char) intersected with compute_L(boundary char).
StateSet speculate_starts(const Dfa& dfa, const Chunk& chunk);

/// Trace of one chunk run from one speculative start. A dead route stops at
/// the first missing transition; `visited` is truncated there and `end` is
/// kDead.
struct Route {
  StateId start = 0;
  std::vector<StateId> visited;
  StateId end = 0;
  std::uint64_t hits = 0;
  bool dead = false;

  friend bool operator==(const Route&, const Route&) = default;
};

struct SegmentOutcome {
  StateId end = kDead;
  std::uint64_t hits = 0;
  bool dead = false;

  friend bool operator==(const SegmentOutcome&, const SegmentOutcome&) = default;
};

/// Start state -> (end state, hits, dead) digest of one input segment,
/// stored densely over Q. Composition is associative, which is what lets
/// chunk results be reduced in any grouping.
class SegmentSummary {
 public:
  /// Empty domain over a DFA with `state_count` states.
  explicit SegmentSummary(std::size_t state_count);

  /// Summary of the empty segment: every q maps to (q, 0, alive).
  static SegmentSummary identity(std::size_t state_count);

  void set(StateId start, SegmentOutcome outcome);
  const SegmentOutcome* find(StateId start) const;
  StateSet domain() const;
  std::size_t state_count() const { return outcomes_.size(); }

  friend bool operator==(const SegmentSummary&, const SegmentSummary&) = default;

 private:
  std::vector<SegmentOutcome> outcomes_;
  std::vector<char> present_;
};

/// result(q) = right(left(q).end) with hits added; a dead leg makes the
/// result dead. Throws MissingRoute if a live end state of `left` is not in
/// the domain of `right`.
SegmentSummary compose_summaries(const SegmentSummary& left,
                                 const SegmentSummary& right);

SegmentSummary reduce_summaries(std::span<const SegmentSummary> parts,
                                Reduction order);

struct ChunkRun {
  SegmentSummary summary;
  std::vector<Route> routes;  // filled only when tracing
};

/// Runs every start state over the chunk. Throws SymbolNotInAlphabet with the
/// absolute input offset of the first character outside Sigma.
ChunkRun run_chunk(const Dfa& dfa, const Chunk& chunk, const StateSet& starts,
                   bool trace = false);

struct MatchReport {
  MatchMode mode = MatchMode::Count;
  bool accepted = false;
  std::uint64_t count = 0;
  std::optional<StateId> end_state;  // nullopt iff the run died

  friend bool operator==(const MatchReport&, const MatchReport&) = default;
};

struct ChunkSpeculation {
  std::size_t s_size = 0;  // 0 for chunk 0, where S is not computed
  std::size_t l_size = 0;  // 0 for chunk 0
  StateSet starts;         // speculative R set ({q0} for chunk 0)
  std::size_t routes = 0;  // routes this engine actually executed

  friend bool operator==(const ChunkSpeculation&, const ChunkSpeculation&) = default;
};

/// Calculation counts: one "calculation" is one route, i.e. one start state
/// run across one chunk.
struct SpeculationStats {
  std::vector<ChunkSpeculation> chunks;
  std::uint64_t total_routes_parem = 0;  // 1 + sum of |R_i| for i >= 1
  std::uint64_t total_routes_enum = 0;   // (p - 1) * |Q| + 1
  std::uint64_t routes_executed = 0;

  friend bool operator==(const SpeculationStats&, const SpeculationStats&) = default;
};

struct RunOptions {
  std::size_t workers = 0;  // 0: std::thread::hardware_concurrency()
  bool trace = false;       // keep per-route visited sequences
  Reduction reduction = Reduction::Tree;
};

struct ParallelRun {
  MatchReport report;
  SpeculationStats stats;
  std::vector<std::vector<Route>> routes;  // per chunk, only when tracing
};

MatchReport run_sequential(const Dfa& dfa, std::string_view input, MatchMode mode);

/// Speculative-start parallel matching: one task per chunk, each running
/// only the states in R = S n L, followed by a reduction of the summaries.
///
/// Chunk summaries also map every state of L \ S to a dead outcome without
/// running it, since such a state has no move on the chunk's first
/// character. This keeps the reduction total on partial DFAs.
ParallelRun run_parem(const Dfa& dfa, std::string_view input, std::size_t parts,
                      MatchMode mode, RunOptions options = {});

/// Enumeration baseline: every chunk after the first runs from all of Q.
ParallelRun run_enum(const Dfa& dfa, std::string_view input, std::size_t parts,
                     MatchMode mode, RunOptions options = {});

std::size_t default_workers();

}  // namespace parem
