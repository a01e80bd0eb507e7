#include "parem/matcher.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "parem/error.hpp"

namespace parem {

namespace {

[[noreturn]] void throw_bad_symbol(char c, std::size_t position) {
  throw Error(ErrorCode::SymbolNotInAlphabet,
              "input symbol " + std::to_string(static_cast<unsigned char>(c)) +
                  " at byte offset " + std::to_string(position) +
                  " is not in the DFA alphabet",
              position);
}

// Column-major copy of the DFA with an extra absorbing sink row standing in
// for kDead, so lockstep routes never branch on death.
struct ExecTable {
  explicit ExecTable(const Dfa& dfa)
      : stride(dfa.state_count() + 1),
        sink(static_cast<StateId>(dfa.state_count())),
        next(dfa.symbol_count() * stride),
        final_flags(stride, 0) {
    column.fill(-1);
    const auto alphabet = dfa.alphabet();
    for (std::size_t c = 0; c < alphabet.size(); ++c) {
      column[static_cast<unsigned char>(alphabet[c])] = static_cast<int>(c);
      StateId* col = next.data() + c * stride;
      for (std::size_t s = 0; s < dfa.state_count(); ++s) {
        const StateId t = dfa.next(static_cast<StateId>(s), c);
        col[s] = t == kDead ? sink : t;
      }
      col[sink] = sink;
    }
    for (StateId f : dfa.finals()) final_flags[static_cast<std::size_t>(f)] = 1;
  }

  void validate(std::string_view text, std::size_t offset) const {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (column[static_cast<unsigned char>(text[i])] < 0) {
        throw_bad_symbol(text[i], offset + i);
      }
    }
  }

  std::size_t stride;
  StateId sink;
  std::vector<StateId> next;
  std::vector<std::uint8_t> final_flags;
  std::array<int, 256> column{};
};

template <std::size_t Lanes>
void walk(const ExecTable& table, std::string_view text, std::size_t offset,
          StateId* states, std::uint64_t* hits) {
  std::array<StateId, Lanes> s;
  std::array<std::uint64_t, Lanes> h{};
  std::copy_n(states, Lanes, s.begin());
  const StateId* next = table.next.data();
  const std::uint8_t* fin = table.final_flags.data();
  const std::size_t stride = table.stride;

  for (std::size_t i = 0; i < text.size(); ++i) {
    const int c = table.column[static_cast<unsigned char>(text[i])];
    if (c < 0) [[unlikely]] throw_bad_symbol(text[i], offset + i);
    const StateId* col = next + static_cast<std::size_t>(c) * stride;
    for (std::size_t l = 0; l < Lanes; ++l) s[l] = col[s[l]];
    for (std::size_t l = 0; l < Lanes; ++l) h[l] += fin[s[l]];
  }
  std::copy_n(s.begin(), Lanes, states);
  for (std::size_t l = 0; l < Lanes; ++l) hits[l] = h[l];
}

// Runs independent routes in lockstep groups so their table lookups overlap.
void walk_all(const ExecTable& table, std::string_view text, std::size_t offset,
              std::span<StateId> states, std::span<std::uint64_t> hits) {
  std::size_t i = 0;
  const std::size_t n = states.size();
  for (; n - i >= 8; i += 8) walk<8>(table, text, offset, &states[i], &hits[i]);
  if (n - i >= 4) { walk<4>(table, text, offset, &states[i], &hits[i]); i += 4; }
  if (n - i >= 2) { walk<2>(table, text, offset, &states[i], &hits[i]); i += 2; }
  if (n - i >= 1) { walk<1>(table, text, offset, &states[i], &hits[i]); }
}

Route trace_route(const Dfa& dfa, std::string_view text, StateId start) {
  Route route;
  route.start = start;
  route.visited.reserve(text.size());
  StateId s = start;
  for (const char c : text) {
    const StateId t = dfa.next(s, *dfa.column_of(c));
    if (t == kDead) {
      route.dead = true;
      break;
    }
    s = t;
    route.visited.push_back(s);
    if (dfa.is_final(s)) ++route.hits;
  }
  route.end = route.dead ? kDead : s;
  return route;
}

ChunkRun execute_chunk(const Dfa& dfa, const ExecTable& table, const Chunk& chunk,
                       const StateSet& starts, bool trace) {
  ChunkRun run{SegmentSummary(dfa.state_count()), {}};
  if (trace || starts.empty()) table.validate(chunk.text, chunk.offset);

  if (trace) {
    run.routes.reserve(starts.size());
    for (StateId start : starts) {
      run.routes.push_back(trace_route(dfa, chunk.text, start));
      const Route& r = run.routes.back();
      run.summary.set(start, {r.end, r.hits, r.dead});
    }
    return run;
  }

  std::vector<StateId> states(starts.begin(), starts.end());
  std::vector<std::uint64_t> hits(states.size(), 0);
  walk_all(table, chunk.text, chunk.offset, states, hits);
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const bool dead = states[i] == table.sink;
    run.summary.set(starts[i], {dead ? kDead : states[i], hits[i], dead});
  }
  return run;
}

StateSet all_states(const Dfa& dfa) {
  StateSet out(dfa.state_count());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = static_cast<StateId>(s);
  return out;
}

std::size_t require_column(const Dfa& dfa, char c, std::optional<std::size_t> position) {
  const auto col = dfa.column_of(c);
  if (!col) {
    if (position) throw_bad_symbol(c, *position);
    throw Error(ErrorCode::SymbolNotInAlphabet,
                "symbol " + std::to_string(static_cast<unsigned char>(c)) +
                    " is not in the DFA alphabet");
  }
  return *col;
}

StateSet column_sources(const Dfa& dfa, std::size_t col) {
  StateSet out;
  for (std::size_t s = 0; s < dfa.state_count(); ++s) {
    if (dfa.next(static_cast<StateId>(s), col) != kDead) out.push_back(static_cast<StateId>(s));
  }
  return out;
}

StateSet column_targets(const Dfa& dfa, std::size_t col) {
  std::vector<char> seen(dfa.state_count(), 0);
  for (std::size_t s = 0; s < dfa.state_count(); ++s) {
    const StateId t = dfa.next(static_cast<StateId>(s), col);
    if (t != kDead) seen[static_cast<std::size_t>(t)] = 1;
  }
  StateSet out;
  for (std::size_t s = 0; s < seen.size(); ++s) {
    if (seen[s]) out.push_back(static_cast<StateId>(s));
  }
  return out;
}

// Runs task(i) for i in [0, count) on up to `workers` threads. Joining the
// threads is the barrier. Failures are collected per task; the one with the
// smallest input position (then lowest task index) is rethrown so the error
// does not depend on scheduling.
template <typename Task>
void run_tasks(std::size_t count, std::size_t workers, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::size_t> error_pos(count, std::numeric_limits<std::size_t>::max());
  const auto guarded = [&](std::size_t i) {
    try {
      task(i);
    } catch (const Error& e) {
      errors[i] = std::current_exception();
      if (e.position()) error_pos[i] = *e.position();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) guarded(i);
      });
    }
  }

  std::size_t worst = count;
  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    if (worst == count || error_pos[i] < error_pos[worst]) worst = i;
  }
  if (worst != count) std::rethrow_exception(errors[worst]);
}

MatchReport make_report(const Dfa& dfa, MatchMode mode, const SegmentOutcome& outcome) {
  MatchReport report;
  report.mode = mode;
  report.count = outcome.hits;
  if (!outcome.dead) {
    report.end_state = outcome.end;
    report.accepted = dfa.is_final(outcome.end);
  }
  return report;
}

enum class Speculation { Parem, Enumerate };

ParallelRun run_parallel(const Dfa& dfa, std::string_view input, std::size_t parts,
                         MatchMode mode, const RunOptions& options,
                         Speculation strategy) {
  const std::vector<Chunk> chunks = chunk_input(input, parts);
  const std::size_t p = chunks.size();
  const ExecTable table(dfa);

  std::vector<SegmentSummary> summaries(p, SegmentSummary(dfa.state_count()));
  std::vector<ChunkSpeculation> speculation(p);
  std::vector<std::vector<Route>> traces(options.trace ? p : 0);

  run_tasks(p, options.workers == 0 ? default_workers() : options.workers,
            [&](std::size_t i) {
    const Chunk& chunk = chunks[i];
    ChunkSpeculation& spec = speculation[i];
    StateSet dead_on_entry;
    if (i == 0) {
      spec.starts = {dfa.start()};
    } else {
      const std::size_t first = require_column(dfa, chunk.text.front(), chunk.offset);
      const std::size_t boundary = require_column(dfa, *chunk.boundary_char, chunk.offset - 1);
      const StateSet s = column_sources(dfa, first);
      const StateSet l = column_targets(dfa, boundary);
      spec.s_size = s.size();
      spec.l_size = l.size();
      std::set_intersection(s.begin(), s.end(), l.begin(), l.end(),
                            std::back_inserter(spec.starts));
      if (strategy == Speculation::Parem) {
        std::set_difference(l.begin(), l.end(), s.begin(), s.end(),
                            std::back_inserter(dead_on_entry));
      }
    }

    const StateSet enumerated = (strategy == Speculation::Enumerate && i != 0)
                                    ? all_states(dfa)
                                    : StateSet{};
    const StateSet& starts = enumerated.empty() ? spec.starts : enumerated;
    spec.routes = starts.size();

    ChunkRun run = execute_chunk(dfa, table, chunk, starts, options.trace);
    for (StateId q : dead_on_entry) run.summary.set(q, {kDead, 0, true});
    summaries[i] = std::move(run.summary);
    if (options.trace) traces[i] = std::move(run.routes);
  });

  const SegmentSummary total = reduce_summaries(summaries, options.reduction);
  const SegmentOutcome* outcome = total.find(dfa.start());
  if (outcome == nullptr) {
    throw Error(ErrorCode::MissingRoute, "reduction lost the route from the start state");
  }

  ParallelRun result;
  result.report = make_report(dfa, mode, *outcome);
  result.stats.total_routes_parem = 1;
  result.stats.total_routes_enum =
      static_cast<std::uint64_t>(p - 1) * dfa.state_count() + 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (i != 0) result.stats.total_routes_parem += speculation[i].starts.size();
    result.stats.routes_executed += speculation[i].routes;
  }
  result.stats.chunks = std::move(speculation);
  result.routes = std::move(traces);
  return result;
}

}  // namespace

std::size_t default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Chunk> chunk_input(std::string_view input, std::size_t parts) {
  if (parts == 0) {
    throw Error(ErrorCode::InvalidArgument, "chunk count must be at least 1");
  }
  const std::size_t p = std::min(parts, std::max<std::size_t>(1, input.size()));
  const std::size_t width = input.size() / p;
  std::vector<Chunk> chunks(p);
  for (std::size_t i = 0; i < p; ++i) {
    Chunk& c = chunks[i];
    c.index = i;
    c.offset = i * width;
    const std::size_t length = (i + 1 == p) ? input.size() - c.offset : width;
    c.text = input.substr(c.offset, length);
    if (i != 0) c.boundary_char = input[c.offset - 1];
  }
  return chunks;
}

StateSet compute_S(const Dfa& dfa, char first_char) {
  return column_sources(dfa, require_column(dfa, first_char, std::nullopt));
}

StateSet compute_L(const Dfa& dfa, char prev_last_char) {
  return column_targets(dfa, require_column(dfa, prev_last_char, std::nullopt));
}

StateSet speculate_starts(const Dfa& dfa, const Chunk& chunk) {
  if (chunk.index == 0 || !chunk.boundary_char) return {dfa.start()};
  if (chunk.text.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot speculate on an empty chunk");
  }
  const StateSet s = compute_S(dfa, chunk.text.front());
  const StateSet l = compute_L(dfa, *chunk.boundary_char);
  StateSet r;
  std::set_intersection(s.begin(), s.end(), l.begin(), l.end(), std::back_inserter(r));
  return r;
}

SegmentSummary::SegmentSummary(std::size_t state_count)
    : outcomes_(state_count), present_(state_count, 0) {}

SegmentSummary SegmentSummary::identity(std::size_t state_count) {
  SegmentSummary s(state_count);
  for (std::size_t q = 0; q < state_count; ++q) {
    s.set(static_cast<StateId>(q), {static_cast<StateId>(q), 0, false});
  }
  return s;
}

void SegmentSummary::set(StateId start, SegmentOutcome outcome) {
  if (start < 0 || static_cast<std::size_t>(start) >= outcomes_.size()) {
    throw Error(ErrorCode::InvariantViolation,
                "summary start state " + std::to_string(start) + " out of range");
  }
  outcomes_[static_cast<std::size_t>(start)] = outcome;
  present_[static_cast<std::size_t>(start)] = 1;
}

const SegmentOutcome* SegmentSummary::find(StateId start) const {
  if (start < 0 || static_cast<std::size_t>(start) >= outcomes_.size()) return nullptr;
  const auto i = static_cast<std::size_t>(start);
  return present_[i] ? &outcomes_[i] : nullptr;
}

StateSet SegmentSummary::domain() const {
  StateSet out;
  for (std::size_t q = 0; q < present_.size(); ++q) {
    if (present_[q]) out.push_back(static_cast<StateId>(q));
  }
  return out;
}

SegmentSummary compose_summaries(const SegmentSummary& left,
                                 const SegmentSummary& right) {
  if (left.state_count() != right.state_count()) {
    throw Error(ErrorCode::InvariantViolation, "summaries of different automata");
  }
  SegmentSummary out(left.state_count());
  for (StateId q : left.domain()) {
    const SegmentOutcome& first = *left.find(q);
    if (first.dead) {
      out.set(q, first);
      continue;
    }
    const SegmentOutcome* second = right.find(first.end);
    if (second == nullptr) {
      throw Error(ErrorCode::MissingRoute,
                  "no route from state " + std::to_string(first.end) +
                      " in the right-hand segment");
    }
    out.set(q, {second->end, first.hits + second->hits, second->dead});
  }
  return out;
}

SegmentSummary reduce_summaries(std::span<const SegmentSummary> parts,
                                Reduction order) {
  if (parts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "nothing to reduce");
  }
  if (order == Reduction::LeftFold) {
    SegmentSummary acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = compose_summaries(acc, parts[i]);
    return acc;
  }
  std::vector<SegmentSummary> level(parts.begin(), parts.end());
  while (level.size() > 1) {
    std::vector<SegmentSummary> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(compose_summaries(level[i], level[i + 1]));
    }
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return std::move(level.front());
}

ChunkRun run_chunk(const Dfa& dfa, const Chunk& chunk, const StateSet& starts,
                   bool trace) {
  for (StateId s : starts) {
    if (s < 0 || static_cast<std::size_t>(s) >= dfa.state_count()) {
      throw Error(ErrorCode::InvariantViolation,
                  "start state " + std::to_string(s) + " out of range");
    }
  }
  return execute_chunk(dfa, ExecTable(dfa), chunk, starts, trace);
}

MatchReport run_sequential(const Dfa& dfa, std::string_view input, MatchMode mode) {
  const ExecTable table(dfa);
  StateId state = dfa.start();
  std::uint64_t hits = 0;
  walk<1>(table, input, 0, &state, &hits);
  const bool dead = state == table.sink;
  return make_report(dfa, mode, {dead ? kDead : state, hits, dead});
}

ParallelRun run_parem(const Dfa& dfa, std::string_view input, std::size_t parts,
                      MatchMode mode, RunOptions options) {
  return run_parallel(dfa, input, parts, mode, options, Speculation::Parem);
}

ParallelRun run_enum(const Dfa& dfa, std::string_view input, std::size_t parts,
                     MatchMode mode, RunOptions options) {
  return run_parallel(dfa, input, parts, mode, options, Speculation::Enumerate);
}

}  // namespace parem
