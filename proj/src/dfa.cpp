#include "parem/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "parem/error.hpp"

namespace parem {

Dfa::Dfa(std::vector<char> alphabet, std::size_t state_count,
         std::vector<StateId> table, StateId start, std::vector<StateId> finals)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      table_(std::move(table)),
      start_(start),
      finals_(std::move(finals)),
      final_flags_(state_count, 0) {
  const auto invalid = [](const std::string& what) {
    return Error(ErrorCode::InvariantViolation, what);
  };
  const auto in_range = [state_count](StateId s) {
    return s >= 0 && static_cast<std::size_t>(s) < state_count;
  };

  columns_.fill(-1);
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    auto& slot = columns_[static_cast<unsigned char>(alphabet_[i])];
    if (slot >= 0) {
      throw invalid(std::string("duplicate alphabet symbol '") + alphabet_[i] + "'");
    }
    slot = static_cast<int>(i);
  }
  if (state_count_ == 0) throw invalid("DFA needs at least one state");
  if (table_.size() != state_count_ * alphabet_.size()) {
    throw invalid("transition table size does not match states x symbols");
  }
  if (!in_range(start_)) {
    throw invalid("start state " + std::to_string(start_) + " out of range");
  }
  for (StateId t : table_) {
    if (t != kDead && !in_range(t)) {
      throw invalid("transition target " + std::to_string(t) + " out of range");
    }
  }
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  for (StateId f : finals_) {
    if (!in_range(f)) {
      throw invalid("final state " + std::to_string(f) + " out of range");
    }
    final_flags_[static_cast<std::size_t>(f)] = 1;
  }
}

StateId Dfa::step(StateId s, char c) const {
  const auto col = column_of(c);
  if (!col) {
    throw Error(ErrorCode::SymbolNotInAlphabet,
                std::string("symbol '") + c + "' is not in the DFA alphabet");
  }
  return next(s, *col);
}

bool Dfa::complete() const {
  return std::find(table_.begin(), table_.end(), kDead) == table_.end();
}

Dfa subset_construct(const Nfa& nfa, SubsetOptions options) {
  nfa.validate();

  const std::vector<char> alphabet = nfa_alphabet(nfa);
  const std::size_t k = alphabet.size();
  std::vector<int> column(256, -1);
  for (std::size_t i = 0; i < k; ++i) column[static_cast<unsigned char>(alphabet[i])] = static_cast<int>(i);

  std::vector<std::vector<StateId>> eps(nfa.state_count);
  std::vector<std::vector<std::pair<int, StateId>>> moves(nfa.state_count);
  for (const auto& t : nfa.transitions) {
    if (t.epsilon()) {
      eps[t.from].push_back(t.to);
    } else {
      moves[t.from].push_back({column[static_cast<unsigned char>(*t.label)], t.to});
    }
  }

  std::vector<char> mark(nfa.state_count, 0);
  const auto closure = [&](std::vector<StateId> set) {
    std::fill(mark.begin(), mark.end(), 0);
    for (StateId s : set) mark[s] = 1;
    std::vector<StateId> stack(set);
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      for (StateId t : eps[s]) {
        if (!mark[t]) {
          mark[t] = 1;
          set.push_back(t);
          stack.push_back(t);
        }
      }
    }
    std::sort(set.begin(), set.end());
    return set;
  };

  std::map<std::vector<StateId>, StateId> ids;
  std::deque<std::vector<StateId>> queue;
  std::vector<StateId> table;
  std::vector<StateId> finals;

  const auto intern = [&](std::vector<StateId> set) -> StateId {
    auto [it, inserted] = ids.emplace(std::move(set), static_cast<StateId>(ids.size()));
    if (inserted) {
      if (ids.size() > options.max_states) {
        throw Error(ErrorCode::StateExplosion,
                    "subset construction exceeded " +
                        std::to_string(options.max_states) + " DFA states");
      }
      queue.push_back(it->first);
    }
    return it->second;
  };

  intern(closure({nfa.start}));
  StateId current = 0;
  std::vector<std::vector<StateId>> targets(k);
  while (!queue.empty()) {
    const std::vector<StateId> set = std::move(queue.front());
    queue.pop_front();
    if (std::binary_search(set.begin(), set.end(), nfa.accept)) finals.push_back(current);

    for (auto& t : targets) t.clear();
    for (StateId s : set) {
      for (const auto& [col, to] : moves[s]) targets[static_cast<std::size_t>(col)].push_back(to);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (targets[c].empty()) {
        table.push_back(kDead);
      } else {
        std::sort(targets[c].begin(), targets[c].end());
        targets[c].erase(std::unique(targets[c].begin(), targets[c].end()), targets[c].end());
        table.push_back(intern(closure(targets[c])));
      }
    }
    ++current;
  }

  const std::size_t n = ids.size();
  return Dfa(alphabet, n, std::move(table), 0, std::move(finals));
}

Dfa compile_regex(std::string_view pattern, SubsetOptions options) {
  return subset_construct(simplify_nfa(thompson_nfa(parse_regex(pattern))), options);
}

Dfa build_search_dfa(std::string_view literal, std::string_view alphabet) {
  if (literal.empty()) {
    throw Error(ErrorCode::InvalidArgument, "search literal must not be empty");
  }
  std::vector<char> sigma(alphabet.begin(), alphabet.end());
  std::array<int, 256> column{};
  column.fill(-1);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    column[static_cast<unsigned char>(sigma[i])] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < literal.size(); ++i) {
    if (column[static_cast<unsigned char>(literal[i])] < 0) {
      throw Error(ErrorCode::LiteralNotInAlphabet,
                  std::string("literal character '") + literal[i] +
                      "' is not in the alphabet",
                  i);
    }
  }

  const std::size_t m = literal.size();
  const std::size_t k = sigma.size();
  // failure[j]: length of the longest proper border of literal[0, j).
  std::vector<std::size_t> failure(m + 1, 0);
  for (std::size_t j = 2; j <= m; ++j) {
    std::size_t b = failure[j - 1];
    while (b > 0 && literal[b] != literal[j - 1]) b = failure[b];
    if (literal[b] == literal[j - 1]) ++b;
    failure[j] = b;
  }

  std::vector<StateId> table((m + 1) * k, 0);
  for (std::size_t state = 0; state <= m; ++state) {
    for (std::size_t c = 0; c < k; ++c) {
      StateId target;
      if (state < m && literal[state] == sigma[c]) {
        target = static_cast<StateId>(state + 1);
      } else if (state == 0) {
        target = 0;
      } else {
        // failure[state] < state, so that row is already filled.
        target = table[failure[state] * k + c];
      }
      table[state * k + c] = target;
    }
  }
  return Dfa(std::move(sigma), m + 1, std::move(table), 0,
             {static_cast<StateId>(m)});
}

}  // namespace parem
