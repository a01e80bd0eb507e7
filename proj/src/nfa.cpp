#include "parem/nfa.hpp"

#include <algorithm>
#include <string>

#include "parem/error.hpp"

namespace parem {

std::size_t Nfa::epsilon_count() const {
  return static_cast<std::size_t>(
      std::count_if(transitions.begin(), transitions.end(),
                    [](const NfaTransition& t) { return t.epsilon(); }));
}

void Nfa::validate() const {
  const auto valid = [this](StateId s) {
    return s >= 0 && static_cast<std::size_t>(s) < state_count;
  };
  if (!valid(start) || !valid(accept)) {
    throw Error(ErrorCode::InvariantViolation,
                "NFA start/accept state out of range");
  }
  for (const auto& t : transitions) {
    if (!valid(t.from) || !valid(t.to)) {
      throw Error(ErrorCode::InvariantViolation,
                  "NFA transition endpoint out of range");
    }
  }
}

namespace {

struct Fragment {
  StateId start;
  StateId accept;
};

class ThompsonBuilder {
 public:
  Nfa finish(const RegexAst& ast) {
    const Fragment f = build(ast);
    nfa_.start = f.start;
    nfa_.accept = f.accept;
    return std::move(nfa_);
  }

 private:
  StateId add_state() { return static_cast<StateId>(nfa_.state_count++); }

  void epsilon(StateId from, StateId to) {
    nfa_.transitions.push_back({from, std::nullopt, to});
  }

  Fragment symbol(char c) {
    const StateId s = add_state();
    const StateId f = add_state();
    nfa_.transitions.push_back({s, c, f});
    return {s, f};
  }

  // s --eps--> each branch --eps--> f
  template <typename BuildBranch>
  Fragment alternatives(std::size_t count, BuildBranch&& branch) {
    const StateId s = add_state();
    std::vector<Fragment> parts;
    parts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      parts.push_back(branch(i));
      epsilon(s, parts.back().start);
    }
    const StateId f = add_state();
    for (const auto& p : parts) epsilon(p.accept, f);
    return {s, f};
  }

  Fragment build(const RegexAst& node) {
    using Kind = RegexAst::Kind;
    switch (node.kind) {
      case Kind::Literal:
        return symbol(node.lo);
      case Kind::Range: {
        const int lo = static_cast<unsigned char>(node.lo);
        const int hi = static_cast<unsigned char>(node.hi);
        return alternatives(static_cast<std::size_t>(hi - lo + 1),
                            [&](std::size_t i) {
                              return symbol(static_cast<char>(lo + i));
                            });
      }
      case Kind::Concat: {
        Fragment acc = build(node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) {
          const Fragment next = build(node.children[i]);
          epsilon(acc.accept, next.start);
          acc.accept = next.accept;
        }
        return acc;
      }
      case Kind::Union:
        return alternatives(node.children.size(), [&](std::size_t i) {
          return build(node.children[i]);
        });
      case Kind::Star:
      case Kind::Plus:
      case Kind::Optional: {
        const StateId s = add_state();
        const Fragment inner = build(node.children.front());
        const StateId f = add_state();
        epsilon(s, inner.start);
        epsilon(inner.accept, f);
        if (node.kind != Kind::Plus) epsilon(s, f);
        if (node.kind != Kind::Optional) epsilon(inner.accept, inner.start);
        return {s, f};
      }
    }
    throw Error(ErrorCode::InvariantViolation, "unknown AST node");
  }

  Nfa nfa_;
};

}  // namespace

Nfa thompson_nfa(const RegexAst& ast) {
  return ThompsonBuilder{}.finish(ast);
}

Nfa simplify_nfa(const Nfa& input) {
  input.validate();
  const std::size_t n = input.state_count;
  std::vector<NfaTransition> edges = input.transitions;
  std::vector<char> alive(edges.size(), 1);
  std::vector<char> removed(n, 0);
  std::vector<std::size_t> out_degree(n, 0);
  std::vector<std::size_t> in_degree(n, 0);
  for (const auto& e : edges) {
    ++out_degree[e.from];
    ++in_degree[e.to];
  }
  StateId start = input.start;
  const StateId accept = input.accept;

  // Merging u into v keeps u's incoming edges and v's outgoing edges. It is
  // skipped when v is the start (v is reachable without passing u) or when u
  // accepts (v would start accepting strings it previously did not).
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive[i] || !edges[i].epsilon()) continue;
      const StateId u = edges[i].from;
      const StateId v = edges[i].to;
      if (u == v || out_degree[u] != 1 || in_degree[v] != 1) continue;
      if (v == start || u == accept) continue;

      alive[i] = 0;
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (alive[j] && edges[j].to == u) edges[j].to = v;
      }
      in_degree[v] = in_degree[u];
      in_degree[u] = out_degree[u] = 0;
      if (start == u) start = v;
      removed[u] = 1;
      changed = true;
    }
  }

  std::vector<StateId> remap(n, kDead);
  StateId next_id = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!removed[s]) remap[s] = next_id++;
  }
  Nfa out;
  out.state_count = static_cast<std::size_t>(next_id);
  out.start = remap[start];
  out.accept = remap[accept];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!alive[i]) continue;
    out.transitions.push_back(
        {remap[edges[i].from], edges[i].label, remap[edges[i].to]});
  }
  return out;
}

std::vector<char> nfa_alphabet(const Nfa& nfa) {
  std::vector<char> out;
  bool seen[256] = {};
  for (const auto& t : nfa.transitions) {
    if (t.epsilon()) continue;
    const auto c = static_cast<unsigned char>(*t.label);
    if (!seen[c]) {
      seen[c] = true;
      out.push_back(*t.label);
    }
  }
  return out;
}

NfaSimulator::NfaSimulator(const Nfa& nfa)
    : state_count_(nfa.state_count),
      start_(nfa.start),
      accept_(nfa.accept),
      epsilon_(nfa.state_count),
      labeled_(nfa.state_count) {
  nfa.validate();
  for (const auto& t : nfa.transitions) {
    if (t.epsilon()) {
      epsilon_[t.from].push_back(t.to);
    } else {
      labeled_[t.from].push_back({*t.label, t.to});
    }
  }
}

void NfaSimulator::close(std::vector<StateId>& frontier,
                         std::vector<char>& seen) const {
  std::vector<StateId> stack(frontier);
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId t : epsilon_[s]) {
      if (!seen[t]) {
        seen[t] = 1;
        frontier.push_back(t);
        stack.push_back(t);
      }
    }
  }
}

bool NfaSimulator::accepts(std::string_view input) const {
  std::vector<char> seen(state_count_, 0);
  std::vector<StateId> current{start_};
  seen[start_] = 1;
  close(current, seen);

  std::vector<StateId> next;
  for (const char c : input) {
    std::fill(seen.begin(), seen.end(), 0);
    next.clear();
    for (StateId s : current) {
      for (const Edge& e : labeled_[s]) {
        if (e.label == c && !seen[e.to]) {
          seen[e.to] = 1;
          next.push_back(e.to);
        }
      }
    }
    close(next, seen);
    current.swap(next);
    if (current.empty()) return false;
  }
  return std::find(current.begin(), current.end(), accept_) != current.end();
}

bool nfa_simulate(const Nfa& nfa, std::string_view input) {
  return NfaSimulator(nfa).accepts(input);
}

}  // namespace parem
