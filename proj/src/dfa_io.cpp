#include <charconv>
#include <string>
#include <vector>

#include "parem/dfa.hpp"
#include "parem/error.hpp"

namespace parem {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::ParseError,
               "line " + std::to_string(line) + ": " + what, line);
}

StateId parse_id(std::string_view field, std::size_t line) {
  StateId value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last || value < 0) {
    throw parse_error(line, "expected a state id, got '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string export_dfa_table(const Dfa& dfa) {
  std::string out = "symbols";
  for (char c : dfa.alphabet()) {
    out.push_back('\t');
    out.push_back(c);
  }
  out += "\nstart\t" + std::to_string(dfa.start()) + "\nfinals";
  for (StateId f : dfa.finals()) out += "\t" + std::to_string(f);
  out.push_back('\n');

  const std::size_t k = dfa.symbol_count();
  for (std::size_t s = 0; s < dfa.state_count(); ++s) {
    out += std::to_string(s);
    for (std::size_t c = 0; c < k; ++c) {
      const StateId t = dfa.next(static_cast<StateId>(s), c);
      out.push_back('\t');
      out += t == kDead ? std::string("-") : std::to_string(t);
    }
    out.push_back('\n');
  }
  return out;
}

Dfa load_dfa_table(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    const std::size_t nl = text.find('\n', begin);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(begin));
      break;
    }
    lines.push_back(text.substr(begin, nl - begin));
    begin = nl + 1;
  }
  if (lines.size() < 3) {
    throw parse_error(lines.size() + 1, "expected symbols, start and finals lines");
  }

  const auto header = [&](std::size_t index, std::string_view keyword) {
    auto fields = split_tabs(lines[index]);
    if (fields.front() != keyword) {
      throw parse_error(index + 1, "expected '" + std::string(keyword) + "'");
    }
    fields.erase(fields.begin());
    return fields;
  };

  std::vector<char> alphabet;
  for (std::string_view symbol : header(0, "symbols")) {
    if (symbol.size() != 1) {
      throw parse_error(1, "symbols must be single characters, got '" +
                               std::string(symbol) + "'");
    }
    alphabet.push_back(symbol.front());
  }

  const auto start_fields = header(1, "start");
  if (start_fields.size() != 1) throw parse_error(2, "expected exactly one start state");
  const StateId start = parse_id(start_fields.front(), 2);

  std::vector<StateId> finals;
  for (std::string_view f : header(2, "finals")) finals.push_back(parse_id(f, 3));

  const std::size_t k = alphabet.size();
  std::vector<StateId> table;
  std::size_t state_count = 0;
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split_tabs(lines[i]);
    if (fields.size() != k + 1) {
      throw parse_error(line_no, "expected " + std::to_string(k + 1) +
                                     " fields, got " + std::to_string(fields.size()));
    }
    if (parse_id(fields.front(), line_no) != static_cast<StateId>(state_count)) {
      throw parse_error(line_no, "rows must be listed in state order starting at 0");
    }
    for (std::size_t c = 1; c <= k; ++c) {
      table.push_back(fields[c] == "-" ? kDead : parse_id(fields[c], line_no));
    }
    ++state_count;
  }

  return Dfa(std::move(alphabet), state_count, std::move(table), start,
             std::move(finals));
}

std::string export_dot(const Dfa& dfa) {
  std::string out = "digraph dfa {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < dfa.state_count(); ++s) {
    const auto id = static_cast<StateId>(s);
    out += "  " + std::to_string(s) + " [shape=" +
           (dfa.is_final(id) ? "doublecircle" : "circle") +
           (id == dfa.start() ? ", style=bold" : "") + "];\n";
  }
  const auto alphabet = dfa.alphabet();
  for (std::size_t s = 0; s < dfa.state_count(); ++s) {
    for (std::size_t c = 0; c < alphabet.size(); ++c) {
      const StateId t = dfa.next(static_cast<StateId>(s), c);
      if (t == kDead) continue;
      std::string label(1, alphabet[c]);
      if (label == "\"" || label == "\\") label.insert(0, "\\");
      out += "  " + std::to_string(s) + " -> " + std::to_string(t) +
             " [label=\"" + label + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace parem
