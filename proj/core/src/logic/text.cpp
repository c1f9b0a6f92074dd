#include "rfq/logic/text.hpp"

#include <cctype>
#include <istream>
#include <iterator>
#include <vector>

#include "rfq/error.hpp"

namespace rfq::logic {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

namespace {

bool is_name(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

// Splits on commas that are not nested inside parentheses.
std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) {
        throw ParseError("unbalanced ')' in: " + std::string(text));
      }
    } else if (c == ',' && depth == 0) {
      parts.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) {
    throw ParseError("unbalanced '(' in: " + std::string(text));
  }
  parts.push_back(trim(text.substr(start)));
  return parts;
}

}  // namespace

Term parse_term(std::string_view text) {
  text = trim(text);
  if (!is_name(text)) {
    throw ParseError("bad term: '" + std::string(text) + "'");
  }
  const char first = text.front();
  if (std::isupper(static_cast<unsigned char>(first)) || first == '_') {
    return Term::variable(text);
  }
  return Term::constant(text);
}

Atom parse_atom(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    if (!is_name(text)) {
      throw ParseError("bad atom: '" + std::string(text) + "'");
    }
    return Atom(Predicate::make(text, 0), std::span<const Term>{});
  }
  if (text.back() != ')') {
    throw ParseError("atom must end with ')': '" + std::string(text) + "'");
  }
  const auto name = trim(text.substr(0, open));
  if (!is_name(name)) {
    throw ParseError("bad predicate name in: '" + std::string(text) + "'");
  }
  const auto inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<Term> terms;
  if (!trim(inner).empty()) {
    for (auto part : split_top_level(inner)) {
      terms.push_back(parse_term(part));
    }
  }
  if (terms.size() > kMaxArity) {
    throw ParseError("too many arguments: '" + std::string(text) + "'");
  }
  return Atom(Predicate::make(name, terms.size()), terms);
}

GroundAtom parse_ground_atom(std::string_view text) {
  const Atom atom = parse_atom(text);
  if (!atom.is_ground()) {
    throw ParseError("expected a ground atom: '" + std::string(trim(text)) + "'");
  }
  GroundAtom out;
  out.predicate = atom.predicate;
  for (std::size_t i = 0; i < atom.predicate.arity; ++i) {
    out.args[i] = atom.args[i].symbol();
  }
  return out;
}

Literal parse_literal(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '!') {
    return Literal{parse_atom(text.substr(1)), true};
  }
  return Literal{parse_atom(text), false};
}

Conjunction parse_conjunction(std::string_view text) {
  text = trim(text);
  Conjunction out;
  if (text.empty() || text == "true") {
    return out;
  }
  for (auto part : split_top_level(text)) {
    out.literals.push_back(parse_literal(part));
  }
  return out;
}

State parse_state(std::string_view text) {
  State state;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const auto line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    state.add(parse_ground_atom(line));
  }
  return state;
}

State read_state(std::istream& in) {
  const std::string text(std::istreambuf_iterator<char>(in), {});
  return parse_state(text);
}

std::string format_state(const State& state) {
  std::string out;
  for (const auto& fact : state.facts()) {
    out += to_string(fact);
    out += '\n';
  }
  return out;
}

}  // namespace rfq::logic
