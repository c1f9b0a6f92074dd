#include "rfq/logic/mode.hpp"

#include <algorithm>

#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"

namespace rfq::logic {

ModeDecl parse_mode(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw ParseError("bad mode declaration: '" + std::string(text) + "'");
  }
  ModeDecl mode;
  const auto name = trim(text.substr(0, open));
  auto inner = text.substr(open + 1, text.size() - open - 2);
  while (!trim(inner).empty()) {
    const auto comma = inner.find(',');
    auto arg = trim(inner.substr(0, comma));
    inner = comma == std::string_view::npos ? std::string_view{} : inner.substr(comma + 1);
    if (arg.size() < 2) {
      throw ParseError("bad mode argument in: '" + std::string(text) + "'");
    }
    ArgSpec spec;
    switch (arg.front()) {
      case '+': spec.mode = ArgMode::Input; break;
      case '-': spec.mode = ArgMode::Output; break;
      case '#': spec.mode = ArgMode::Constant; break;
      default: throw ParseError("mode argument must start with +, - or #: '" + std::string(arg) + "'");
    }
    spec.type = Symbol::intern(arg.substr(1));
    mode.args.push_back(spec);
  }
  mode.predicate = Predicate::make(name, mode.args.size());
  return mode;
}

std::string to_string(const ModeDecl& m) {
  std::string out(m.predicate.name.name());
  out += '(';
  for (std::size_t i = 0; i < m.args.size(); ++i) {
    if (i != 0) {
      out += ',';
    }
    switch (m.args[i].mode) {
      case ArgMode::Input: out += '+'; break;
      case ArgMode::Output: out += '-'; break;
      case ArgMode::Constant: out += '#'; break;
    }
    out += m.args[i].type.name();
  }
  return out + ")";
}

Symbol action_variable(std::size_t position) {
  static constexpr std::string_view kNames = "ABCDEFGH";
  if (position >= kNames.size()) {
    throw BiasError("action has too many arguments");
  }
  return Symbol::intern(kNames.substr(position, 1));
}

std::vector<Symbol> ActionSignature::variables() const {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < predicate.arity; ++i) {
    out.push_back(action_variable(i));
  }
  return out;
}

void LanguageBias::validate() const {
  for (const auto& p : vocabulary) {
    const auto n = std::ranges::count_if(modes, [&](const ModeDecl& m) { return m.predicate == p; });
    if (n == 0) {
      throw BiasError("predicate " + to_string(p) + " has no mode declaration");
    }
    if (n > 1) {
      throw BiasError("predicate " + to_string(p) + " has more than one mode declaration");
    }
  }
  for (const auto& m : modes) {
    if (m.args.size() != m.predicate.arity) {
      throw BiasError("mode " + to_string(m) + " does not match the predicate arity");
    }
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].arg_types.size() != actions[i].predicate.arity) {
      throw BiasError("action " + to_string(actions[i].predicate) + " has mismatched argument types");
    }
    for (std::size_t j = i + 1; j < actions.size(); ++j) {
      if (actions[i].predicate == actions[j].predicate) {
        throw BiasError("duplicate action type " + to_string(actions[i].predicate));
      }
    }
  }
}

const ModeDecl& LanguageBias::mode_for(const Predicate& p) const {
  auto it = std::ranges::find_if(modes, [&](const ModeDecl& m) { return m.predicate == p; });
  if (it == modes.end()) {
    throw BiasError("predicate " + to_string(p) + " has no mode declaration");
  }
  return *it;
}

const ActionSignature& LanguageBias::action(const Predicate& p) const {
  auto it = std::ranges::find_if(actions, [&](const ActionSignature& a) { return a.predicate == p; });
  if (it == actions.end()) {
    throw BiasError("unknown action type " + to_string(p));
  }
  return *it;
}

std::vector<Symbol> LanguageBias::constants_of(Symbol type) const {
  std::vector<Symbol> out;
  for (const auto& [t, c] : constants) {
    if (t == type) {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace rfq::logic
