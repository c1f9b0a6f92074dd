#pragma once

#include <initializer_list>
#include <string_view>

#include "rfq/logic/mode.hpp"

namespace rfq::domains::detail {

inline logic::LanguageBias make_bias(std::initializer_list<std::string_view> modes) {
  logic::LanguageBias bias;
  for (auto text : modes) {
    auto mode = logic::parse_mode(text);
    bias.vocabulary.push_back(mode.predicate);
    bias.modes.push_back(std::move(mode));
  }
  return bias;
}

inline logic::ActionSignature make_action(std::string_view name, std::initializer_list<std::string_view> types) {
  logic::ActionSignature a;
  a.predicate = logic::Predicate::make(name, types.size());
  for (auto t : types) {
    a.arg_types.push_back(logic::Symbol::intern(t));
  }
  return a;
}

}  // namespace rfq::domains::detail
