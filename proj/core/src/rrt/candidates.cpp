#include "rfq/rrt/candidates.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "rfq/error.hpp"

namespace rfq::rrt {

using logic::ArgMode;
using logic::Conjunction;
using logic::LanguageBias;
using logic::Literal;
using logic::Symbol;
using logic::Term;

namespace {

struct FilledLiteral {
  Literal literal;
  std::vector<TypedVariable> fresh;
};

Symbol fresh_variable(std::size_t index) { return Symbol::intern("V" + std::to_string(index)); }

// Every mode-legal filling of every vocabulary predicate, first argument
// varying slowest.
std::vector<FilledLiteral> fill_literals(std::span<const TypedVariable> context, const LanguageBias& bias,
                                         std::size_t fresh_base) {
  struct Option {
    Term term;
    bool fresh = false;
    Symbol type;
  };

  std::vector<FilledLiteral> out;
  for (const auto& predicate : bias.vocabulary) {
    const auto& mode = bias.mode_for(predicate);
    const std::size_t arity = predicate.arity;
    std::vector<std::vector<Option>> options(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      const auto& spec = mode.args[i];
      if (spec.mode == ArgMode::Constant) {
        for (Symbol c : bias.constants_of(spec.type)) {
          options[i].push_back({Term::constant(c), false, spec.type});
        }
        continue;
      }
      for (const auto& v : context) {
        if (v.type == spec.type) {
          options[i].push_back({Term::variable(v.variable), false, spec.type});
        }
      }
      if (spec.mode == ArgMode::Output) {
        options[i].push_back({Term{}, true, spec.type});
      }
    }
    if (std::ranges::any_of(options, [](const auto& o) { return o.empty(); })) {
      continue;
    }

    std::vector<std::size_t> pick(arity, 0);
    for (bool done = false; !done;) {
      FilledLiteral filled;
      std::array<Term, logic::kMaxArity> terms{};
      bool anchored = arity == 0;
      bool repeated = false;
      for (std::size_t i = 0; i < arity; ++i) {
        const Option& opt = options[i][pick[i]];
        if (opt.fresh) {
          const Symbol var = fresh_variable(fresh_base + filled.fresh.size());
          filled.fresh.push_back({var, opt.type});
          terms[i] = Term::variable(var);
          continue;
        }
        anchored = true;
        if (opt.term.is_variable() && std::find(terms.begin(), terms.begin() + i, opt.term) != terms.begin() + i) {
          repeated = true;
        }
        terms[i] = opt.term;
      }
      if (anchored && !repeated) {
        filled.literal = Literal{logic::Atom(predicate, std::span<const Term>(terms.data(), arity)), false};
        out.push_back(std::move(filled));
      }

      done = true;
      for (std::size_t pos = arity; pos-- > 0;) {
        if (++pick[pos] < options[pos].size()) {
          done = false;
          break;
        }
        pick[pos] = 0;
      }
    }
  }
  return out;
}

bool mentions_any(const Literal& lit, std::span<const TypedVariable> vars) {
  return std::ranges::any_of(lit.atom.arguments(), [&](const Term& t) {
    return t.is_variable() && std::ranges::any_of(vars, [&](const TypedVariable& v) { return v.variable == t.symbol(); });
  });
}

class CandidateSink {
 public:
  void emit(Conjunction conj, std::vector<TypedVariable> introduced) {
    if (seen_.insert(logic::to_string(conj)).second) {
      out_.push_back(SplitTest{std::move(conj), std::move(introduced)});
    }
  }
  std::vector<SplitTest> take() { return std::move(out_); }

 private:
  std::unordered_set<std::string> seen_;
  std::vector<SplitTest> out_;
};

void extend(const Conjunction& prefix, std::vector<TypedVariable> context, const std::vector<TypedVariable>& introduced,
            std::size_t remaining, const LanguageBias& bias, CandidateSink& sink) {
  for (auto& filled : fill_literals(context, bias, context.size())) {
    if (!mentions_any(filled.literal, introduced)) {
      continue;
    }
    if (std::ranges::find(prefix.literals, filled.literal) != prefix.literals.end()) {
      continue;
    }
    Conjunction conj = prefix;
    conj.literals.push_back(filled.literal);
    auto now_introduced = introduced;
    now_introduced.insert(now_introduced.end(), filled.fresh.begin(), filled.fresh.end());
    sink.emit(conj, now_introduced);
    if (filled.fresh.empty()) {
      Conjunction negated = prefix;
      negated.literals.push_back(Literal{filled.literal.atom, true});
      sink.emit(std::move(negated), introduced);
    }
    if (remaining > 1) {
      auto next_context = context;
      next_context.insert(next_context.end(), filled.fresh.begin(), filled.fresh.end());
      extend(conj, std::move(next_context), now_introduced, remaining - 1, bias, sink);
    }
  }
}

}  // namespace

std::vector<SplitTest> generate_candidates(std::span<const TypedVariable> context, const LanguageBias& bias,
                                           std::size_t max_len) {
  bias.validate();
  CandidateSink sink;
  if (max_len == 0) {
    return {};
  }
  const std::vector<TypedVariable> base(context.begin(), context.end());
  for (auto& filled : fill_literals(base, bias, base.size())) {
    Conjunction single;
    single.literals.push_back(filled.literal);
    sink.emit(single, filled.fresh);
    if (filled.fresh.empty()) {
      Conjunction negated;
      negated.literals.push_back(Literal{filled.literal.atom, true});
      sink.emit(std::move(negated), {});
      continue;
    }
    if (max_len > 1) {
      auto next_context = base;
      next_context.insert(next_context.end(), filled.fresh.begin(), filled.fresh.end());
      extend(single, std::move(next_context), filled.fresh, max_len - 1, bias, sink);
    }
  }
  return sink.take();
}

std::vector<TypedVariable> action_context(const logic::ActionSignature& action) {
  std::vector<TypedVariable> out;
  const auto vars = action.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    out.push_back({vars[i], action.arg_types[i]});
  }
  return out;
}

}  // namespace rfq::rrt
