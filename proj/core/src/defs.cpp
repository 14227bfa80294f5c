#include "olsub/defs.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "olsub/error.hpp"

namespace olsub::defs {

namespace {

// Polarity of a position relative to the root; Invariant absorbs everything.
Variance compose(Variance outer, Variance inner) {
  if (outer == Variance::Invariant || inner == Variance::Invariant) return Variance::Invariant;
  return outer == inner ? Variance::Covariant : Variance::Contravariant;
}

// Per-parameter occurrence polarity; nullopt when the parameter is absent.
std::vector<std::optional<Variance>> occurrences(const TermUniverse& u, TermId body,
                                                 const std::vector<std::string>& params) {
  std::vector<std::optional<Variance>> seen(params.size());
  auto record = [&](std::string_view name, Variance pol) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i] != name) continue;
      if (!seen[i]) {
        seen[i] = pol;
      } else if (*seen[i] != pol) {
        seen[i] = Variance::Invariant;
      }
    }
  };

  std::unordered_set<std::uint64_t> visited;
  std::vector<std::pair<TermId, Variance>> stack{{body, Variance::Covariant}};
  while (!stack.empty()) {
    auto [t, pol] = stack.back();
    stack.pop_back();
    const std::uint64_t key = (std::uint64_t{t.value} << 2) | static_cast<std::uint64_t>(pol);
    if (!visited.insert(key).second) continue;
    const TermNode& n = u.node(t);
    switch (n.kind) {
      case TermKind::Var: record(u.var_name(t), pol); break;
      case TermKind::NegVar: record(u.var_name(t), flip(pol)); break;
      case TermKind::Top:
      case TermKind::Bot: break;
      case TermKind::Meet:
      case TermKind::Join:
        for (TermId c : n.children) stack.emplace_back(c, pol);
        break;
      case TermKind::Not: stack.emplace_back(n.children[0], flip(pol)); break;
      case TermKind::App: {
        const SymbolDecl& d = u.symbol(SymbolId{n.label});
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          stack.emplace_back(n.children[i], compose(pol, d.variances[i]));
        }
        break;
      }
    }
  }
  return seen;
}

bool mentions_symbol(const TermUniverse& u, TermId t, SymbolId s) {
  for (TermId sub : u.subterms(t)) {
    if (u.kind(sub) != TermKind::App) continue;
    const SymbolId f = u.app_symbol(sub);
    if (f == s) return true;
    const auto& dual = u.symbol(f).dual_of;
    if (dual && *dual == s) return true;
  }
  return false;
}

class Substituter {
 public:
  Substituter(TermUniverse& u, const Substitution& s) : u_(u), s_(s) {}

  TermId run(TermId t) {
    for (TermId sub : u_.subterms(t)) {
      if (!done_.contains(sub)) done_.emplace(sub, rebuild(sub));
    }
    return done_.at(t);
  }

 private:
  TermId rebuild(TermId t) {
    const TermNode& n = u_.node(t);
    std::vector<TermId> kids;
    kids.reserve(n.children.size());
    for (TermId c : n.children) kids.push_back(done_.at(c));
    switch (n.kind) {
      case TermKind::Var:
      case TermKind::NegVar:
      case TermKind::Top:
      case TermKind::Bot: return t;
      case TermKind::Meet: return u_.meet(kids);
      case TermKind::Join: return u_.join(kids);
      case TermKind::Not: return u_.negation(kids[0]);
      case TermKind::App: {
        const SymbolId f{n.label};
        if (f == s_.symbol) return instantiate(kids);
        const auto& dual = u_.symbol(f).dual_of;
        if (dual && *dual == s_.symbol) return u_.negation(instantiate(kids));
        return u_.app(f, kids);
      }
    }
    return t;
  }

  // Simultaneous replacement of the parameters, so argument variables that
  // happen to share a parameter's name are never captured.
  TermId instantiate(const std::vector<TermId>& args) {
    std::unordered_map<TermId, TermId> memo;
    for (TermId sub : u_.subterms(s_.body)) {
      const TermNode& n = u_.node(sub);
      TermId out = sub;
      switch (n.kind) {
        case TermKind::Var:
        case TermKind::NegVar: {
          const auto it = std::find(s_.params.begin(), s_.params.end(), u_.var_name(sub));
          if (it != s_.params.end()) {
            const TermId arg = args[static_cast<std::size_t>(it - s_.params.begin())];
            out = n.kind == TermKind::Var ? arg : u_.negation(arg);
          }
          break;
        }
        case TermKind::Top:
        case TermKind::Bot: break;
        default: {
          std::vector<TermId> kids;
          kids.reserve(n.children.size());
          for (TermId c : n.children) kids.push_back(memo.at(c));
          if (n.kind == TermKind::Meet) {
            out = u_.meet(kids);
          } else if (n.kind == TermKind::Join) {
            out = u_.join(kids);
          } else if (n.kind == TermKind::Not) {
            out = u_.negation(kids[0]);
          } else {
            out = u_.app(SymbolId{n.label}, kids);
          }
        }
      }
      memo.emplace(sub, out);
    }
    return memo.at(s_.body);
  }

  TermUniverse& u_;
  const Substitution& s_;
  std::unordered_map<TermId, TermId> done_;
};

}  // namespace

std::vector<Variance> infer_variances(const TermUniverse& u, TermId body,
                                      const std::vector<std::string>& params) {
  std::vector<Variance> out;
  out.reserve(params.size());
  for (const auto& v : occurrences(u, body, params)) out.push_back(v.value_or(Variance::Covariant));
  return out;
}

bool variance_compatible(Variance declared, Variance used) {
  return declared == Variance::Invariant || declared == used;
}

TermId substitute(TermUniverse& u, TermId t, const Substitution& s) {
  const SymbolDecl& decl = u.symbol(s.symbol);
  if (decl.arity() != s.params.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "substitution for '" + decl.name + "' has " + std::to_string(s.params.size()) +
                    " holes, symbol has arity " + std::to_string(decl.arity()));
  }
  const auto used = occurrences(u, s.body, s.params);
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i] && !variance_compatible(decl.variances[i], *used[i])) {
      throw Error(ErrorCode::VarianceMismatch,
                  "hole '" + s.params[i] + "' is used with variance " +
                      variance_char(*used[i]) + " but '" + decl.name + "' declares " +
                      variance_char(decl.variances[i]));
    }
  }
  return Substituter(u, s).run(t);
}

Desugared desugar(TermUniverse& u, const std::vector<Definition>& definitions, TermId lhs,
                  TermId rhs, const AxiomSet& axioms) {
  for (std::size_t i = 0; i < definitions.size(); ++i) {
    for (std::size_t j = i; j < definitions.size(); ++j) {
      if (mentions_symbol(u, definitions[i].bound, definitions[j].symbol)) {
        throw Error(ErrorCode::RecursiveDefinition,
                    "bound of '" + u.symbol(definitions[i].symbol).name + "' mentions '" +
                        u.symbol(definitions[j].symbol).name + "'");
      }
    }
  }

  Desugared out{lhs, rhs, axioms, {}};
  std::vector<TermId> bounds;
  for (const Definition& d : definitions) bounds.push_back(d.bound);

  for (std::size_t i = 0; i < definitions.size(); ++i) {
    const Definition& d = definitions[i];
    const SymbolDecl decl = u.symbol(d.symbol);
    std::string fresh = decl.name + "'";
    while (u.find_symbol(fresh)) fresh += "'";
    const SymbolId fresh_id = u.declare_internal_symbol(fresh, decl.name, decl.variances);
    out.fresh_symbols.push_back(fresh_id);

    std::vector<TermId> holes;
    holes.reserve(d.params.size());
    for (const std::string& p : d.params) holes.push_back(u.var(p));
    const TermId opaque = u.app(fresh_id, holes);
    const TermId body =
        d.kind == BoundKind::Upper ? u.meet(bounds[i], opaque) : u.join(bounds[i], opaque);

    const Substitution s{d.symbol, d.params, body};
    out.lhs = substitute(u, out.lhs, s);
    out.rhs = substitute(u, out.rhs, s);
    AxiomSet next;
    for (const Axiom& a : out.axioms) next.add_leq(substitute(u, a.lhs, s), substitute(u, a.rhs, s));
    out.axioms = std::move(next);
    for (std::size_t j = i + 1; j < definitions.size(); ++j) bounds[j] = substitute(u, bounds[j], s);
  }
  return out;
}

}  // namespace olsub::defs
