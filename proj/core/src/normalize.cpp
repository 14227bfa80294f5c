#include "olsub/normalize.hpp"

#include <algorithm>

#include "olsub/error.hpp"

namespace olsub::normalize {

namespace {

TermKind dual_kind(TermKind k) { return k == TermKind::Meet ? TermKind::Join : TermKind::Meet; }

// Operands of `kind` with same-kind operands spliced in place.
std::vector<TermId> flatten(const TermUniverse& u, TermKind kind, const std::vector<TermId>& kids) {
  std::vector<TermId> out;
  out.reserve(kids.size());
  for (TermId k : kids) {
    if (u.kind(k) == kind) {
      const auto cs = u.children(k);
      out.insert(out.end(), cs.begin(), cs.end());
    } else {
      out.push_back(k);
    }
  }
  return out;
}

TermId build(TermUniverse& u, TermKind kind, const std::vector<TermId>& kids) {
  return kind == TermKind::Meet ? u.meet(kids) : u.join(kids);
}

void sort_canonical(const TermUniverse& u, std::vector<TermId>& kids) {
  std::stable_sort(kids.begin(), kids.end(),
                   [&](TermId a, TermId b) { return u.compare(a, b) < 0; });
}

}  // namespace

Normalizer::Normalizer(TermUniverse& u)
    : u_(u), bl_(std::make_unique<entail::Engine>(u, AxiomSet{}, entail::Logic::Lattice)) {}

Normalizer::~Normalizer() = default;

template <typename F>
TermId Normalizer::bottom_up(TermId t, std::unordered_map<TermId, TermId>& memo, F&& at_node) {
  if (const auto it = memo.find(t); it != memo.end()) return it->second;
  std::vector<TermId> kids;
  for (TermId sub : u_.subterms(t)) {
    if (memo.contains(sub)) continue;
    kids.clear();
    for (TermId c : u_.children(sub)) kids.push_back(memo.at(c));
    memo.emplace(sub, at_node(sub, kids));
  }
  return memo.at(t);
}

TermId Normalizer::rebuild(TermId t, const std::vector<TermId>& kids) {
  const TermNode& n = u_.node(t);
  switch (n.kind) {
    case TermKind::Meet:
    case TermKind::Join: return build(u_, n.kind, kids);
    case TermKind::Not: return u_.negation(kids[0]);
    case TermKind::App: return u_.app(SymbolId{n.label}, kids);
    default: return t;
  }
}

bool Normalizer::leq_bl(TermId s, TermId t) {
  if (s == t) return true;
  ++bl_queries_;
  return bl_->leq(s, t);
}

// --- delta -----------------------------------------------------------------

TermId Normalizer::complement(TermId t) {
  if (const auto it = complement_.find(t); it != complement_.end()) return it->second;
  const TermNode n = u_.node(t);
  TermId out;
  switch (n.kind) {
    case TermKind::Var: out = u_.neg_var(u_.var_name(t)); break;
    case TermKind::NegVar: out = u_.var(u_.var_name(t)); break;
    case TermKind::Top: out = u_.bot(); break;
    case TermKind::Bot: out = u_.top(); break;
    case TermKind::Meet:
    case TermKind::Join: {
      std::vector<TermId> kids;
      kids.reserve(n.children.size());
      for (TermId c : n.children) kids.push_back(complement(c));
      out = build(u_, dual_kind(n.kind), kids);
      break;
    }
    case TermKind::Not: out = delta(n.children[0]); break;
    case TermKind::App: out = u_.app(u_.dual_symbol(SymbolId{n.label}), n.children); break;
  }
  complement_.emplace(t, out);
  return out;
}

TermId Normalizer::delta(TermId t) {
  return bottom_up(t, delta_, [&](TermId sub, const std::vector<TermId>& kids) {
    if (u_.kind(sub) == TermKind::Not) return complement(kids[0]);
    return rebuild(sub, kids);
  });
}

// --- beta ------------------------------------------------------------------

TermId Normalizer::beta_node(TermKind kind, const std::vector<TermId>& kids) {
  const TermId whole = build(u_, kind, kids);
  const TermId absorbing = kind == TermKind::Join ? u_.top() : u_.bot();
  // Join: some operand group P with delta(~P) <= whole forces whole = top.
  auto collapses = [&](TermId part) {
    const TermId c = complement(part);
    return kind == TermKind::Join ? leq_bl(c, whole) : leq_bl(whole, c);
  };
  for (TermId k : kids) {
    if (collapses(k)) return absorbing;
  }
  // Left-to-right prefixes of the canonically ordered operands, matching the
  // binary definition applied to a left-nested chain.
  std::vector<TermId> sorted = kids;
  sort_canonical(u_, sorted);
  std::vector<TermId> prefix;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    prefix.push_back(sorted[i]);
    if (prefix.size() >= 2 && collapses(build(u_, kind, prefix))) return absorbing;
  }
  return whole;
}

TermId Normalizer::beta(TermId t) {
  return bottom_up(t, beta_, [&](TermId sub, const std::vector<TermId>& kids) {
    const TermKind k = u_.kind(sub);
    if (k != TermKind::Meet && k != TermKind::Join) return rebuild(sub, kids);
    return beta_node(k, flatten(u_, k, kids));
  });
}

// --- zeta / eta ------------------------------------------------------------

std::vector<TermId> Normalizer::zeta_node(TermKind kind, std::vector<TermId> kids) {
  // Replacing an operand by a promoted one keeps the node equivalent, so all
  // tests may use the node as first built.
  const TermId whole = build(u_, kind, kids);
  const TermKind inner = dual_kind(kind);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < kids.size() && !changed; ++i) {
      if (u_.kind(kids[i]) != inner) continue;
      for (TermId c : u_.children(kids[i])) {
        const bool promote = kind == TermKind::Join ? leq_bl(c, whole) : leq_bl(whole, c);
        if (!promote) continue;
        std::vector<TermId> repl{c};
        if (u_.kind(c) == kind) repl.assign(u_.children(c).begin(), u_.children(c).end());
        kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(i));
        kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(i), repl.begin(), repl.end());
        changed = true;
        break;
      }
    }
  }
  return kids;
}

std::vector<TermId> Normalizer::eta_node(TermKind kind, const std::vector<TermId>& kids) {
  // Join keeps the <=-maximal operands, meet the <=-minimal ones; among
  // equivalent operands the first survives.
  auto below = [&](TermId a, TermId b) {
    return kind == TermKind::Join ? leq_bl(a, b) : leq_bl(b, a);
  };
  std::vector<TermId> out;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < kids.size() && !dominated; ++j) {
      if (i == j || !below(kids[i], kids[j])) continue;
      dominated = j < i || !below(kids[j], kids[i]);
    }
    if (!dominated) out.push_back(kids[i]);
  }
  return out;
}

TermId Normalizer::zeta(TermId t) {
  return bottom_up(t, zeta_, [&](TermId sub, const std::vector<TermId>& kids) {
    const TermKind k = u_.kind(sub);
    if (k != TermKind::Meet && k != TermKind::Join) return rebuild(sub, kids);
    return build(u_, k, zeta_node(k, flatten(u_, k, kids)));
  });
}

TermId Normalizer::eta(TermId t) {
  return bottom_up(t, eta_, [&](TermId sub, const std::vector<TermId>& kids) {
    const TermKind k = u_.kind(sub);
    if (k != TermKind::Meet && k != TermKind::Join) return rebuild(sub, kids);
    std::vector<TermId> kept = eta_node(k, flatten(u_, k, kids));
    sort_canonical(u_, kept);
    return build(u_, k, kept);
  });
}

// --- full pipelines --------------------------------------------------------

TermId Normalizer::normalize_bl(TermId t) {
  return bottom_up(t, bl_nf_, [&](TermId sub, const std::vector<TermId>& kids) {
    const TermKind k = u_.kind(sub);
    if (k == TermKind::Not) {
      throw Error(ErrorCode::NegationPresent, "negation is not part of the bounded-lattice signature");
    }
    if (k != TermKind::Meet && k != TermKind::Join) return rebuild(sub, kids);
    // Operands are already normal; a collapsed operand of the same kind is
    // spliced before promotion and reduction run on this node.
    std::vector<TermId> kept = eta_node(k, zeta_node(k, flatten(u_, k, kids)));
    sort_canonical(u_, kept);
    return build(u_, k, kept);
  });
}

TermId Normalizer::normalize_ol(TermId t) {
  if (const auto it = ol_nf_.find(t); it != ol_nf_.end()) return it->second;
  const TermId out = normalize_bl(beta(delta(t)));
  ol_nf_.emplace(t, out);
  return out;
}

TermId delta(TermUniverse& u, TermId t) { return Normalizer(u).delta(t); }
TermId beta(TermUniverse& u, TermId t) { return Normalizer(u).beta(t); }
TermId zeta(TermUniverse& u, TermId t) { return Normalizer(u).zeta(t); }
TermId eta(TermUniverse& u, TermId t) { return Normalizer(u).eta(t); }
TermId normalize_bl(TermUniverse& u, TermId t) { return Normalizer(u).normalize_bl(t); }
TermId normalize_ol(TermUniverse& u, TermId t) { return Normalizer(u).normalize_ol(t); }

}  // namespace olsub::normalize
