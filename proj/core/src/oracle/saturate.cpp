#include "olsub/oracle/saturate.hpp"

#include <algorithm>

namespace olsub::oracle {

namespace {

using entail::Sequent;

constexpr std::uint32_t L = 0;
constexpr std::uint32_t R = 1;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (b < a) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

Saturation::Saturation(TermUniverse& u, std::span<const TermId> goal_terms, const AxiomSet& axioms)
    : u_(u) {
  // Rewrite NegVar x to ~x and a dual application to ~F(...).
  auto lower = [&](TermId root) {
    for (TermId t : u.subterms(root)) {
      if (lowered_.contains(t)) continue;
      const TermNode n = u.node(t);
      std::vector<TermId> kids;
      for (TermId c : n.children) kids.push_back(lowered_.at(c));
      TermId out = t;
      switch (n.kind) {
        case TermKind::NegVar: out = u.negation(u.var(u.var_name(t))); break;
        case TermKind::Meet: out = u.meet(kids); break;
        case TermKind::Join: out = u.join(kids); break;
        case TermKind::Not: out = u.negation(kids[0]); break;
        case TermKind::App: {
          const SymbolDecl& d = u.symbol(SymbolId{n.label});
          out = d.is_dual() ? u.negation(u.app(*d.dual_of, kids)) : u.app(SymbolId{n.label}, kids);
          break;
        }
        default: break;
      }
      lowered_.emplace(t, out);
    }
    return lowered_.at(root);
  };

  std::vector<TermId> roots;
  for (TermId t : goal_terms) roots.push_back(lower(t));
  AxiomSet lowered_axioms;
  for (const Axiom& a : axioms) {
    const TermId lhs = lower(a.lhs);
    const TermId rhs = lower(a.rhs);
    lowered_axioms.add_leq(lhs, rhs);
    roots.push_back(lhs);
    roots.push_back(rhs);
  }
  for (TermId root : roots) {
    for (TermId t : u.subterms(root)) {
      if (index_.emplace(t, static_cast<std::uint32_t>(terms_.size())).second) terms_.push_back(t);
    }
  }
  parents_.resize(terms_.size());
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    for (TermId c : u.children(terms_[i])) {
      auto& ps = parents_[index_.at(c)];
      if (std::find(ps.begin(), ps.end(), i) == ps.end()) ps.push_back(i);
    }
  }
  slots_ = 2 * terms_.size();
  bits_.assign(slots_ * slots_, 0);
  run(lowered_axioms);
}

void Saturation::add(Slot a, Slot b) {
  if (has(a, b)) return;
  bits_[a * slots_ + b] = 1;
  bits_[b * slots_ + a] = 1;
  ++facts_;
  queue_.emplace_back(a, b);
}

void Saturation::run(const AxiomSet& axioms) {
  auto slot = [&](TermId t, std::uint32_t side) { return index_.at(t) * 2 + side; };

  for (const Axiom& a : axioms) axiom_slots_.emplace_back(slot(a.lhs, R), slot(a.rhs, L));

  // Congruence instances for every same-symbol pair of applications.
  std::vector<std::uint32_t> apps;
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    if (u_.kind(terms_[i]) == TermKind::App) apps.push_back(i);
  }
  for (std::uint32_t l : apps) {
    for (std::uint32_t r : apps) {
      const TermNode& ln = u_.node(terms_[l]);
      const TermNode& rn = u_.node(terms_[r]);
      if (ln.label != rn.label) continue;
      const SymbolDecl& d = u_.symbol(SymbolId{ln.label});
      Congruence c{l * 2 + L, r * 2 + R, {}};
      for (std::size_t i = 0; i < d.arity(); ++i) {
        const std::uint32_t s = index_.at(ln.children[i]);
        const std::uint32_t t = index_.at(rn.children[i]);
        if (d.variances[i] != Variance::Contravariant) c.premises.emplace_back(s * 2 + L, t * 2 + R);
        if (d.variances[i] != Variance::Covariant) c.premises.emplace_back(t * 2 + L, s * 2 + R);
      }
      const auto id = static_cast<std::uint32_t>(congruences_.size());
      for (auto [a, b] : c.premises) congruence_index_[pair_key(a, b)].push_back(id);
      congruences_.push_back(std::move(c));
    }
  }

  // Axiom-free leaves.
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    add(i * 2 + L, i * 2 + R);
    const TermKind k = u_.kind(terms_[i]);
    for (Slot z = 0; z < slots_; ++z) {
      if (k == TermKind::Bot) add(i * 2 + L, z);
      if (k == TermKind::Top) add(i * 2 + R, z);
    }
  }
  for (const Congruence& c : congruences_) {
    if (c.premises.empty()) add(c.conclusion_l, c.conclusion_r);
  }
  for (auto [ur, vl] : axiom_slots_) add(ur - R + L, vl - L + R);

  while (!queue_.empty()) {
    const auto [a, b] = queue_.back();
    queue_.pop_back();

    fire(a, b);
    if (a != b) fire(b, a);

    // Replace: {X, X} gives {X, Z} for every Z.
    if (a == b) {
      for (Slot z = 0; z < slots_; ++z) add(a, z);
    }

    // AxiomCut: {G, U^R} and {V^L, D} give {G, D}.
    for (auto [ur, vl] : axiom_slots_) {
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        if (x == ur) {
          for (Slot z = 0; z < slots_; ++z) {
            if (has(vl, z)) add(y, z);
          }
        }
        if (x == vl) {
          for (Slot z = 0; z < slots_; ++z) {
            if (has(z, ur)) add(z, y);
          }
        }
      }
    }

    if (const auto it = congruence_index_.find(pair_key(a, b)); it != congruence_index_.end()) {
      for (std::uint32_t id : it->second) {
        const Congruence& c = congruences_[id];
        const bool ready = std::all_of(c.premises.begin(), c.premises.end(),
                                       [&](const auto& p) { return has(p.first, p.second); });
        if (ready) add(c.conclusion_l, c.conclusion_r);
      }
    }
  }
}

// Logical rules in which the fact's component `p` is the active premise term
// and `g` the untouched context.
void Saturation::fire(Slot p, Slot g) {
  const std::uint32_t term = p / 2;
  const std::uint32_t side = p % 2;
  for (std::uint32_t q : parents_[term]) {
    const TermNode& n = u_.node(terms_[q]);
    auto all_children = [&](std::uint32_t s) {
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](TermId c) { return has(g, index_.at(c) * 2 + s); });
    };
    switch (n.kind) {
      case TermKind::Meet:
        if (side == L) {
          add(g, q * 2 + L);
        } else if (all_children(R)) {
          add(g, q * 2 + R);
        }
        break;
      case TermKind::Join:
        if (side == R) {
          add(g, q * 2 + R);
        } else if (all_children(L)) {
          add(g, q * 2 + L);
        }
        break;
      case TermKind::Not: add(g, q * 2 + (side == R ? L : R)); break;
      default: break;
    }
  }
}

bool Saturation::contains(Sequent s) const {
  auto slot = [&](entail::AnnotatedTerm x) -> std::optional<Slot> {
    const auto low = lowered_.find(x.term);
    const TermId t = low == lowered_.end() ? x.term : low->second;
    const auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second * 2 + static_cast<Slot>(x.side);
  };
  const auto a = slot(s.first());
  const auto b = slot(s.second());
  return a && b && has(*a, *b);
}

}  // namespace olsub::oracle
