#include "olsub/entail.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <unordered_map>

#include "olsub/error.hpp"

namespace olsub::entail {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Hyp: return "Hyp";
    case Rule::LeftBot: return "LeftBot";
    case Rule::RightTop: return "RightTop";
    case Rule::LeftAnd: return "LeftAnd";
    case Rule::RightAnd: return "RightAnd";
    case Rule::LeftOr: return "LeftOr";
    case Rule::RightOr: return "RightOr";
    case Rule::LeftNot: return "LeftNot";
    case Rule::RightNot: return "RightNot";
    case Rule::Replace: return "Replace";
    case Rule::FRule: return "F-rule";
    case Rule::AxiomCut: return "AxiomCut";
    case Rule::Axiom: return "Axiom";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ClauseSet

std::uint32_t ClauseSet::intern(Sequent s, bool* inserted) {
  const auto [it, fresh] = index_.try_emplace(s.key(), static_cast<std::uint32_t>(sequents_.size()));
  if (fresh) sequents_.push_back(s.key());
  if (inserted) *inserted = fresh;
  return it->second;
}

std::optional<std::uint32_t> ClauseSet::find(Sequent s) const {
  const auto it = index_.find(s.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ClauseSet::add(std::uint32_t head, std::span<const std::uint32_t> body, RuleTag tag) {
  const auto begin = static_cast<std::uint32_t>(literals_.size());
  literals_.insert(literals_.end(), body.begin(), body.end());
  clauses_.push_back({head, begin, static_cast<std::uint32_t>(literals_.size()), tag});
}

HornClause ClauseSet::operator[](std::size_t i) const {
  const Record& r = clauses_[i];
  return {r.head, std::span<const std::uint32_t>(literals_.data() + r.begin, r.end - r.begin),
          r.tag};
}

// ---------------------------------------------------------------------------
// Engine: clause generation

Engine::Engine(const TermUniverse& u, AxiomSet axioms, Logic logic)
    : u_(u), axioms_(std::move(axioms)), logic_(logic) {
  if (logic_ == Logic::Lattice && !axioms_.empty()) {
    throw Error(ErrorCode::AxiomsNotSupported, "the lattice engine takes no axioms");
  }
}

std::uint32_t Engine::visit(Sequent s) {
  bool fresh = false;
  const std::uint32_t i = clauses_.intern(s, &fresh);
  if (fresh) {
    pending_.push_back(i);
    proved_.push_back(0);
    derived_by_.push_back(kNone);
    watches_.emplace_back();
  }
  return i;
}

void Engine::emit(std::uint32_t head, RuleTag tag, std::initializer_list<Sequent> body) {
  scratch_.clear();
  for (Sequent s : body) scratch_.push_back(visit(s));
  clauses_.add(head, scratch_, tag);
}

void Engine::emit(std::uint32_t head, RuleTag tag, const std::vector<Sequent>& body) {
  scratch_.clear();
  for (Sequent s : body) scratch_.push_back(visit(s));
  clauses_.add(head, scratch_, tag);
}

void Engine::expand(std::uint32_t index) {
  const Sequent s = clauses_.sequent(index);
  if (logic_ == Logic::Ortho) {
    expand_ortho(s, index);
  } else {
    expand_lattice(s, index);
  }
}

void Engine::expand_ortho(Sequent s, std::uint32_t head) {
  const AnnotatedTerm a = s.first();
  const AnnotatedTerm b = s.second();

  if (a.term == b.term && a.side != b.side) emit(head, {Rule::Hyp, 0}, {});
  for (AnnotatedTerm x : {a, b}) {
    const TermKind k = u_.kind(x.term);
    if (k == TermKind::Bot && x.side == Side::L) emit(head, {Rule::LeftBot, 0}, {});
    if (k == TermKind::Top && x.side == Side::R) emit(head, {Rule::RightTop, 0}, {});
  }

  // Logical rules with principal p and context g.
  const int principals = a == b ? 1 : 2;
  for (int which = 0; which < principals; ++which) {
    const AnnotatedTerm p = which == 0 ? a : b;
    const AnnotatedTerm g = which == 0 ? b : a;
    const TermNode& n = u_.node(p.term);
    switch (n.kind) {
      case TermKind::Meet:
        if (p.side == Side::L) {
          for (TermId c : n.children) emit(head, {Rule::LeftAnd, 0}, {Sequent(g, left(c))});
        } else {
          std::vector<Sequent> body;
          for (TermId c : n.children) body.emplace_back(g, right(c));
          emit(head, {Rule::RightAnd, 0}, body);
        }
        break;
      case TermKind::Join:
        if (p.side == Side::L) {
          std::vector<Sequent> body;
          for (TermId c : n.children) body.emplace_back(g, left(c));
          emit(head, {Rule::LeftOr, 0}, body);
        } else {
          for (TermId c : n.children) emit(head, {Rule::RightOr, 0}, {Sequent(g, right(c))});
        }
        break;
      case TermKind::Not:
      case TermKind::NegVar:
      case TermKind::App: {
        const TermId inner = n.kind == TermKind::Not ? n.children[0] : u_.negand(p.term);
        if (!inner.valid()) break;
        if (p.side == Side::L) {
          emit(head, {Rule::LeftNot, 0}, {Sequent(g, right(inner))});
        } else {
          emit(head, {Rule::RightNot, 0}, {Sequent(g, left(inner))});
        }
        break;
      }
      default: break;
    }
  }

  if (a.side != b.side) {
    const AnnotatedTerm l = a.side == Side::L ? a : b;
    const AnnotatedTerm r = a.side == Side::L ? b : a;
    const TermNode& ln = u_.node(l.term);
    const TermNode& rn = u_.node(r.term);
    if (ln.kind == TermKind::App && rn.kind == TermKind::App && ln.label == rn.label &&
        !u_.symbol(SymbolId{ln.label}).is_dual()) {
      const SymbolDecl& d = u_.symbol(SymbolId{ln.label});
      std::vector<Sequent> body;
      for (std::size_t i = 0; i < d.arity(); ++i) {
        const TermId si = ln.children[i];
        const TermId ti = rn.children[i];
        switch (d.variances[i]) {
          case Variance::Covariant: body.push_back(Sequent::leq(si, ti)); break;
          case Variance::Contravariant: body.push_back(Sequent::leq(ti, si)); break;
          case Variance::Invariant:
            body.push_back(Sequent::leq(si, ti));
            body.push_back(Sequent::leq(ti, si));
            break;
        }
      }
      emit(head, {Rule::FRule, ln.label}, body);
    }
  }

  if (!(a == b)) {
    emit(head, {Rule::Replace, 0}, {Sequent(a, a)});
    emit(head, {Rule::Replace, 0}, {Sequent(b, b)});
  }

  for (std::uint32_t k = 0; k < axioms_.size(); ++k) {
    const Axiom& ax = axioms_[k];
    emit(head, {Rule::AxiomCut, k}, {Sequent(a, right(ax.lhs)), Sequent(left(ax.rhs), b)});
    if (!(a == b)) {
      emit(head, {Rule::AxiomCut, k}, {Sequent(b, right(ax.lhs)), Sequent(left(ax.rhs), a)});
    }
    if (s == Sequent::leq(ax.lhs, ax.rhs)) emit(head, {Rule::Axiom, k}, {});
  }
}

void Engine::expand_lattice(Sequent s, std::uint32_t head) {
  const AnnotatedTerm a = s.first();
  const AnnotatedTerm b = s.second();
  if (a.side != Side::L || b.side != Side::R) return;
  const TermNode& ln = u_.node(a.term);
  const TermNode& rn = u_.node(b.term);
  if (ln.kind == TermKind::Not || rn.kind == TermKind::Not) {
    throw Error(ErrorCode::NegationPresent, "negation node reached the lattice engine");
  }

  if (a.term == b.term) emit(head, {Rule::Hyp, 0}, {});
  if (ln.kind == TermKind::Bot) emit(head, {Rule::LeftBot, 0}, {});
  if (rn.kind == TermKind::Top) emit(head, {Rule::RightTop, 0}, {});

  if (ln.kind == TermKind::Meet) {
    for (TermId c : ln.children) emit(head, {Rule::LeftAnd, 0}, {Sequent::leq(c, b.term)});
  } else if (ln.kind == TermKind::Join) {
    std::vector<Sequent> body;
    for (TermId c : ln.children) body.push_back(Sequent::leq(c, b.term));
    emit(head, {Rule::LeftOr, 0}, body);
  }
  if (rn.kind == TermKind::Meet) {
    std::vector<Sequent> body;
    for (TermId c : rn.children) body.push_back(Sequent::leq(a.term, c));
    emit(head, {Rule::RightAnd, 0}, body);
  } else if (rn.kind == TermKind::Join) {
    for (TermId c : rn.children) emit(head, {Rule::RightOr, 0}, {Sequent::leq(a.term, c)});
  }

  if (ln.kind == TermKind::App && rn.kind == TermKind::App && ln.label == rn.label) {
    const SymbolDecl& d = u_.symbol(SymbolId{ln.label});
    std::vector<Sequent> body;
    for (std::size_t i = 0; i < d.arity(); ++i) {
      const TermId si = ln.children[i];
      const TermId ti = rn.children[i];
      if (d.variances[i] != Variance::Contravariant) body.push_back(Sequent::leq(si, ti));
      if (d.variances[i] != Variance::Covariant) body.push_back(Sequent::leq(ti, si));
    }
    emit(head, {Rule::FRule, ln.label}, body);
  }
}

// ---------------------------------------------------------------------------
// Engine: propagation

void Engine::settle(std::size_t first_new_clause) {
  if (missing_.size() < clauses_.size()) missing_.resize(clauses_.size(), 0);
  for (std::size_t c = first_new_clause; c < clauses_.size(); ++c) {
    const HornClause cl = clauses_[c];
    std::uint32_t missing = 0;
    for (std::uint32_t lit : cl.body) {
      if (!proved_[lit]) {
        ++missing;
        watches_[lit].push_back(static_cast<std::uint32_t>(c));
      }
    }
    missing_[c] = missing;
    if (missing == 0 && !proved_[cl.head]) {
      proved_[cl.head] = 1;
      derived_by_[cl.head] = static_cast<std::uint32_t>(c);
      queue_.push_back(cl.head);
    }
  }
  while (!queue_.empty()) {
    const std::uint32_t lit = queue_.back();
    queue_.pop_back();
    for (std::uint32_t c : watches_[lit]) {
      ++propagations_;
      if (--missing_[c] != 0) continue;
      const std::uint32_t h = clauses_[c].head;
      if (proved_[h]) continue;
      proved_[h] = 1;
      derived_by_[h] = c;
      queue_.push_back(h);
    }
    watches_[lit].clear();
    watches_[lit].shrink_to_fit();
  }
}

bool Engine::prove(Sequent goal) {
  const std::size_t first_clause = clauses_.size();
  const std::uint32_t g = visit(goal);
  while (!pending_.empty()) {
    const std::uint32_t i = pending_.back();
    pending_.pop_back();
    expand(i);
  }
  settle(first_clause);
  return proved_[g] != 0;
}

Stats Engine::stats() const {
  Stats s;
  s.sequents = clauses_.sequent_count();
  s.clauses = clauses_.size();
  s.propagations = propagations_;
  return s;
}

// ---------------------------------------------------------------------------
// Proof reconstruction

namespace {

// Bodies keep schema order (premise i is body literal i), so a derivation
// maps onto proof nodes one-to-one.
class Rebuilder {
 public:
  Rebuilder(const ClauseSet& clauses, const std::vector<std::uint32_t>& derived_by,
            const AxiomSet& axioms)
      : clauses_(clauses), derived_by_(derived_by), axioms_(axioms) {}

  // Post-order over the derivation DAG with an explicit stack; proof height
  // can reach the number of sequents.
  ProofTree build(std::uint32_t goal) {
    std::vector<std::pair<std::uint32_t, bool>> stack{{goal, false}};
    while (!stack.empty()) {
      auto [i, ready] = stack.back();
      stack.pop_back();
      if (memo_.contains(i)) continue;
      const std::uint32_t c = derived_by_[i];
      if (c == kNone) throw Error(ErrorCode::NotProvable, "sequent has no derivation");
      const HornClause cl = clauses_[c];
      if (!ready) {
        stack.emplace_back(i, true);
        for (std::uint32_t lit : cl.body) {
          if (!memo_.contains(lit)) stack.emplace_back(lit, false);
        }
        continue;
      }
      memo_.emplace(i, make(i, cl));
    }
    return memo_.at(goal);
  }

 private:
  ProofTree make(std::uint32_t i, const HornClause& cl) {
    auto node = std::make_shared<ProofNode>();
    node->conclusion = clauses_.sequent(i);
    if (cl.tag.rule == Rule::Axiom) {
      // {U^L, V^R} for axiom (U, V) is AxiomCut over {U^L,U^R} and {V^L,V^R}.
      const Axiom& ax = axioms_[cl.tag.param];
      node->rule = Rule::AxiomCut;
      node->axiom = ax;
      node->premises = {hyp(ax.lhs), hyp(ax.rhs)};
      return node;
    }
    node->rule = cl.tag.rule;
    if (cl.tag.rule == Rule::AxiomCut) node->axiom = axioms_[cl.tag.param];
    node->premises.reserve(cl.body.size());
    for (std::uint32_t lit : cl.body) node->premises.push_back(memo_.at(lit));
    return node;
  }

  static ProofTree hyp(TermId t) {
    auto node = std::make_shared<ProofNode>();
    node->conclusion = Sequent::leq(t, t);
    node->rule = Rule::Hyp;
    return node;
  }

  const ClauseSet& clauses_;
  const std::vector<std::uint32_t>& derived_by_;
  const AxiomSet& axioms_;
  std::unordered_map<std::uint32_t, ProofTree> memo_;
};

// Fresh least-model computation over a finished clause set.
struct Model {
  std::vector<char> proved;
  std::vector<std::uint32_t> derived_by;
  std::size_t propagations = 0;
};

Model least_model(const ClauseSet& cs) {
  Model m;
  const std::size_t n = cs.sequent_count();
  m.proved.assign(n, 0);
  m.derived_by.assign(n, kNone);
  std::vector<std::uint32_t> missing(cs.size());
  std::vector<std::vector<std::uint32_t>> watches(n);
  std::vector<std::uint32_t> queue;
  for (std::size_t c = 0; c < cs.size(); ++c) {
    const HornClause cl = cs[c];
    missing[c] = static_cast<std::uint32_t>(cl.body.size());
    for (std::uint32_t lit : cl.body) watches[lit].push_back(static_cast<std::uint32_t>(c));
    if (cl.body.empty() && !m.proved[cl.head]) {
      m.proved[cl.head] = 1;
      m.derived_by[cl.head] = static_cast<std::uint32_t>(c);
      queue.push_back(cl.head);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t lit = queue.back();
    queue.pop_back();
    for (std::uint32_t c : watches[lit]) {
      ++m.propagations;
      if (--missing[c] != 0) continue;
      const std::uint32_t h = cs[c].head;
      if (m.proved[h]) continue;
      m.proved[h] = 1;
      m.derived_by[h] = c;
      queue.push_back(h);
    }
  }
  return m;
}

}  // namespace

ProofTree Engine::proof(Sequent goal) const {
  const auto g = clauses_.find(goal);
  if (!g || !proved_[*g]) throw Error(ErrorCode::NotProvable, "goal is not provable");
  return Rebuilder(clauses_, derived_by_, axioms_).build(*g);
}

// ---------------------------------------------------------------------------
// Free functions

ClauseSet build_clauses(const TermUniverse& u, Sequent goal, const AxiomSet& axioms,
                        Logic logic) {
  Engine e(u, axioms, logic);
  e.prove(goal);
  return e.clauses();
}

Verdict propagate(const ClauseSet& clauses, Sequent goal) {
  const auto start = Clock::now();
  Verdict v;
  const Model m = least_model(clauses);
  const auto g = clauses.find(goal);
  v.provable = g && m.proved[*g];
  v.stats.sequents = clauses.sequent_count();
  v.stats.clauses = clauses.size();
  v.stats.propagations = m.propagations;
  v.stats.milliseconds = elapsed_ms(start);
  return v;
}

Verdict check(const TermUniverse& u, TermId lhs, TermId rhs, const AxiomSet& axioms,
              Logic logic) {
  const auto start = Clock::now();
  Engine e(u, axioms, logic);
  Verdict v;
  v.provable = e.leq(lhs, rhs);
  v.stats = e.stats();
  v.stats.milliseconds = elapsed_ms(start);
  return v;
}

ProofTree reconstruct_proof(const ClauseSet& clauses, Sequent goal, const AxiomSet& axioms) {
  const Model m = least_model(clauses);
  const auto g = clauses.find(goal);
  if (!g || !m.proved[*g]) throw Error(ErrorCode::NotProvable, "goal is not provable");
  return Rebuilder(clauses, m.derived_by, axioms).build(*g);
}

}  // namespace olsub::entail
