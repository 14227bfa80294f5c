// Rule-by-rule checker for cut-restricted derivations. Shares no code with
// clause generation: each schema is matched directly against the node.

#include <array>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "olsub/entail.hpp"
#include "olsub/syntax.hpp"

namespace olsub::entail {

namespace {

using Premises = std::vector<std::shared_ptr<const ProofNode>>;

// Orientations of the conclusion as (principal, context).
std::array<std::pair<AnnotatedTerm, AnnotatedTerm>, 2> orientations(Sequent s) {
  return {std::pair{s.first(), s.second()}, std::pair{s.second(), s.first()}};
}

bool premise_is(const Premises& ps, std::size_t i, Sequent expected) {
  return i < ps.size() && ps[i] && ps[i]->conclusion == expected;
}

// The term a negation-like node negates: Not's operand, a NegVar's variable,
// or the base-symbol application behind a dual application.
TermId negated(const TermUniverse& u, TermId t) {
  if (u.kind(t) == TermKind::Not) return u.children(t)[0];
  return u.negand(t);
}

class Checker {
 public:
  Checker(const TermUniverse& u, const AxiomSet& axioms) : u_(u), axioms_(axioms) {}

  std::optional<std::string> local(const ProofNode& n) const {
    const Sequent c = n.conclusion;
    const Premises& ps = n.premises;
    const AnnotatedTerm a = c.first();
    const AnnotatedTerm b = c.second();
    auto fail = [](std::string why) { return std::optional<std::string>(std::move(why)); };

    switch (n.rule) {
      case Rule::Hyp:
        if (ps.empty() && a.term == b.term && a.side != b.side) return std::nullopt;
        return fail("Hyp needs {T^L, T^R} and no premises");
      case Rule::LeftBot:
        for (AnnotatedTerm x : {a, b}) {
          if (ps.empty() && x.side == Side::L && u_.kind(x.term) == TermKind::Bot) return std::nullopt;
        }
        return fail("LeftBot needs bot^L and no premises");
      case Rule::RightTop:
        for (AnnotatedTerm x : {a, b}) {
          if (ps.empty() && x.side == Side::R && u_.kind(x.term) == TermKind::Top) return std::nullopt;
        }
        return fail("RightTop needs top^R and no premises");
      case Rule::LeftAnd:
      case Rule::RightOr: {
        const bool and_rule = n.rule == Rule::LeftAnd;
        const TermKind want = and_rule ? TermKind::Meet : TermKind::Join;
        const Side side = and_rule ? Side::L : Side::R;
        if (ps.size() != 1) return fail("expected one premise");
        for (const auto& [p, g] : orientations(c)) {
          if (p.side != side || u_.kind(p.term) != want) continue;
          for (TermId k : u_.children(p.term)) {
            if (premise_is(ps, 0, Sequent(g, AnnotatedTerm{k, side}))) return std::nullopt;
          }
        }
        return fail("premise is not the conclusion with one operand selected");
      }
      case Rule::RightAnd:
      case Rule::LeftOr: {
        const bool and_rule = n.rule == Rule::RightAnd;
        const TermKind want = and_rule ? TermKind::Meet : TermKind::Join;
        const Side side = and_rule ? Side::R : Side::L;
        for (const auto& [p, g] : orientations(c)) {
          if (p.side != side || u_.kind(p.term) != want) continue;
          const auto kids = u_.children(p.term);
          if (ps.size() != kids.size()) continue;
          bool ok = true;
          for (std::size_t i = 0; i < kids.size() && ok; ++i) {
            ok = premise_is(ps, i, Sequent(g, AnnotatedTerm{kids[i], side}));
          }
          if (ok) return std::nullopt;
        }
        return fail("premises do not cover every operand in order");
      }
      case Rule::LeftNot:
      case Rule::RightNot: {
        const Side side = n.rule == Rule::LeftNot ? Side::L : Side::R;
        const Side flipped = side == Side::L ? Side::R : Side::L;
        if (ps.size() != 1) return fail("expected one premise");
        for (const auto& [p, g] : orientations(c)) {
          if (p.side != side) continue;
          const TermId inner = negated(u_, p.term);
          if (inner.valid() && premise_is(ps, 0, Sequent(g, AnnotatedTerm{inner, flipped}))) {
            return std::nullopt;
          }
        }
        return fail("premise is not the negand on the opposite side");
      }
      case Rule::Replace:
        if (ps.size() == 1 && (premise_is(ps, 0, Sequent(a, a)) || premise_is(ps, 0, Sequent(b, b)))) {
          return std::nullopt;
        }
        return fail("Replace needs premise {G, G} or {D, D}");
      case Rule::FRule: {
        if (a.side == b.side) return fail("F-rule needs one L and one R term");
        const AnnotatedTerm l = a.side == Side::L ? a : b;
        const AnnotatedTerm r = a.side == Side::L ? b : a;
        if (u_.kind(l.term) != TermKind::App || u_.kind(r.term) != TermKind::App) {
          return fail("F-rule needs applications on both sides");
        }
        const SymbolId f = u_.app_symbol(l.term);
        if (!(f == u_.app_symbol(r.term))) return fail("F-rule needs the same head symbol");
        const SymbolDecl& d = u_.symbol(f);
        if (d.is_dual()) return fail("F-rule is not applicable to a dual symbol");
        const auto ls = u_.children(l.term);
        const auto rs = u_.children(r.term);
        std::size_t k = 0;
        for (std::size_t i = 0; i < d.arity(); ++i) {
          const bool up = d.variances[i] != Variance::Contravariant;
          const bool down = d.variances[i] != Variance::Covariant;
          if (up && !premise_is(ps, k++, Sequent::leq(ls[i], rs[i]))) {
            return fail("argument " + std::to_string(i + 1) + " needs S <= T");
          }
          if (down && !premise_is(ps, k++, Sequent::leq(rs[i], ls[i]))) {
            return fail("argument " + std::to_string(i + 1) + " needs T <= S");
          }
        }
        if (k != ps.size()) return fail("F-rule has extra premises");
        return std::nullopt;
      }
      case Rule::AxiomCut: {
        if (!n.axiom) return fail("AxiomCut cites no axiom");
        if (!axioms_.contains(n.axiom->lhs, n.axiom->rhs)) return fail("cited axiom is not in the set");
        if (ps.size() != 2) return fail("AxiomCut needs two premises");
        for (const auto& [g, d] : orientations(c)) {
          if (premise_is(ps, 0, Sequent(g, right(n.axiom->lhs))) &&
              premise_is(ps, 1, Sequent(left(n.axiom->rhs), d))) {
            return std::nullopt;
          }
        }
        return fail("premises do not match the cited axiom");
      }
      case Rule::Axiom: return fail("Axiom is not a rule of the calculus");
    }
    return fail("unknown rule");
  }

 private:
  const TermUniverse& u_;
  const AxiomSet& axioms_;
};

}  // namespace

std::string describe(const TermUniverse& u, Sequent s) {
  auto one = [&](AnnotatedTerm x) {
    std::string t = syntax::print_term(u, x.term, {true});
    return "(" + t + ")^" + (x.side == Side::L ? "L" : "R");
  };
  return "{" + one(s.first()) + ", " + one(s.second()) + "}";
}

ProofCheck verify_proof(const TermUniverse& u, const ProofTree& proof, const AxiomSet& axioms) {
  if (!proof) return {false, "empty proof"};
  const Checker checker(u, axioms);
  std::unordered_set<const ProofNode*> verified;
  // Explicit DFS stack of (node, next premise); doubles as the diagnostic path.
  std::vector<std::pair<const ProofNode*, std::size_t>> path{{proof.get(), 0}};
  while (!path.empty()) {
    auto& [node, next] = path.back();
    if (next == 0) {
      if (verified.contains(node)) {
        path.pop_back();
        continue;
      }
      if (auto why = checker.local(*node)) {
        std::ostringstream out;
        for (std::size_t i = 0; i < path.size(); ++i) {
          if (i) out << " > ";
          out << to_string(path[i].first->rule);
        }
        out << ": " << describe(u, node->conclusion) << ": " << *why;
        return {false, out.str()};
      }
    }
    if (next < node->premises.size()) {
      const ProofNode* child = node->premises[next++].get();
      path.emplace_back(child, 0);
    } else {
      verified.insert(node);
      path.pop_back();
    }
  }
  return {true, {}};
}

std::string format_proof(const TermUniverse& u, const ProofTree& proof, bool show_internals) {
  std::ostringstream out;
  if (!proof) return {};
  std::unordered_map<const ProofNode*, std::size_t> numbering;
  auto sequent = [&](Sequent s) {
    auto one = [&](AnnotatedTerm x) {
      return "(" + syntax::print_term(u, x.term, {show_internals}) + ")^" +
             (x.side == Side::L ? "L" : "R");
    };
    return one(s.first()) + ", " + one(s.second());
  };
  // Shared subproofs are printed once and referenced by number afterwards.
  std::vector<std::pair<const ProofNode*, std::size_t>> stack{{proof.get(), 0}};
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    const std::string indent(2 * depth, ' ');
    if (auto it = numbering.find(node); it != numbering.end()) {
      out << indent << "#" << it->second << " (shared)\n";
      continue;
    }
    const std::size_t id = numbering.size() + 1;
    numbering.emplace(node, id);
    out << indent << "#" << id << " " << to_string(node->rule) << ": " << sequent(node->conclusion)
        << "\n";
    for (auto it = node->premises.rbegin(); it != node->premises.rend(); ++it) {
      stack.emplace_back(it->get(), depth + 1);
    }
  }
  return out.str();
}

}  // namespace olsub::entail
