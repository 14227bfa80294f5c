#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "olsub/axioms.hpp"
#include "olsub/term.hpp"

namespace olsub::entail {

enum class Side : std::uint8_t { L = 0, R = 1 };

struct AnnotatedTerm {
  TermId term;
  Side side = Side::L;

  /// (side, term) packed so that integer order is the canonical order.
  constexpr std::uint32_t packed() const noexcept {
    return (static_cast<std::uint32_t>(side) << 31) | term.value;
  }
  static constexpr AnnotatedTerm unpack(std::uint32_t p) noexcept {
    return AnnotatedTerm{TermId{p & 0x7fffffffu}, static_cast<Side>(p >> 31)};
  }
  friend constexpr bool operator==(AnnotatedTerm a, AnnotatedTerm b) noexcept {
    return a.packed() == b.packed();
  }
};

constexpr AnnotatedTerm left(TermId t) noexcept { return {t, Side::L}; }
constexpr AnnotatedTerm right(TermId t) noexcept { return {t, Side::R}; }

/// Unordered pair (multiset of size two) of annotated terms, stored with the
/// smaller (side, term) first. {S^L, T^R} asserts S <= T.
class Sequent {
 public:
  constexpr Sequent() = default;
  constexpr Sequent(AnnotatedTerm a, AnnotatedTerm b) noexcept {
    if (b.packed() < a.packed()) std::swap(a, b);
    first_ = a;
    second_ = b;
  }
  static constexpr Sequent leq(TermId lhs, TermId rhs) noexcept {
    return Sequent(left(lhs), right(rhs));
  }
  static constexpr Sequent from_key(std::uint64_t key) noexcept {
    return Sequent(AnnotatedTerm::unpack(static_cast<std::uint32_t>(key >> 32)),
                   AnnotatedTerm::unpack(static_cast<std::uint32_t>(key)));
  }

  constexpr AnnotatedTerm first() const noexcept { return first_; }
  constexpr AnnotatedTerm second() const noexcept { return second_; }
  constexpr std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(first_.packed()) << 32) | second_.packed();
  }
  friend constexpr bool operator==(Sequent a, Sequent b) noexcept { return a.key() == b.key(); }

 private:
  AnnotatedTerm first_{};
  AnnotatedTerm second_{};
};

/// Which proof system the engine searches.
///  - Ortho: the cut-restricted orthologic calculus with function symbols and
///    AxiomCut. Negated variables and dual-symbol applications behave as
///    negations of their positive counterparts.
///  - Lattice: its negation-free fragment over one-left/one-right sequents.
///    Negated variables are opaque atoms and dual symbols are ordinary
///    constructors with their own variances. No axioms.
enum class Logic : std::uint8_t { Ortho, Lattice };

enum class Rule : std::uint8_t {
  Hyp,
  LeftBot,
  RightTop,
  LeftAnd,
  RightAnd,
  LeftOr,
  RightOr,
  LeftNot,
  RightNot,
  Replace,
  FRule,
  AxiomCut,
  /// Empty-body shortcut for an axiom sequent {U^L, V^R}; reconstructed
  /// proofs expand it to AxiomCut over two Hyp leaves.
  Axiom,
};

std::string_view to_string(Rule r);

/// Rule instance that produced a clause; `param` is the symbol for FRule and
/// the axiom index for AxiomCut / Axiom.
struct RuleTag {
  Rule rule = Rule::Hyp;
  std::uint32_t param = 0;
};

/// head <- body[0] & body[1] & ...; literals are indices into the owning
/// ClauseSet's sequent table.
struct HornClause {
  std::uint32_t head;
  std::span<const std::uint32_t> body;
  RuleTag tag;
};

/// Propositional Horn clauses over the sequents reachable from a goal.
class ClauseSet {
 public:
  /// Index of the sequent, adding it if new.
  std::uint32_t intern(Sequent s, bool* inserted = nullptr);
  std::optional<std::uint32_t> find(Sequent s) const;
  Sequent sequent(std::uint32_t index) const { return Sequent::from_key(sequents_[index]); }
  std::size_t sequent_count() const noexcept { return sequents_.size(); }

  void add(std::uint32_t head, std::span<const std::uint32_t> body, RuleTag tag);
  std::size_t size() const noexcept { return clauses_.size(); }
  HornClause operator[](std::size_t i) const;
  /// Total number of literals (heads plus body occurrences).
  std::size_t literal_count() const noexcept { return literals_.size() + clauses_.size(); }

 private:
  struct Record {
    std::uint32_t head;
    std::uint32_t begin;
    std::uint32_t end;
    RuleTag tag;
  };
  std::vector<std::uint64_t> sequents_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<Record> clauses_;
  std::vector<std::uint32_t> literals_;
};

struct Stats {
  std::size_t sequents = 0;
  std::size_t clauses = 0;
  std::size_t propagations = 0;
  double milliseconds = 0.0;
};

struct Verdict {
  bool provable = false;
  Stats stats;
};

/// One step of a cut-restricted derivation. Premises may be shared between
/// several parents; the structure is still read as a tree.
struct ProofNode {
  Sequent conclusion;
  Rule rule = Rule::Hyp;
  /// The cited axiom for AxiomCut.
  std::optional<Axiom> axiom;
  std::vector<std::shared_ptr<const ProofNode>> premises;
};
using ProofTree = std::shared_ptr<const ProofNode>;

/// Generates every clause whose head is reachable backwards from `goal`.
ClauseSet build_clauses(const TermUniverse& u, Sequent goal, const AxiomSet& axioms,
                        Logic logic = Logic::Ortho);

/// Least-model membership of `goal` by counter-based unit propagation.
Verdict propagate(const ClauseSet& clauses, Sequent goal);

/// Decides lhs <= rhs under the axioms.
Verdict check(const TermUniverse& u, TermId lhs, TermId rhs, const AxiomSet& axioms = {},
              Logic logic = Logic::Ortho);

/// Walks back the first derivation of `goal`. Throws NotProvable.
ProofTree reconstruct_proof(const ClauseSet& clauses, Sequent goal, const AxiomSet& axioms);

struct ProofCheck {
  bool ok = true;
  /// Root-to-failure rule path when !ok.
  std::string diagnostic;
  explicit operator bool() const noexcept { return ok; }
};

/// Rule-by-rule check of a derivation in the Ortho calculus, independent of
/// clause generation.
ProofCheck verify_proof(const TermUniverse& u, const ProofTree& proof, const AxiomSet& axioms);

std::string describe(const TermUniverse& u, Sequent s);

/// Indented rule-name rendering, one line per node.
std::string format_proof(const TermUniverse& u, const ProofTree& proof, bool show_internals = false);

/// Incremental prover: clauses and the least model persist across queries, so
/// a batch of related queries costs no more than the union of their sequent
/// universes. Single-threaded; use one engine per thread.
class Engine {
 public:
  Engine(const TermUniverse& u, AxiomSet axioms = {}, Logic logic = Logic::Ortho);

  bool prove(Sequent goal);
  bool leq(TermId lhs, TermId rhs) { return prove(Sequent::leq(lhs, rhs)); }
  bool equivalent(TermId a, TermId b) { return leq(a, b) && leq(b, a); }

  /// Requires a prior successful prove(goal). Throws NotProvable.
  ProofTree proof(Sequent goal) const;

  const ClauseSet& clauses() const noexcept { return clauses_; }
  const AxiomSet& axioms() const noexcept { return axioms_; }
  Logic logic() const noexcept { return logic_; }
  Stats stats() const;

 private:
  std::uint32_t visit(Sequent s);
  void expand(std::uint32_t index);
  void expand_ortho(Sequent s, std::uint32_t head);
  void expand_lattice(Sequent s, std::uint32_t head);
  void emit(std::uint32_t head, RuleTag tag, std::initializer_list<Sequent> body);
  void emit(std::uint32_t head, RuleTag tag, const std::vector<Sequent>& body);
  void settle(std::size_t first_new_clause);

  const TermUniverse& u_;
  AxiomSet axioms_;
  Logic logic_;
  ClauseSet clauses_;
  std::vector<std::uint32_t> pending_;
  std::vector<std::uint32_t> scratch_;
  // Propagation state.
  std::vector<char> proved_;
  std::vector<std::uint32_t> derived_by_;
  std::vector<std::uint32_t> missing_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::uint32_t> queue_;
  std::size_t propagations_ = 0;
};

}  // namespace olsub::entail
