#pragma once

#include <map>
#include <memory>
#include <unordered_map>

#include "olsub/entail.hpp"
#include "olsub/term.hpp"

namespace olsub::normalize {

enum class Mode { BL, OL };

/// Normal-form computation over one universe. Holds the memo tables and a
/// single incremental lattice-mode engine answering every <=_BL query of the
/// run, so repeated subterm pairs are decided once.
///
/// Outputs live in the extended signature: negation appears only as NegVar
/// leaves and dual-symbol applications. Not thread-safe.
class Normalizer {
 public:
  explicit Normalizer(TermUniverse& u);
  ~Normalizer();

  /// Pseudo-negation-normal form: negation pushed onto variables and
  /// constructor heads (dual symbols), double negation removed.
  TermId delta(TermId t);
  /// delta(~t) for t already in pseudo-negation-normal form.
  TermId complement(TermId t);

  /// Bottom-up complement collapse: a join whose operand complement lies
  /// below the join becomes top, dually for meets.
  TermId beta(TermId t);
  /// Bottom-up conjunct promotion inside joins (disjunct promotion inside
  /// meets), iterated to a fixpoint at each node. Keeps operand order.
  TermId zeta(TermId t);
  /// Bottom-up antichain reduction with canonical operand order.
  TermId eta(TermId t);

  /// eta(zeta(t)) computed in one fused bottom-up pass. Throws
  /// NegationPresent on a Not node.
  TermId normalize_bl(TermId t);
  /// eta(zeta(beta(delta(t)))).
  TermId normalize_ol(TermId t);
  TermId normalize(TermId t, Mode mode) {
    return mode == Mode::OL ? normalize_ol(t) : normalize_bl(t);
  }

  /// s <=_BL t with negated variables and dual symbols as opaque atoms.
  bool leq_bl(TermId s, TermId t);
  std::size_t bl_queries() const noexcept { return bl_queries_; }

 private:
  template <typename F>
  TermId bottom_up(TermId t, std::unordered_map<TermId, TermId>& memo, F&& at_node);
  TermId rebuild(TermId t, const std::vector<TermId>& kids);
  std::vector<TermId> zeta_node(TermKind kind, std::vector<TermId> kids);
  std::vector<TermId> eta_node(TermKind kind, const std::vector<TermId>& kids);
  TermId beta_node(TermKind kind, const std::vector<TermId>& kids);

  TermUniverse& u_;
  std::unique_ptr<entail::Engine> bl_;
  std::size_t bl_queries_ = 0;
  std::unordered_map<TermId, TermId> delta_, complement_, beta_, zeta_, eta_, bl_nf_, ol_nf_;
};

// One-shot conveniences; each builds a fresh Normalizer.
TermId delta(TermUniverse& u, TermId t);
TermId beta(TermUniverse& u, TermId t);
TermId zeta(TermUniverse& u, TermId t);
TermId eta(TermUniverse& u, TermId t);
TermId normalize_bl(TermUniverse& u, TermId t);
TermId normalize_ol(TermUniverse& u, TermId t);

}  // namespace olsub::normalize
