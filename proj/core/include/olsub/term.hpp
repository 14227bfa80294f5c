#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace olsub {

/// Monotonicity class of one constructor argument.
enum class Variance : std::uint8_t { Invariant, Covariant, Contravariant };

constexpr Variance flip(Variance v) noexcept {
  switch (v) {
    case Variance::Covariant: return Variance::Contravariant;
    case Variance::Contravariant: return Variance::Covariant;
    case Variance::Invariant: return Variance::Invariant;
  }
  return v;
}

/// 'o', '+' or '-', the notation used in `fun` declarations.
char variance_char(Variance v) noexcept;
std::optional<Variance> variance_from_char(char c) noexcept;
std::vector<Variance> flip_all(std::span<const Variance> vs);

struct SymbolId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();
  friend constexpr auto operator<=>(SymbolId, SymbolId) = default;
};

struct TermId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();
  constexpr bool valid() const noexcept {
    return value != std::numeric_limits<std::uint32_t>::max();
  }
  friend constexpr auto operator<=>(TermId, TermId) = default;
};

struct SymbolDecl {
  std::string name;
  std::vector<Variance> variances;
  /// Set only on generated dual symbols; names the symbol this one negates.
  std::optional<SymbolId> dual_of;
  /// Internal symbols (fresh definition symbols) print under their public name
  /// unless internals are requested.
  bool internal = false;
  std::string public_name;

  std::size_t arity() const noexcept { return variances.size(); }
  bool is_dual() const noexcept { return dual_of.has_value(); }
};

enum class TermKind : std::uint8_t { Var, NegVar, Top, Bot, Meet, Join, Not, App };

/// Structural content of one interned node.
///  - Var / NegVar: `label` indexes the variable name table, no children.
///  - Meet / Join: two or more operands, never of the same kind as the node.
///  - Not: exactly one operand.
///  - App: `label` is the SymbolId, children are the arguments.
struct TermNode {
  TermKind kind = TermKind::Top;
  std::uint32_t label = 0;
  std::vector<TermId> children;

  friend bool operator==(const TermNode&, const TermNode&) = default;
};

struct TermNodeHash {
  std::size_t operator()(const TermNode& n) const noexcept;
};

/// Hash-consed store of terms plus the constructor signature.
///
/// Interning is total and injective on structure: two nodes get the same
/// TermId iff they are structurally identical after Meet/Join flattening.
/// Interning takes an internal lock, so several writers are serialized. Reads
/// (node(), size(), ...) are safe concurrently with each other but not with a
/// concurrent intern().
class TermUniverse {
 public:
  TermUniverse();
  TermUniverse(const TermUniverse&) = delete;
  TermUniverse& operator=(const TermUniverse&) = delete;

  // Signature.
  SymbolId declare_symbol(std::string_view name, std::vector<Variance> variances);
  /// Declares a symbol that prints as `public_name` (used for fresh symbols).
  SymbolId declare_internal_symbol(std::string_view name, std::string_view public_name,
                                   std::vector<Variance> variances);
  std::optional<SymbolId> find_symbol(std::string_view name) const;
  const SymbolDecl& symbol(SymbolId id) const;
  std::size_t symbol_count() const noexcept { return symbols_.size(); }
  /// The symbol with flipped variances; created on first request. The dual of
  /// a dual is the original symbol.
  SymbolId dual_symbol(SymbolId id);

  // Construction.
  TermId var(std::string_view name);
  TermId neg_var(std::string_view name);
  TermId top();
  TermId bot();
  /// n-ary meet; nested meets are flattened, an empty list yields top and a
  /// single operand is returned unchanged.
  TermId meet(std::span<const TermId> operands);
  TermId join(std::span<const TermId> operands);
  TermId meet(TermId a, TermId b);
  TermId join(TermId a, TermId b);
  TermId negation(TermId operand);
  TermId app(SymbolId symbol, std::span<const TermId> args);
  TermId app(SymbolId symbol, std::initializer_list<TermId> args);
  /// Validates and interns a raw node. Throws ArityMismatch or MalformedTerm.
  TermId intern(TermNode node);

  // Inspection.
  const TermNode& node(TermId id) const { return nodes_[id.value].node; }
  TermKind kind(TermId id) const { return node(id).kind; }
  std::span<const TermId> children(TermId id) const { return node(id).children; }
  SymbolId app_symbol(TermId id) const;
  std::string_view var_name(TermId id) const;
  std::string_view name(std::uint32_t label) const { return names_[label]; }
  /// For NegVar the positive variable, for an App of a dual symbol the same
  /// arguments under the original symbol. Invalid id otherwise.
  TermId negand(TermId id) const { return nodes_[id.value].negand; }
  bool is_literal_negation(TermId id) const { return negand(id).valid(); }
  std::size_t term_count() const noexcept { return nodes_.size(); }

  /// Tree size: leaves 1, Not 1 + operand, an n-ary Meet/Join n-1 binary
  /// nodes plus operands, App 1 + arguments (dual symbols included).
  std::uint64_t size(TermId id) const { return nodes_[id.value].size; }
  /// The term and all its descendants, each once, children before parents.
  std::vector<TermId> subterms(TermId id) const;
  /// Whether the term contains Not, NegVar or a dual symbol.
  bool has_negation(TermId id) const { return nodes_[id.value].has_negation; }
  bool has_not(TermId id) const { return nodes_[id.value].has_not; }

  /// Total structural order independent of interning order: node kind, then
  /// name (and dual flag) for leaves and applications, then children
  /// lexicographically.
  std::strong_ordering compare(TermId a, TermId b) const;

 private:
  struct Entry {
    TermNode node;
    std::uint64_t size = 1;
    TermId negand;
    bool has_negation = false;
    bool has_not = false;
  };

  std::uint32_t name_label(std::string_view name);
  TermId intern_locked(TermNode node);
  TermId insert_locked(TermNode node);
  TermId flat_locked(TermKind kind, std::span<const TermId> operands);
  SymbolId declare_locked(std::string_view name, std::vector<Variance> variances);

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> name_index_;
  std::vector<SymbolDecl> symbols_;
  std::vector<std::optional<SymbolId>> duals_;
  std::unordered_map<std::string, SymbolId> symbol_index_;
  std::deque<Entry> nodes_;
  std::unordered_map<TermNode, TermId, TermNodeHash> index_;
  mutable std::recursive_mutex mutex_;
};

}  // namespace olsub

template <>
struct std::hash<olsub::TermId> {
  std::size_t operator()(olsub::TermId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
