#include "olsub/term.hpp"

#include <algorithm>

#include "olsub/error.hpp"

namespace olsub {

char variance_char(Variance v) noexcept {
  switch (v) {
    case Variance::Invariant: return 'o';
    case Variance::Covariant: return '+';
    case Variance::Contravariant: return '-';
  }
  return '?';
}

std::optional<Variance> variance_from_char(char c) noexcept {
  switch (c) {
    case 'o': return Variance::Invariant;
    case '+': return Variance::Covariant;
    case '-': return Variance::Contravariant;
    default: return std::nullopt;
  }
}

std::vector<Variance> flip_all(std::span<const Variance> vs) {
  std::vector<Variance> out;
  out.reserve(vs.size());
  for (Variance v : vs) out.push_back(flip(v));
  return out;
}

std::size_t TermNodeHash::operator()(const TermNode& n) const noexcept {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x9e3779b97f4a7c15ULL;
  h ^= n.label + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  for (TermId c : n.children) {
    h ^= c.value + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

}  // namespace

TermUniverse::TermUniverse() = default;

// ---------------------------------------------------------------------------
// Signature

SymbolId TermUniverse::declare_locked(std::string_view name, std::vector<Variance> variances) {
  if (auto it = symbol_index_.find(std::string(name)); it != symbol_index_.end()) {
    const SymbolDecl& existing = symbols_[it->second.value];
    if (existing.variances != variances) {
      throw Error(ErrorCode::ConflictingDeclaration,
                  "symbol '" + std::string(name) + "' already declared with arity " +
                      std::to_string(existing.arity()) + " and different variances");
    }
    return it->second;
  }
  SymbolId id{static_cast<std::uint32_t>(symbols_.size())};
  symbols_.push_back(SymbolDecl{std::string(name), std::move(variances), std::nullopt, false,
                                std::string(name)});
  duals_.emplace_back();
  symbol_index_.emplace(std::string(name), id);
  return id;
}

SymbolId TermUniverse::declare_symbol(std::string_view name, std::vector<Variance> variances) {
  std::lock_guard lock(mutex_);
  return declare_locked(name, std::move(variances));
}

SymbolId TermUniverse::declare_internal_symbol(std::string_view name, std::string_view public_name,
                                               std::vector<Variance> variances) {
  std::lock_guard lock(mutex_);
  if (symbol_index_.contains(std::string(name))) {
    throw Error(ErrorCode::ConflictingDeclaration,
                "internal symbol '" + std::string(name) + "' is not fresh");
  }
  SymbolId id = declare_locked(name, std::move(variances));
  symbols_[id.value].internal = true;
  symbols_[id.value].public_name = std::string(public_name);
  return id;
}

std::optional<SymbolId> TermUniverse::find_symbol(std::string_view name) const {
  std::lock_guard lock(mutex_);
  if (auto it = symbol_index_.find(std::string(name)); it != symbol_index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

const SymbolDecl& TermUniverse::symbol(SymbolId id) const { return symbols_.at(id.value); }

SymbolId TermUniverse::dual_symbol(SymbolId id) {
  std::lock_guard lock(mutex_);
  const SymbolDecl& decl = symbols_.at(id.value);
  if (decl.dual_of) return *decl.dual_of;
  if (duals_[id.value]) return *duals_[id.value];
  SymbolId dual{static_cast<std::uint32_t>(symbols_.size())};
  SymbolDecl d{decl.name, flip_all(decl.variances), id, decl.internal, decl.public_name};
  symbols_.push_back(std::move(d));
  duals_.emplace_back(id);
  duals_[id.value] = dual;
  return dual;
}

// ---------------------------------------------------------------------------
// Construction

std::uint32_t TermUniverse::name_label(std::string_view name) {
  if (auto it = name_index_.find(std::string(name)); it != name_index_.end()) return it->second;
  auto label = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  name_index_.emplace(std::string(name), label);
  return label;
}

TermId TermUniverse::var(std::string_view name) {
  std::lock_guard lock(mutex_);
  return insert_locked(TermNode{TermKind::Var, name_label(name), {}});
}

TermId TermUniverse::neg_var(std::string_view name) {
  std::lock_guard lock(mutex_);
  return insert_locked(TermNode{TermKind::NegVar, name_label(name), {}});
}

TermId TermUniverse::top() {
  std::lock_guard lock(mutex_);
  return insert_locked(TermNode{TermKind::Top, 0, {}});
}

TermId TermUniverse::bot() {
  std::lock_guard lock(mutex_);
  return insert_locked(TermNode{TermKind::Bot, 0, {}});
}

TermId TermUniverse::flat_locked(TermKind kind, std::span<const TermId> operands) {
  std::vector<TermId> flat;
  flat.reserve(operands.size());
  for (TermId c : operands) {
    if (c.value >= nodes_.size()) {
      throw Error(ErrorCode::MalformedTerm, "operand is not an interned term");
    }
    const TermNode& n = nodes_[c.value].node;
    if (n.kind == kind) {
      flat.insert(flat.end(), n.children.begin(), n.children.end());
    } else {
      flat.push_back(c);
    }
  }
  if (flat.empty()) {
    return insert_locked(TermNode{kind == TermKind::Meet ? TermKind::Top : TermKind::Bot, 0, {}});
  }
  if (flat.size() == 1) return flat.front();
  return insert_locked(TermNode{kind, 0, std::move(flat)});
}

TermId TermUniverse::meet(std::span<const TermId> operands) {
  std::lock_guard lock(mutex_);
  return flat_locked(TermKind::Meet, operands);
}

TermId TermUniverse::join(std::span<const TermId> operands) {
  std::lock_guard lock(mutex_);
  return flat_locked(TermKind::Join, operands);
}

TermId TermUniverse::meet(TermId a, TermId b) {
  const TermId ops[] = {a, b};
  return meet(ops);
}

TermId TermUniverse::join(TermId a, TermId b) {
  const TermId ops[] = {a, b};
  return join(ops);
}

TermId TermUniverse::negation(TermId operand) {
  return intern(TermNode{TermKind::Not, 0, {operand}});
}

TermId TermUniverse::app(SymbolId symbol, std::span<const TermId> args) {
  return intern(TermNode{TermKind::App, symbol.value, {args.begin(), args.end()}});
}

TermId TermUniverse::app(SymbolId symbol, std::initializer_list<TermId> args) {
  return intern(TermNode{TermKind::App, symbol.value, std::vector<TermId>(args)});
}

TermId TermUniverse::intern(TermNode node) {
  std::lock_guard lock(mutex_);
  return intern_locked(std::move(node));
}

TermId TermUniverse::intern_locked(TermNode node) {
  for (TermId c : node.children) {
    if (c.value >= nodes_.size()) {
      throw Error(ErrorCode::MalformedTerm, "child is not an interned term");
    }
  }
  switch (node.kind) {
    case TermKind::Var:
    case TermKind::NegVar:
      if (node.label >= names_.size() || !node.children.empty()) {
        throw Error(ErrorCode::MalformedTerm, "variable node needs a known name and no children");
      }
      break;
    case TermKind::Top:
    case TermKind::Bot:
      if (!node.children.empty()) throw Error(ErrorCode::MalformedTerm, "constant with children");
      node.label = 0;
      break;
    case TermKind::Meet:
    case TermKind::Join:
      if (node.children.size() < 2) {
        throw Error(ErrorCode::MalformedTerm, "meet/join needs at least two operands");
      }
      node.label = 0;
      return flat_locked(node.kind, node.children);
    case TermKind::Not:
      if (node.children.size() != 1) throw Error(ErrorCode::MalformedTerm, "negation is unary");
      node.label = 0;
      break;
    case TermKind::App: {
      if (node.label >= symbols_.size()) {
        throw Error(ErrorCode::UndeclaredSymbol, "unknown symbol id");
      }
      const SymbolDecl& decl = symbols_[node.label];
      if (decl.arity() != node.children.size()) {
        throw Error(ErrorCode::ArityMismatch,
                    "symbol '" + decl.name + "' expects " + std::to_string(decl.arity()) +
                        " argument(s), got " + std::to_string(node.children.size()));
      }
      break;
    }
  }
  return insert_locked(std::move(node));
}

TermId TermUniverse::insert_locked(TermNode node) {
  if (auto it = index_.find(node); it != index_.end()) return it->second;

  Entry e;
  switch (node.kind) {
    case TermKind::Var:
    case TermKind::Top:
    case TermKind::Bot:
      break;
    case TermKind::NegVar:
      e.has_negation = true;
      e.negand = insert_locked(TermNode{TermKind::Var, node.label, {}});
      break;
    case TermKind::Meet:
    case TermKind::Join:
      e.size = node.children.size() - 1;
      break;
    case TermKind::Not:
      e.has_negation = true;
      e.has_not = true;
      break;
    case TermKind::App: {
      const SymbolDecl& decl = symbols_[node.label];
      if (decl.dual_of) {
        e.has_negation = true;
        e.negand = insert_locked(TermNode{TermKind::App, decl.dual_of->value, node.children});
      }
      break;
    }
  }
  for (TermId c : node.children) {
    const Entry& ce = nodes_[c.value];
    e.size = saturating_add(e.size, ce.size);
    e.has_negation = e.has_negation || ce.has_negation;
    e.has_not = e.has_not || ce.has_not;
  }
  e.node = node;
  TermId id{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back(std::move(e));
  index_.emplace(std::move(node), id);
  return id;
}

// ---------------------------------------------------------------------------
// Inspection

SymbolId TermUniverse::app_symbol(TermId id) const {
  const TermNode& n = node(id);
  if (n.kind != TermKind::App) throw Error(ErrorCode::MalformedTerm, "not an application");
  return SymbolId{n.label};
}

std::string_view TermUniverse::var_name(TermId id) const {
  const TermNode& n = node(id);
  if (n.kind != TermKind::Var && n.kind != TermKind::NegVar) {
    throw Error(ErrorCode::MalformedTerm, "not a variable");
  }
  return names_[n.label];
}

std::vector<TermId> TermUniverse::subterms(TermId root) const {
  std::vector<TermId> out;
  std::vector<char> seen(nodes_.size(), 0);
  // Iterative post-order.
  std::vector<std::pair<TermId, std::size_t>> stack{{root, 0}};
  seen[root.value] = 1;
  while (!stack.empty()) {
    auto& [t, next] = stack.back();
    const auto& kids = nodes_[t.value].node.children;
    if (next < kids.size()) {
      TermId c = kids[next++];
      if (!seen[c.value]) {
        seen[c.value] = 1;
        stack.emplace_back(c, 0);
      }
    } else {
      out.push_back(t);
      stack.pop_back();
    }
  }
  return out;
}

std::strong_ordering TermUniverse::compare(TermId a, TermId b) const {
  if (a == b) return std::strong_ordering::equal;
  const TermNode& x = node(a);
  const TermNode& y = node(b);
  if (x.kind != y.kind) return x.kind <=> y.kind;
  switch (x.kind) {
    case TermKind::Var:
    case TermKind::NegVar:
      return names_[x.label].compare(names_[y.label]) <=> 0;
    case TermKind::App: {
      const SymbolDecl& sx = symbols_[x.label];
      const SymbolDecl& sy = symbols_[y.label];
      if (auto c = sx.name.compare(sy.name) <=> 0; c != 0) return c;
      if (auto c = sx.is_dual() <=> sy.is_dual(); c != 0) return c;
      break;
    }
    default:
      break;
  }
  const std::size_t n = std::min(x.children.size(), y.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(x.children[i], y.children[i]); c != 0) return c;
  }
  return x.children.size() <=> y.children.size();
}

}  // namespace olsub
