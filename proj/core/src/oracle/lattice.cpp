#include "olsub/oracle/lattice.hpp"

#include <stdexcept>
#include <unordered_map>

#include "olsub/error.hpp"

namespace olsub::oracle {

namespace {

std::vector<std::vector<bool>> order_from_covers(std::size_t n,
                                                 const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : covers) le[a][b] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (le[i][k] && le[k][j]) le[i][j] = true;
      }
    }
  }
  return le;
}

}  // namespace

FiniteLattice::FiniteLattice(std::string name, std::vector<std::string> labels,
                             std::vector<std::vector<bool>> leq,
                             std::optional<std::vector<Element>> complement)
    : name_(std::move(name)), labels_(std::move(labels)), complement_(std::move(complement)) {
  const std::size_t n = labels_.size();
  if (n == 0 || n > 64 || leq.size() != n) throw std::invalid_argument("bad carrier");
  leq_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (leq[a].size() != n) throw std::invalid_argument("bad order table");
    for (std::size_t b = 0; b < n; ++b) leq_[a * n + b] = leq[a][b];
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq_[a * n + a]) throw std::invalid_argument("order is not reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq_[a * n + b] && leq_[b * n + a]) throw std::invalid_argument("not antisymmetric");
      for (std::size_t c = 0; c < n; ++c) {
        if (leq_[a * n + b] && leq_[b * n + c] && !leq_[a * n + c]) {
          throw std::invalid_argument("order is not transitive");
        }
      }
    }
  }
  meet_.resize(n * n);
  join_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto lower = [&](std::size_t c) { return leq_[c * n + a] && leq_[c * n + b]; };
      auto upper = [&](std::size_t c) { return leq_[a * n + c] && leq_[b * n + c]; };
      std::optional<std::size_t> glb, lub;
      for (std::size_t c = 0; c < n; ++c) {
        bool greatest = lower(c), least = upper(c);
        for (std::size_t d = 0; d < n; ++d) {
          if (greatest && lower(d) && !leq_[d * n + c]) greatest = false;
          if (least && upper(d) && !leq_[c * n + d]) least = false;
        }
        if (greatest) glb = c;
        if (least) lub = c;
      }
      if (!glb || !lub) throw std::invalid_argument("order is not a lattice");
      meet_[a * n + b] = static_cast<Element>(*glb);
      join_[a * n + b] = static_cast<Element>(*lub);
    }
  }
  bottom_ = 0;
  top_ = 0;
  for (std::size_t a = 1; a < n; ++a) {
    bottom_ = meet_[bottom_ * n + a];
    top_ = join_[top_ * n + a];
  }
  if (complement_) {
    if (complement_->size() != n) throw std::invalid_argument("bad complement table");
    if (!ortho_laws_hold()) throw std::invalid_argument("complement violates the ortholattice laws");
  }
}

bool FiniteLattice::ortho_laws_hold() const {
  const auto n = static_cast<Element>(size());
  for (Element x = 0; x < n; ++x) {
    const Element nx = (*complement_)[x];
    if ((*complement_)[nx] != x) return false;
    if (join(x, nx) != top_ || meet(x, nx) != bottom_) return false;
    for (Element y = 0; y < n; ++y) {
      const Element ny = (*complement_)[y];
      if ((*complement_)[join(x, y)] != meet(nx, ny)) return false;
      if ((*complement_)[meet(x, y)] != join(nx, ny)) return false;
    }
  }
  return true;
}

Element FiniteLattice::complement(Element a) const {
  if (!complement_) throw Error(ErrorCode::MissingInterpretation, name_ + " has no complement");
  return (*complement_)[a];
}

bool FiniteLattice::is_distributive() const {
  const auto n = static_cast<Element>(size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return false;
      }
    }
  }
  return true;
}

FiniteLattice FiniteLattice::boolean2() {
  return FiniteLattice("B2", {"0", "1"}, order_from_covers(2, {{0, 1}}), std::vector<Element>{1, 0});
}

FiniteLattice FiniteLattice::o6() {
  // 0, a, b, ~b, ~a, 1
  return FiniteLattice("O6", {"0", "a", "b", "~b", "~a", "1"},
                       order_from_covers(6, {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}}),
                       std::vector<Element>{5, 4, 3, 2, 1, 0});
}

FiniteLattice FiniteLattice::boolean4() {
  // 0, p, q, 1 with q = ~p
  return FiniteLattice("B4", {"0", "p", "q", "1"},
                       order_from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
                       std::vector<Element>{3, 2, 1, 0});
}

FiniteLattice FiniteLattice::m3() {
  return FiniteLattice("M3", {"0", "a", "b", "c", "1"},
                       order_from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}));
}

FiniteLattice FiniteLattice::n5() {
  return FiniteLattice("N5", {"0", "a", "b", "c", "1"},
                       order_from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}));
}

Element FnTable::operator()(const FiniteLattice& m, std::span<const Element> args) const {
  std::size_t index = 0;
  std::size_t stride = 1;
  for (Element a : args) {
    index += a * stride;
    stride *= m.size();
  }
  return values[index];
}

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

std::vector<Element> decode(std::size_t index, std::size_t n, std::size_t arity) {
  std::vector<Element> out(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    out[i] = static_cast<Element>(index % n);
    index /= n;
  }
  return out;
}

// y is below x in the product order where each argument is compared per its variance.
bool below(const FiniteLattice& m, const std::vector<Element>& y, const std::vector<Element>& x,
           const std::vector<Variance>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    switch (vs[i]) {
      case Variance::Covariant:
        if (!m.leq(y[i], x[i])) return false;
        break;
      case Variance::Contravariant:
        if (!m.leq(x[i], y[i])) return false;
        break;
      case Variance::Invariant:
        if (y[i] != x[i]) return false;
        break;
    }
  }
  return true;
}

}  // namespace

bool satisfies_v10(const FiniteLattice& m, const FnTable& table,
                   const std::vector<Variance>& variances) {
  const std::size_t n = m.size();
  const std::size_t total = power(n, variances.size());
  if (table.arity != variances.size() || table.values.size() != total) return false;
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::vector<Element> x = decode(idx, n, table.arity);
    for (std::size_t i = 0; i < table.arity; ++i) {
      if (variances[i] == Variance::Invariant) continue;
      std::vector<Element> y = x;
      for (Element v = 0; v < n; ++v) {
        y[i] = v;
        const bool up = variances[i] == Variance::Covariant ? m.leq(x[i], v) : m.leq(v, x[i]);
        if (up && !m.leq(table(m, x), table(m, y))) return false;
      }
    }
  }
  return true;
}

FnTable sample_monotone_table(const FiniteLattice& m, const std::vector<Variance>& variances,
                              std::mt19937_64& rng) {
  const std::size_t n = m.size();
  const std::size_t arity = variances.size();
  const std::size_t total = power(n, arity);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  std::vector<Element> raw(total);
  for (Element& v : raw) v = static_cast<Element>(pick(rng));

  // Either closure is monotone; alternating between them avoids a bias
  // toward top (join closure) or bottom (meet closure).
  const bool join_closure = std::bernoulli_distribution(0.5)(rng);
  FnTable out{arity, std::vector<Element>(total)};
  for (std::size_t x = 0; x < total; ++x) {
    const std::vector<Element> xs = decode(x, n, arity);
    Element acc = join_closure ? m.bottom() : m.top();
    for (std::size_t y = 0; y < total; ++y) {
      const std::vector<Element> ys = decode(y, n, arity);
      if (join_closure && below(m, ys, xs, variances)) acc = m.join(acc, raw[y]);
      if (!join_closure && below(m, xs, ys, variances)) acc = m.meet(acc, raw[y]);
    }
    out.values[x] = acc;
  }
  return out;
}

Interpretation random_interpretation(const TermUniverse& u, const FiniteLattice& m,
                                     const std::vector<std::string>& vars, std::mt19937_64& rng) {
  Interpretation out;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(m.size()) - 1);
  for (const std::string& v : vars) out.valuation[v] = static_cast<Element>(pick(rng));
  for (std::uint32_t s = 0; s < u.symbol_count(); ++s) {
    const SymbolDecl& d = u.symbol(SymbolId{s});
    if (d.is_dual()) continue;
    out.tables[SymbolId{s}] = sample_monotone_table(m, d.variances, rng);
  }
  return out;
}

Element eval(const TermUniverse& u, TermId t, const FiniteLattice& m, const Interpretation& in) {
  std::unordered_map<TermId, Element> value;
  auto variable = [&](TermId v) {
    const auto it = in.valuation.find(u.var_name(v));
    if (it == in.valuation.end()) {
      throw Error(ErrorCode::MissingInterpretation,
                  "no value for variable '" + std::string(u.var_name(v)) + "'");
    }
    return it->second;
  };
  for (TermId sub : u.subterms(t)) {
    const TermNode& n = u.node(sub);
    Element r = m.bottom();
    switch (n.kind) {
      case TermKind::Var: r = variable(sub); break;
      case TermKind::NegVar: r = m.complement(variable(sub)); break;
      case TermKind::Top: r = m.top(); break;
      case TermKind::Bot: r = m.bottom(); break;
      case TermKind::Meet:
        r = m.top();
        for (TermId c : n.children) r = m.meet(r, value.at(c));
        break;
      case TermKind::Join:
        for (TermId c : n.children) r = m.join(r, value.at(c));
        break;
      case TermKind::Not: r = m.complement(value.at(n.children[0])); break;
      case TermKind::App: {
        const SymbolDecl& d = u.symbol(SymbolId{n.label});
        const SymbolId base = d.dual_of.value_or(SymbolId{n.label});
        const auto it = in.tables.find(base);
        if (it == in.tables.end()) {
          throw Error(ErrorCode::MissingInterpretation, "no table for symbol '" + d.name + "'");
        }
        std::vector<Element> args;
        args.reserve(n.children.size());
        for (TermId c : n.children) args.push_back(value.at(c));
        r = it->second(m, args);
        if (d.is_dual()) r = m.complement(r);
        break;
      }
    }
    value.emplace(sub, r);
  }
  return value.at(t);
}

}  // namespace olsub::oracle
