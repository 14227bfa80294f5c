#include "support.hpp"

#include <algorithm>
#include <functional>

namespace olsub::testing {

TermGen::TermGen(TermUniverse& u, std::uint64_t seed, GenConfig cfg)
    : u_(u), rng_(seed), cfg_(std::move(cfg)) {}

TermId TermGen::leaf() {
  std::vector<std::function<TermId()>> choices;
  for (const std::string& v : cfg_.vars) {
    choices.push_back([this, v] { return u_.var(v); });
    if (cfg_.neg_vars) choices.push_back([this, v] { return u_.neg_var(v); });
  }
  if (cfg_.constants) {
    choices.push_back([this] { return u_.top(); });
    choices.push_back([this] { return u_.bot(); });
  }
  for (SymbolId f : cfg_.symbols) {
    if (u_.symbol(f).arity() == 0) {
      choices.push_back([this, f] { return u_.app(f, std::span<const TermId>{}); });
    }
  }
  return choices[pick(choices.size())]();
}

TermId TermGen::exact(std::size_t size) {
  if (size <= 1) return leaf();
  enum class Shape { Not, App, Binary };
  std::vector<std::pair<Shape, SymbolId>> shapes;
  if (cfg_.negation) shapes.push_back({Shape::Not, {}});
  for (SymbolId f : cfg_.symbols) {
    const std::size_t arity = u_.symbol(f).arity();
    if (arity > 0 && size - 1 >= arity) shapes.push_back({Shape::App, f});
  }
  if (size >= 3) {
    shapes.push_back({Shape::Binary, {}});
    shapes.push_back({Shape::Binary, {}});
  }
  if (shapes.empty()) return exact(size - 1);

  const auto [shape, f] = shapes[pick(shapes.size())];
  switch (shape) {
    case Shape::Not:
      return u_.negation(exact(size - 1));
    case Shape::App: {
      const std::size_t arity = u_.symbol(f).arity();
      // Random composition of size - 1 into `arity` positive parts.
      std::vector<std::size_t> parts(arity, 1);
      for (std::size_t extra = size - 1 - arity; extra > 0; --extra) ++parts[pick(arity)];
      std::vector<TermId> args;
      for (std::size_t p : parts) args.push_back(exact(p));
      return u_.app(f, args);
    }
    case Shape::Binary: {
      const std::size_t left = 1 + pick(size - 2);
      const TermId a = exact(left);
      const TermId b = exact(size - 1 - left);
      return pick(2) == 0 ? u_.meet(a, b) : u_.join(a, b);
    }
  }
  return leaf();
}

TermId TermGen::up_to(std::size_t max_size) { return exact(1 + pick(max_size)); }

AxiomSet TermGen::axioms(std::size_t max_count, std::size_t max_size) {
  AxiomSet out;
  const std::size_t n = pick(max_count + 1);
  for (std::size_t i = 0; i < n; ++i) out.add_leq(up_to(max_size), up_to(max_size));
  return out;
}

namespace {

using Path = std::vector<std::size_t>;

void collect_paths(const TermUniverse& u, TermId t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  const auto kids = u.children(t);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    cur.push_back(i);
    collect_paths(u, kids[i], cur, out);
    cur.pop_back();
  }
}

TermId at(const TermUniverse& u, TermId t, const Path& p) {
  for (std::size_t i : p) t = u.children(t)[i];
  return t;
}

TermId rebuild(TermUniverse& u, TermId t, std::vector<TermId> kids) {
  switch (u.kind(t)) {
    case TermKind::Meet: return u.meet(kids);
    case TermKind::Join: return u.join(kids);
    case TermKind::Not: return u.negation(kids[0]);
    case TermKind::App: return u.app(u.app_symbol(t), kids);
    default: return t;
  }
}

TermId replace_at(TermUniverse& u, TermId t, const Path& p, std::size_t depth, TermId with) {
  if (depth == p.size()) return with;
  const auto span = u.children(t);
  std::vector<TermId> kids(span.begin(), span.end());
  kids[p[depth]] = replace_at(u, kids[p[depth]], p, depth + 1, with);
  return rebuild(u, t, std::move(kids));
}

std::vector<TermId> without(std::span<const TermId> kids, std::size_t i) {
  std::vector<TermId> out(kids.begin(), kids.end());
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

bool is_nary(TermKind k) { return k == TermKind::Meet || k == TermKind::Join; }

// Laws applied at one subterm `s`; each returns nullopt when the shape does
// not fit. `r` is a fresh random operand for the expanding directions.
std::optional<TermId> rewrite(TermUniverse& u, TermId s, TermId r, std::size_t law, TermGen& g) {
  const TermKind k = u.kind(s);
  const auto kids = u.children(s);
  const auto op = [&](TermKind kind, std::vector<TermId> xs) {
    return kind == TermKind::Meet ? u.meet(xs) : u.join(xs);
  };
  const TermKind dual = k == TermKind::Meet ? TermKind::Join : TermKind::Meet;
  switch (law) {
    case 0: {  // commutativity
      if (!is_nary(k)) return std::nullopt;
      std::vector<TermId> xs(kids.begin(), kids.end());
      std::shuffle(xs.begin(), xs.end(), g.rng());
      return op(k, xs);
    }
    case 1: {  // idempotence
      if (is_nary(k)) {
        for (std::size_t i = 0; i < kids.size(); ++i) {
          for (std::size_t j = 0; j < i; ++j) {
            if (kids[i] == kids[j]) return op(k, without(kids, i));
          }
        }
      }
      return g.pick(2) == 0 ? u.meet(s, s) : u.join(s, s);
    }
    case 2: {  // absorption
      if (is_nary(k)) {
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (u.kind(kids[i]) != dual) continue;
          for (TermId inner : u.children(kids[i])) {
            for (std::size_t j = 0; j < kids.size(); ++j) {
              if (j != i && kids[j] == inner) return op(k, without(kids, i));
            }
          }
        }
      }
      return g.pick(2) == 0 ? u.join(s, u.meet(s, r)) : u.meet(s, u.join(s, r));
    }
    case 3: {  // top / bot absorb
      if (k == TermKind::Top) return u.join(r, s);
      if (k == TermKind::Bot) return u.meet(r, s);
      if (is_nary(k)) {
        const TermId zero = k == TermKind::Join ? u.top() : u.bot();
        if (std::find(kids.begin(), kids.end(), zero) != kids.end()) return zero;
      }
      return std::nullopt;
    }
    case 4: {  // units
      if (is_nary(k)) {
        const TermId unit = k == TermKind::Join ? u.bot() : u.top();
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (kids[i] == unit) return op(k, without(kids, i));
        }
      }
      return g.pick(2) == 0 ? u.join(s, u.bot()) : u.meet(s, u.top());
    }
    case 5: {  // double negation
      if (k == TermKind::Not && u.kind(kids[0]) == TermKind::Not) return u.children(kids[0])[0];
      return u.negation(u.negation(s));
    }
    case 6: {  // excluded middle and contradiction
      if (k == TermKind::Top) return u.join(r, u.negation(r));
      if (k == TermKind::Bot) return u.meet(r, u.negation(r));
      if (is_nary(k)) {
        for (TermId a : kids) {
          if (u.kind(a) != TermKind::Not) continue;
          const TermId b = u.children(a)[0];
          if (std::find(kids.begin(), kids.end(), b) != kids.end()) {
            return k == TermKind::Join ? u.top() : u.bot();
          }
        }
      }
      return std::nullopt;
    }
    case 7: {  // De Morgan, both directions
      if (k == TermKind::Not && is_nary(u.kind(kids[0]))) {
        const TermKind inner = u.kind(kids[0]);
        std::vector<TermId> xs;
        for (TermId a : u.children(kids[0])) xs.push_back(u.negation(a));
        return op(inner == TermKind::Meet ? TermKind::Join : TermKind::Meet, xs);
      }
      if (is_nary(k) && std::all_of(kids.begin(), kids.end(),
                                    [&](TermId a) { return u.kind(a) == TermKind::Not; })) {
        std::vector<TermId> xs;
        for (TermId a : kids) xs.push_back(u.children(a)[0]);
        return u.negation(op(dual, xs));
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

constexpr const char* kLawNames[] = {"commutativity", "idempotence",      "absorption",
                                     "top-bot",       "units",            "double-negation",
                                     "complement",    "de-morgan"};
constexpr std::size_t kLawCount = std::size(kLawNames);

}  // namespace

TermId apply_random_law(TermUniverse& u, TermId t, TermGen& gen, std::string* law) {
  std::vector<Path> paths;
  Path cur;
  collect_paths(u, t, cur, paths);
  const Path& p = paths[gen.pick(paths.size())];
  const TermId s = at(u, t, p);
  const std::size_t start = gen.pick(kLawCount);
  for (std::size_t k = 0; k < kLawCount; ++k) {
    const std::size_t l = (start + k) % kLawCount;
    if (auto out = rewrite(u, s, gen.exact(1 + gen.pick(3)), l, gen)) {
      if (law) *law = kLawNames[l];
      return replace_at(u, t, p, 0, *out);
    }
  }
  return t;  // unreachable: idempotence always applies
}

std::vector<SymbolId> declare_standard_symbols(TermUniverse& u) {
  return {u.declare_symbol("F", {Variance::Covariant}),
          u.declare_symbol("Arrow", {Variance::Contravariant, Variance::Covariant})};
}

}  // namespace olsub::testing
