#include "olsub/oracle/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace olsub::oracle {

std::vector<TermId> enumerate_terms(TermUniverse& u, const std::vector<std::string>& vars,
                                    const std::vector<SymbolId>& symbols, std::size_t max_size,
                                    TermLanguage language) {
  std::vector<std::vector<TermId>> by_size(max_size + 1);
  std::unordered_set<TermId> seen;
  auto keep = [&](TermId t) {
    const std::uint64_t s = u.size(t);
    if (s <= max_size && seen.insert(t).second) by_size[s].push_back(t);
  };

  if (max_size >= 1) {
    for (const std::string& v : vars) keep(u.var(v));
    if (language == TermLanguage::Extended) {
      for (const std::string& v : vars) keep(u.neg_var(v));
    }
    keep(u.top());
    keep(u.bot());
  }

  for (std::size_t size = 1; size <= max_size; ++size) {
    for (SymbolId f : symbols) {
      const std::size_t arity = u.symbol(f).arity();
      if (arity == 0) {
        if (size == 1) keep(u.app(f, std::span<const TermId>{}));
        continue;
      }
      // Argument size compositions summing to size - 1.
      std::vector<TermId> args(arity);
      std::function<void(std::size_t, std::size_t)> place = [&](std::size_t i, std::size_t left) {
        if (i == arity) {
          if (left == 0) keep(u.app(f, args));
          return;
        }
        const std::size_t reserve = arity - i - 1;
        for (std::size_t s = 1; s + reserve <= left; ++s) {
          for (TermId t : std::vector<TermId>(by_size[s])) {
            args[i] = t;
            place(i + 1, left - s);
          }
        }
      };
      if (size >= 1 + arity) place(0, size - 1);
    }
    if (language == TermLanguage::Ortho && size >= 2) {
      for (TermId t : std::vector<TermId>(by_size[size - 1])) keep(u.negation(t));
    }
    if (size >= 3) {
      for (std::size_t ls = 1; ls + 2 <= size; ++ls) {
        const std::size_t rs = size - 1 - ls;
        const std::vector<TermId> lefts = by_size[ls];
        const std::vector<TermId> rights = by_size[rs];
        for (TermId a : lefts) {
          for (TermId b : rights) {
            keep(u.meet(a, b));
            keep(u.join(a, b));
          }
        }
      }
    }
  }

  std::vector<TermId> out;
  for (const auto& bucket : by_size) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

TermId min_equivalent(const TermUniverse& u, TermId t, const std::vector<TermId>& candidates,
                      entail::Logic logic) {
  entail::Engine engine(u, {}, logic);
  TermId best = t;
  for (TermId c : candidates) {
    if (u.size(c) >= u.size(best)) continue;
    if (engine.equivalent(c, t)) best = c;
  }
  return best;
}

}  // namespace olsub::oracle
