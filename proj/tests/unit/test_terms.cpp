#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "olsub/error.hpp"
#include "olsub/term.hpp"
#include "support.hpp"

namespace olsub {
namespace {

using V = Variance;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no olsub::Error thrown";
  return ErrorCode::BadN;
}

TEST(Signature, DeclaresWithVariances) {
  TermUniverse u;
  const SymbolId arrow = u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  const SymbolId p = u.declare_symbol("P", {V::Covariant, V::Covariant});
  EXPECT_EQ(u.symbol(arrow).name, "Arrow");
  EXPECT_EQ(u.symbol(arrow).arity(), 2u);
  EXPECT_EQ(u.symbol(arrow).variances, (std::vector<V>{V::Contravariant, V::Covariant}));
  EXPECT_EQ(u.symbol(p).variances, (std::vector<V>{V::Covariant, V::Covariant}));
  EXPECT_EQ(u.find_symbol("P"), p);
  EXPECT_FALSE(u.find_symbol("Q").has_value());
}

TEST(Signature, RedeclarationWithOtherVariancesConflicts) {
  TermUniverse u;
  u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  EXPECT_EQ(code_of([&] { u.declare_symbol("Arrow", {V::Covariant, V::Covariant}); }),
            ErrorCode::ConflictingDeclaration);
}

TEST(Signature, DualFlipsVariancesAndIsAnInvolution) {
  TermUniverse u;
  const SymbolId arrow = u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  const SymbolId p = u.declare_symbol("P", {V::Covariant, V::Covariant});
  const SymbolId inv = u.declare_symbol("Inv", {V::Invariant});

  const SymbolId arrow_bar = u.dual_symbol(arrow);
  EXPECT_EQ(u.symbol(arrow_bar).variances, (std::vector<V>{V::Covariant, V::Contravariant}));
  EXPECT_EQ(u.symbol(arrow_bar).dual_of, arrow);
  EXPECT_EQ(u.symbol(u.dual_symbol(p)).variances,
            (std::vector<V>{V::Contravariant, V::Contravariant}));
  EXPECT_EQ(u.symbol(u.dual_symbol(inv)).variances, std::vector<V>{V::Invariant});
  EXPECT_EQ(u.dual_symbol(arrow_bar), arrow);
  EXPECT_EQ(u.dual_symbol(arrow), arrow_bar);
}

TEST(Signature, FlipIsAnInvolution) {
  for (V v : {V::Invariant, V::Covariant, V::Contravariant}) EXPECT_EQ(flip(flip(v)), v);
  const std::vector<V> vs{V::Invariant, V::Covariant, V::Contravariant};
  EXPECT_EQ(flip_all(flip_all(vs)), vs);
}

TEST(Interning, SameStructureSameId) {
  TermUniverse u;
  const TermId x = u.var("x");
  const TermId y = u.var("y");
  EXPECT_EQ(u.meet(x, y), u.meet(x, y));
  EXPECT_NE(u.meet(x, y), u.meet(y, x));
  EXPECT_NE(u.meet(x, y), u.join(x, y));
}

TEST(Interning, ArityIsChecked) {
  TermUniverse u;
  const SymbolId arrow = u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  const TermId x = u.var("x");
  EXPECT_EQ(code_of([&] { u.app(arrow, {x}); }), ErrorCode::ArityMismatch);
}

TEST(Interning, MalformedNodesAreRejected) {
  TermUniverse u;
  const TermId x = u.var("x");
  EXPECT_EQ(code_of([&] { u.intern(TermNode{TermKind::Not, 0, {x, x}}); }),
            ErrorCode::MalformedTerm);
  EXPECT_EQ(code_of([&] { u.intern(TermNode{TermKind::Meet, 0, {x}}); }),
            ErrorCode::MalformedTerm);
}

TEST(Interning, NaryFlattening) {
  TermUniverse u;
  const TermId x = u.var("x"), y = u.var("y"), z = u.var("z");
  const TermId nested = u.meet(x, u.meet(y, z));
  const TermId flat = u.meet(u.meet(x, y), z);
  EXPECT_EQ(nested, flat);
  EXPECT_EQ(u.children(flat).size(), 3u);
  EXPECT_EQ(u.meet(std::span<const TermId>{}), u.top());
  EXPECT_EQ(u.join(std::span<const TermId>{}), u.bot());
  const TermId one[] = {x};
  EXPECT_EQ(u.meet(one), x);
}

TEST(Subterms, Examples) {
  TermUniverse u;
  const SymbolId arrow = u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  const TermId x = u.var("x"), y = u.var("y");
  EXPECT_EQ(u.subterms(x), std::vector<TermId>{x});

  const TermId xy = u.join(x, y);
  const TermId t = u.meet(x, xy);
  const auto subs = u.subterms(t);
  EXPECT_EQ(std::set<TermId>(subs.begin(), subs.end()), (std::set<TermId>{x, y, xy, t}));
  EXPECT_EQ(subs.size(), 4u);
  EXPECT_EQ(subs.back(), t);

  EXPECT_EQ(u.subterms(u.app(arrow, {x, x})).size(), 2u);
}

TEST(Size, Examples) {
  TermUniverse u;
  const TermId x = u.var("x"), y = u.var("y"), z = u.var("z");
  EXPECT_EQ(u.size(x), 1u);
  const TermId xyz[] = {x, y, z};
  EXPECT_EQ(u.size(u.meet(xyz)), 5u);
  EXPECT_EQ(u.size(u.negation(u.join(x, y))), 4u);
  EXPECT_EQ(u.size(u.neg_var("x")), 1u);
}

TEST(Size, DualApplicationCountsOneNode) {
  TermUniverse u;
  const SymbolId arrow = u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  const TermId x = u.var("x"), y = u.var("y");
  EXPECT_EQ(u.size(u.app(u.dual_symbol(arrow), {x, y})), u.size(u.app(arrow, {x, y})));
}

TEST(Negand, NegVarAndDualApps) {
  TermUniverse u;
  const SymbolId f = u.declare_symbol("F", {V::Covariant});
  const TermId x = u.var("x");
  EXPECT_EQ(u.negand(u.neg_var("x")), x);
  EXPECT_EQ(u.negand(u.app(u.dual_symbol(f), {x})), u.app(f, {x}));
  EXPECT_FALSE(u.negand(x).valid());
  EXPECT_FALSE(u.negand(u.negation(x)).valid());
  EXPECT_TRUE(u.has_negation(u.neg_var("x")));
  EXPECT_FALSE(u.has_not(u.neg_var("x")));
}

TEST(Compare, IsATotalOrderConsistentWithIdentity) {
  TermUniverse u;
  const auto syms = testing::declare_standard_symbols(u);
  testing::TermGen gen(u, 11, {.symbols = syms, .neg_vars = true});
  std::vector<TermId> ts;
  for (int i = 0; i < 200; ++i) ts.push_back(gen.up_to(8));
  for (TermId a : ts) {
    for (TermId b : ts) {
      const auto ab = u.compare(a, b);
      EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
      EXPECT_TRUE(ab == (0 <=> u.compare(b, a)));
    }
  }
  std::vector<TermId> sorted = ts;
  std::sort(sorted.begin(), sorted.end(), [&](TermId a, TermId b) { return u.compare(a, b) < 0; });
  for (std::size_t i = 2; i < sorted.size(); ++i) {
    EXPECT_TRUE(u.compare(sorted[i - 2], sorted[i]) <= 0);
  }
}

// Properties over random terms.

class RandomTerms : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomTerms, InterningIsStructural) {
  TermUniverse u;
  const auto syms = testing::declare_standard_symbols(u);
  testing::TermGen gen(u, GetParam(), {.symbols = syms});
  for (int i = 0; i < 200; ++i) {
    const TermId t = gen.up_to(12);
    // Re-interning every node from its structure yields the same id.
    for (TermId s : u.subterms(t)) EXPECT_EQ(u.intern(u.node(s)), s);
  }
}

TEST_P(RandomTerms, SizeIsPositiveAndAdditive) {
  TermUniverse u;
  const auto syms = testing::declare_standard_symbols(u);
  testing::TermGen gen(u, GetParam(), {.symbols = syms, .neg_vars = true});
  for (int i = 0; i < 200; ++i) {
    const TermId t = gen.up_to(12);
    for (TermId s : u.subterms(t)) {
      ASSERT_GT(u.size(s), 0u);
      std::uint64_t kids = 0;
      for (TermId c : u.children(s)) kids += u.size(c);
      const std::size_t n = u.children(s).size();
      switch (u.kind(s)) {
        case TermKind::Meet:
        case TermKind::Join: EXPECT_EQ(u.size(s), kids + n - 1); break;
        case TermKind::Not:
        case TermKind::App: EXPECT_EQ(u.size(s), kids + 1); break;
        default: EXPECT_EQ(u.size(s), 1u);
      }
    }
  }
}

TEST_P(RandomTerms, GeneratorHitsExactSizes) {
  TermUniverse u;
  const auto syms = testing::declare_standard_symbols(u);
  testing::TermGen gen(u, GetParam(), {.symbols = syms});
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(u.size(gen.exact(n)), n);
}

TEST_P(RandomTerms, SubtermsAreClosed) {
  TermUniverse u;
  const auto syms = testing::declare_standard_symbols(u);
  testing::TermGen gen(u, GetParam(), {.symbols = syms});
  for (int i = 0; i < 100; ++i) {
    const TermId t = gen.up_to(12);
    const auto all = u.subterms(t);
    const std::set<TermId> closure(all.begin(), all.end());
    EXPECT_EQ(closure.size(), all.size());
    for (TermId s : all) {
      for (TermId d : u.subterms(s)) EXPECT_TRUE(closure.count(d));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomTerms, ::testing::Values(1u, 2u, 3u));

}  // namespace
}  // namespace olsub
