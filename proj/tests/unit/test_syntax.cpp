#include <gtest/gtest.h>

#include "olsub/error.hpp"
#include "olsub/normalize.hpp"
#include "olsub/syntax.hpp"
#include "support.hpp"

namespace olsub {
namespace {

using syntax::parse_query;
using syntax::parse_source;
using syntax::parse_term;
using syntax::print_term;
using V = Variance;

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no olsub::Error thrown";
  return Error(ErrorCode::BadN, "none");
}

TEST(Parse, Precedence) {
  TermUniverse u;
  const TermId x = u.var("x"), y = u.var("y"), z = u.var("z");
  EXPECT_EQ(parse_term("x | y & z", u), u.join(x, u.meet(y, z)));
  EXPECT_EQ(parse_term("(x | y) & z", u), u.meet(u.join(x, y), z));
  EXPECT_EQ(parse_term("~(x & y)", u), u.negation(u.meet(x, y)));
  EXPECT_EQ(parse_term("~x & y", u), u.meet(u.negation(x), y));
  EXPECT_EQ(parse_term("~~x", u), u.negation(u.negation(x)));
}

TEST(Parse, ApplicationsAndConstants) {
  TermUniverse u;
  const SymbolId arrow = u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  const SymbolId nil = u.declare_symbol("Nil", {});
  const TermId x = u.var("x"), y = u.var("y");
  EXPECT_EQ(parse_term("Arrow(x, y | top)", u), u.app(arrow, {x, u.join(y, u.top())}));
  EXPECT_EQ(parse_term("Nil", u), u.app(nil, std::span<const TermId>{}));
  EXPECT_EQ(parse_term("Nil()", u), u.app(nil, std::span<const TermId>{}));
  EXPECT_EQ(parse_term("bot", u), u.bot());
}

TEST(Parse, UserOrderIsPreserved) {
  TermUniverse u;
  EXPECT_NE(parse_term("x & y", u), parse_term("y & x", u));
}

TEST(Parse, Queries) {
  TermUniverse u;
  const auto leq = parse_query("x & y <= x", u);
  EXPECT_EQ(leq.relation, syntax::Relation::Leq);
  EXPECT_EQ(leq.lhs, parse_term("x & y", u));
  EXPECT_EQ(parse_query("x >= y", u).relation, syntax::Relation::Geq);
  EXPECT_EQ(parse_query("x = y", u).relation, syntax::Relation::Eq);
}

TEST(Parse, ErrorsCarryPositions) {
  TermUniverse u;
  u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});

  Error e = error_of([&] { parse_term("x & ", u); });
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  ASSERT_TRUE(e.position().has_value());
  EXPECT_EQ(*e.position(), 4u);

  e = error_of([&] { parse_term("G(x)", u); });
  EXPECT_EQ(e.code(), ErrorCode::UndeclaredSymbol);
  EXPECT_EQ(e.position(), std::optional<std::size_t>(0));

  e = error_of([&] { parse_term("x | Arrow(x)", u); });
  EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  EXPECT_EQ(e.position(), std::optional<std::size_t>(4));

  e = error_of([&] { parse_term("x $ y", u); });
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_EQ(e.position(), std::optional<std::size_t>(2));

  e = error_of([&] { parse_term("(x", u); });
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_TRUE(e.position().has_value());

  e = error_of([&] { parse_query("x y", u); });
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_TRUE(e.position().has_value());
}

TEST(Source, DeclarationAndAxiom) {
  TermUniverse u;
  const auto src = parse_source("fun Arrow : (-,+)\nU <= S\n", u);
  ASSERT_EQ(src.symbols.size(), 1u);
  EXPECT_EQ(u.symbol(src.symbols[0]).variances,
            (std::vector<V>{V::Contravariant, V::Covariant}));
  ASSERT_EQ(src.axioms.size(), 1u);
  EXPECT_EQ(src.axioms[0], (Axiom{u.var("U"), u.var("S")}));
}

TEST(Source, EqualitySplitsIntoTwoInequalities) {
  TermUniverse u;
  const auto src = parse_source("A = B", u);
  const TermId a = u.var("A"), b = u.var("B");
  ASSERT_EQ(src.axioms.size(), 2u);
  EXPECT_TRUE(src.axioms.contains(a, b));
  EXPECT_TRUE(src.axioms.contains(b, a));
}

TEST(Source, ClassExtendsEncoding) {
  TermUniverse u;
  const auto src = parse_source("# U extends S with T[S]\nfun T : (+)\nU <= S & T(S)\n", u);
  const SymbolId t = *u.find_symbol("T");
  const TermId s = u.var("S");
  ASSERT_EQ(src.axioms.size(), 1u);
  EXPECT_EQ(src.axioms[0], (Axiom{u.var("U"), u.meet(s, u.app(t, {s}))}));
}

TEST(Source, Definitions) {
  TermUniverse u;
  const auto src = parse_source("fun S : (+)\ntype U[A] <: S(A)\ntype L[A] >: A\n", u);
  ASSERT_EQ(src.definitions.size(), 2u);
  EXPECT_EQ(src.definitions[0].kind, defs::BoundKind::Upper);
  EXPECT_EQ(src.definitions[0].params, std::vector<std::string>{"A"});
  EXPECT_EQ(src.definitions[1].kind, defs::BoundKind::Lower);
  // Variances of a defined symbol are inferred from its bound.
  EXPECT_EQ(u.symbol(src.definitions[0].symbol).variances, std::vector<V>{V::Covariant});
}

TEST(Source, ErrorsReportLineAndColumn) {
  TermUniverse u;
  Error e = error_of([&] { parse_source("x <= y\n\nx <= (y\n", u); });
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_EQ(e.line(), std::optional<std::size_t>(3));
  EXPECT_TRUE(e.position().has_value());

  e = error_of([&] { parse_source("type U[A] <: U(A)\n", u); });
  EXPECT_EQ(e.code(), ErrorCode::RecursiveDefinition);

  e = error_of([&] { parse_source("type W[A] <: B\n", u); });
  EXPECT_EQ(e.code(), ErrorCode::MalformedTerm);

  e = error_of([&] { parse_source("fun S : (+)\ntype W[A] <: S(A)\ntype W[A] <: A\n", u); });
  EXPECT_EQ(e.code(), ErrorCode::DuplicateDefinition);
  EXPECT_EQ(e.line(), std::optional<std::size_t>(3));

  e = error_of([&] { parse_source("fun S : (+)\nfun S : (-)\n", u); });
  EXPECT_EQ(e.code(), ErrorCode::ConflictingDeclaration);
  EXPECT_EQ(e.line(), std::optional<std::size_t>(2));
}

TEST(Print, Examples) {
  TermUniverse u;
  const SymbolId arrow = u.declare_symbol("Arrow", {V::Contravariant, V::Covariant});
  const TermId x = u.var("x"), y = u.var("y");
  EXPECT_EQ(print_term(u, u.join(x, y)), "x | y");
  EXPECT_EQ(print_term(u, u.neg_var("x")), "~x");
  EXPECT_EQ(print_term(u, u.app(u.dual_symbol(arrow), {x, y})), "~Arrow(x, y)");
  EXPECT_EQ(print_term(u, u.meet(u.join(x, y), x)), "(x | y) & x");
  EXPECT_EQ(print_term(u, u.negation(u.meet(x, y))), "~(x & y)");
  EXPECT_EQ(print_term(u, u.top()), "top");
}

TEST(Print, InternalSymbolsUsePublicNameByDefault) {
  TermUniverse u;
  const SymbolId t = u.declare_internal_symbol("T'", "T", {V::Covariant});
  const TermId x = u.var("x");
  EXPECT_EQ(print_term(u, u.app(t, {x})), "T(x)");
  EXPECT_EQ(print_term(u, u.app(t, {x}), {.show_internals = true}), "T'(x)");
}

class RoundTrip : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RoundTrip, BaseSignatureTermsReparseToThemselves) {
  TermUniverse u;
  const auto syms = testing::declare_standard_symbols(u);
  testing::TermGen gen(u, GetParam(), {.symbols = syms});
  for (int i = 0; i < 500; ++i) {
    const TermId t = gen.up_to(14);
    const std::string text = print_term(u, t);
    EXPECT_EQ(parse_term(text, u), t) << text;
  }
}

TEST_P(RoundTrip, ExtendedTermsReparseToTheirNegationForm) {
  TermUniverse u;
  const auto syms = testing::declare_standard_symbols(u);
  testing::TermGen gen(u, GetParam(), {.symbols = syms});
  normalize::Normalizer n(u);
  for (int i = 0; i < 300; ++i) {
    const TermId t = n.delta(gen.up_to(12));
    const std::string text = print_term(u, t);
    EXPECT_EQ(n.delta(parse_term(text, u)), t) << text;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTrip, ::testing::Values(7u, 8u));

}  // namespace
}  // namespace olsub
