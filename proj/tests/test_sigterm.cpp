#include <gtest/gtest.h>

#include <random>

#include "malcev/sigterm.hpp"
#include "support.hpp"

using namespace malcev;

namespace {
const Signature kSig{1, 2};
Term x(int i) { return Term::var(i); }
}  // namespace

TEST(Signature, RequiresEllAtMostN) {
  EXPECT_NO_THROW(Signature::make(1, 2));
  EXPECT_THROW(Signature::make(2, 1), SignatureError);
  EXPECT_THROW(Signature::make(-1, 1), SignatureError);
}

TEST(ParseTerm, GrammarExamples) {
  EXPECT_EQ(parse_term("(m x1 z x1)", kSig), Term::m(x(1), Term::z(), x(1)));
  EXPECT_EQ(parse_term("(u 1 (r 2 x1 z))", kSig),
            Term::u(1, Term::r(2, x(1), Term::z())));
}

TEST(ParseTerm, SymbolOutOfBounds) {
  EXPECT_THROW(parse_term("(r 3 x1 z)", Signature{0, 2}), SignatureError);
  EXPECT_THROW(parse_term("(u 2 z)", kSig), SignatureError);
}

TEST(ParseTerm, SyntaxErrorsCarryPosition) {
  try {
    parse_term("(m x1 z", kSig);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(parse_term("(q x1)", kSig), ParseError);
  EXPECT_THROW(parse_term("x0", kSig), Error);
  EXPECT_THROW(parse_term("(m x1 z z) z", kSig), ParseError);
}

TEST(PrintTerm, Examples) {
  EXPECT_EQ(print_term(Term::m(x(1), Term::z(), x(1))), "(m x1 z x1)");
  EXPECT_EQ(print_term(Term::z()), "z");
  EXPECT_EQ(print_term(Term::u(1, Term::z())), "(u 1 z)");
}

TEST(PrintTerm, RoundTripOnRandomTerms) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Term t = test::random_term(rng, kSig, 3, 6);
    EXPECT_EQ(parse_term(print_term(t), kSig), t);
  }
}

TEST(Term, DepthCountsAtomsAsOne) {
  EXPECT_EQ(Term::z().depth(), 1);
  EXPECT_EQ(parse_term("(r 1 (u 1 x1) z)", kSig).depth(), 3);
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(parse_term("(r 1 x1 z)", kSig), {{1, x(2)}}, Term::z()),
            parse_term("(r 1 x2 z)", kSig));
  EXPECT_EQ(substitute(parse_term("(u 1 z)", kSig), {}, x(1)), parse_term("(u 1 x1)", kSig));
  EXPECT_EQ(substitute(parse_term("(m x1 x2 z)", kSig), {{1, Term::z()}, {2, Term::z()}}, x(1)),
            parse_term("(m z z x1)", kSig));
}

TEST(Substitute, UnboundVariable) {
  EXPECT_THROW(substitute(parse_term("(m x1 x2 z)", kSig), {{1, x(1)}}, Term::z()), Error);
}

TEST(Substitute, Composition) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Term t = test::random_term(rng, kSig, 2, 5);
    std::map<int, Term> s1{{1, test::random_term(rng, kSig, 2, 3)},
                           {2, test::random_term(rng, kSig, 2, 3)}};
    Term z1 = test::random_term(rng, kSig, 2, 3);
    std::map<int, Term> s2{{1, test::random_term(rng, kSig, 2, 3)},
                           {2, test::random_term(rng, kSig, 2, 3)}};
    Term z2 = test::random_term(rng, kSig, 2, 3);
    std::map<int, Term> composed;
    for (const auto& [k, v] : s1) composed.emplace(k, substitute(v, s2, z2));
    EXPECT_EQ(substitute(substitute(t, s1, z1), s2, z2),
              substitute(t, composed, substitute(z1, s2, z2)));
  }
}

TEST(Slice, Examples) {
  Term t = parse_term("(m x1 z x2)", kSig);
  EXPECT_EQ(slice(t, 0), parse_term("(m z z z)", kSig));
  EXPECT_EQ(slice(t, 1), parse_term("(m x1 z z)", kSig));
  EXPECT_EQ(slice(parse_term("(r 1 x1 x2)", kSig), 2), parse_term("(r 1 z x1)", kSig));
  EXPECT_THROW(slice(t, 3), Error);
}

TEST(IdentityFile, ParseAndPrint) {
  const char* text =
      "# comment\n"
      "sig l=1 n=2\n"
      "\n"
      "(u 1 z) = z\n"
      "(r 1 x1 z) = (m x1 z z)\n";
  IdentityFile f = parse_identity_file(text);
  EXPECT_EQ(f.sig, (Signature{1, 2}));
  ASSERT_EQ(f.ids.size(), 2u);
  EXPECT_EQ(f.ids[1].lhs, parse_term("(r 1 x1 z)", f.sig));
  EXPECT_EQ(parse_identity_file(print_identity_file(f)).ids, f.ids);
}

TEST(IdentityFile, Errors) {
  EXPECT_THROW(parse_identity_file("(u 1 z) = z\n"), ParseError);
  EXPECT_THROW(parse_identity_file("sig l=1 n=1\nsig l=1 n=1\n"), SignatureError);
  EXPECT_THROW(parse_identity_file("sig l=2 n=1\n"), SignatureError);
  EXPECT_THROW(parse_identity_file("sig l=0 n=1\n(r 2 x1 z) = z\n"), SignatureError);
  EXPECT_THROW(parse_identity_file("sig l=0 n=1\n(r 1 x1 z) z\n"), ParseError);
}

TEST(GeneralSignature, UniqueNames) {
  EXPECT_THROW(GeneralSignature({{"f", 1, false}, {"f", 2, false}}), SignatureError);
  GeneralSignature gs({{"f", 1, false}, {"g", 2, true}});
  EXPECT_FALSE(gs.is_finite());
  ASSERT_NE(gs.find("g"), nullptr);
  EXPECT_EQ(gs.find("g")->arity, 2);
  EXPECT_TRUE(GeneralSignature().is_finite());
}
