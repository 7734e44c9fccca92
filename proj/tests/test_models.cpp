#include <gtest/gtest.h>

#include <random>

#include "malcev/models.hpp"
#include "malcev/normalize.hpp"
#include "malcev/presentation.hpp"
#include "support.hpp"

using namespace malcev;

namespace {
const Signature kSig{1, 2};
Term t(const char* s) { return parse_term(s, kSig); }

AffineModel scalar_model(std::int64_t q, std::int64_t a1, std::int64_t a2, std::int64_t c) {
  Matrix m1 = Matrix::zero(1), m2 = Matrix::zero(1);
  m1.at(0, 0) = a1;
  m2.at(0, 0) = a2;
  return AffineModel(q, 1, {m1, m2}, {Vec{c}});
}
}  // namespace

TEST(AffineModel, Validation) {
  EXPECT_THROW(AffineModel(1, 1, {}, {}), Error);
  EXPECT_THROW(AffineModel(3, 0, {}, {}), Error);
  EXPECT_THROW(AffineModel(3, 1, {Matrix::zero(2)}, {}), Error);
  EXPECT_THROW(AffineModel(3, 1, {}, {Vec{0}}), SignatureError);
  EXPECT_THROW(AffineModel(3, 2, {Matrix::zero(2)}, {Vec{0}}), Error);
}

TEST(Eval, Examples) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    AffineModel m = random_model(kSig, 5, 2, rng);
    Assignment a = test::random_assignment(rng, m, 1);
    EXPECT_EQ(eval(m, t("(m x1 z z)"), a), a.vars[1]);
    EXPECT_EQ(eval(m, t("(r 1 x1 x1)"), a), a.vars[1]);
    a.z.assign(2, 0);
    EXPECT_EQ(eval(m, t("(u 1 z)"), a), m.u_shifts()[0]);
  }
}

TEST(Eval, Errors) {
  AffineModel m = scalar_model(5, 1, 2, 3);
  Assignment a;
  a.z = {0};
  EXPECT_THROW(eval(m, t("x1"), a), Error);
  a.vars[1] = {0, 0};
  EXPECT_THROW(eval(m, t("x1"), a), Error);
  a.vars[1] = {0};
  EXPECT_THROW(eval(m, Term::r(3, Term::var(1), Term::z()), a), SignatureError);
}

TEST(AffineMap, MatchesPointEvaluation) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    Term term = test::random_term(rng, kSig, 2, 6);
    AffineModel m = random_model(kSig, 3, 2, rng);
    AffineMap f = affine_eval(m, term);
    Assignment a = test::random_assignment(rng, m, 2);
    Vec expect = f.c;
    for (const auto& [j, mat] : f.lin) {
      Vec in = j == 0 ? a.z : a.vars[j];
      Vec out = m.mul(mat, in);
      for (std::size_t k = 0; k < expect.size(); ++k) expect[k] = m.reduce(expect[k] + out[k]);
    }
    EXPECT_EQ(eval(m, term, a), expect);
  }
}

TEST(Satisfies, Examples) {
  std::mt19937_64 rng(3);
  Identity medial{t("(m (m x1 x2 x3) (m x4 x5 x6) (m x7 x8 x9))"),
                  t("(m (m x1 x4 x7) (m x2 x5 x8) (m x3 x6 x9))")};
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(satisfies(random_model(kSig, 3, 2, rng), medial, true));
  Identity kill{t("(r 1 x1 z)"), Term::z()};
  EXPECT_FALSE(satisfies(scalar_model(5, 2, 0, 0), kill, true));
  EXPECT_TRUE(satisfies(scalar_model(5, 0, 3, 1), kill, true));
  EXPECT_FALSE(satisfies(scalar_model(5, 2, 0, 0), kill, false, 64, 1));
}

TEST(Satisfies, ExhaustiveAgreesWithExact) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    AffineModel m = random_model(kSig, 2, 2, rng);
    Identity id{test::random_term(rng, kSig, 2, 4), test::random_term(rng, kSig, 2, 4)};
    EXPECT_EQ(satisfies(m, id, true), holds_exactly(m, id));
  }
}

TEST(FindSeparatingModel, Examples) {
  VarietyPresentation empty{kSig, {}};
  auto sep = find_separating_model(t("(r 1 x1 z)"), t("(r 2 x1 z)"), empty, {});
  ASSERT_TRUE(sep.has_value());
  EXPECT_NE(sep->model.r_mats()[0], sep->model.r_mats()[1]);
  EXPECT_NE(eval(sep->model, t("(r 1 x1 z)"), sep->assignment),
            eval(sep->model, t("(r 2 x1 z)"), sep->assignment));
  EXPECT_FALSE(find_separating_model(t("(r 1 x1 z)"), t("(r 1 x1 z)"), empty, {}).has_value());
  EXPECT_FALSE(find_separating_model(t("x1"), t("(m x1 z z)"), empty,
                                     {5, 3, 40, 0}).has_value());
}

TEST(FindSeparatingModel, RespectsBasis) {
  VarietyPresentation vp{kSig, {{t("(r 1 x1 z)"), Term::z()}}};
  auto sep = find_separating_model(t("(r 2 x1 z)"), Term::z(), vp, {});
  ASSERT_TRUE(sep.has_value());
  EXPECT_TRUE(holds_exactly(sep->model, vp.ids[0]));
  EXPECT_FALSE(find_separating_model(t("(r 1 (r 2 x1 z) z)"), Term::z(), vp, {}).has_value());
}

TEST(ModelStream, Deterministic) {
  ModelStream a(kSig, {3, 2, 5, 42});
  ModelStream b(kSig, {3, 2, 5, 42});
  std::size_t count = 0;
  while (auto m = a.next()) {
    auto n = b.next();
    ASSERT_TRUE(n.has_value());
    EXPECT_EQ(*m, *n);
    ++count;
  }
  EXPECT_EQ(count, 2u * 2u * 5u);
  EXPECT_FALSE(b.next().has_value());
  EXPECT_EQ(ModelStream::candidate(kSig, 3, 2, 1, 42), ModelStream::candidate(kSig, 3, 2, 1, 42));
}

TEST(MalcevUniqueness, Examples) {
  std::mt19937_64 rng(5);
  AffineModel m = random_model(kSig, 5, 2, rng);
  EXPECT_TRUE(check_malcev_uniqueness(m, t("(m x1 x2 x3)")));
  EXPECT_TRUE(check_malcev_uniqueness(m, t("(m (m x1 x2 z) (m z z z) (m z z x3))")));
  EXPECT_TRUE(check_malcev_uniqueness(m, t("(m x3 x2 x1)")));
  EXPECT_FALSE(check_malcev_uniqueness(m, t("(m x1 x3 x2)")));
  EXPECT_TRUE(is_malcev_term(m, t("(m x3 x2 x1)")));
  EXPECT_FALSE(is_malcev_term(m, t("(m x1 x1 x3)")));
}

TEST(Models, AmbientAxiomsHoldInEveryTinyModel) {
  for (const Signature sig : {Signature{0, 1}, Signature{1, 1}}) {
    for (std::int64_t q : {2, 3}) {
      for (const auto& m : all_models(sig, q, 1))
        for (const auto& id : ambient_axioms(sig)) EXPECT_TRUE(satisfies(m, id, true));
    }
  }
  EXPECT_EQ(count_models(Signature{1, 1}, 2, 2, 1000), 64u);
  EXPECT_EQ(count_models(Signature{1, 2}, 5, 3, 1000), 1000u);
}

TEST(Models, SeparatesDistinctShortWords) {
  // Words of length <= 4 over r1, r2 give distinct normal forms r_w x1; each
  // pair must be separated by a model with q = 5, d <= 5.
  const Signature sig{0, 2};
  std::vector<Word> words{{}};
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].size() < 4)
      for (int g : {1, 2}) {
        Word w = words[i];
        w.push_back(g);
        words.push_back(w);
      }
  std::vector<Term> terms;
  for (const auto& w : words) {
    NormalForm nf(0);
    nf.coeffs.emplace(1, NCPoly::monomial(w));
    terms.push_back(denormalize(nf, sig));
  }
  std::vector<AffineModel> models;
  ModelStream stream(sig, {5, 5, 12, 0});
  while (auto m = stream.next())
    if (m->q() == 5) models.push_back(*m);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      bool separated = false;
      for (const auto& m : models)
        if (separating_assignment(m, terms[i], terms[j])) {
          separated = true;
          break;
        }
      EXPECT_TRUE(separated) << print_term(terms[i]) << " vs " << print_term(terms[j]);
    }
}
