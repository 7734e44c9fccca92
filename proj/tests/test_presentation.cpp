#include <gtest/gtest.h>

#include <random>

#include "malcev/membership.hpp"
#include "malcev/models.hpp"
#include "malcev/presentation.hpp"
#include "support.hpp"

using namespace malcev;

namespace {
const Signature kSig{1, 2};
Term t(const char* s) { return parse_term(s, kSig); }
NCPoly P(const char* s) { return parse_poly(s); }
ModuleVec V(const char* s) { return parse_module_vec(s, kSig.ell); }

bool all_in(const CongruenceData& a, const CongruenceData& b, int ell, int bound) {
  for (const auto& p : a.ideal_gens)
    if (ideal_member(p, b.ideal_gens, std::max(bound, p.degree())).verdict != Verdict::Yes)
      return false;
  for (const auto& v : a.submodule_gens) {
    ModuleVec w = v;
    if (w.ell() != ell) return false;
    if (submodule_member(w, b.submodule_gens, b.ideal_gens, std::max(bound, w.degree()))
            .verdict != Verdict::Yes)
      return false;
  }
  return true;
}
}  // namespace

TEST(SliceIdentity, Examples) {
  auto s = slice_identity({t("(m x1 z x2)"), t("(m x2 z x1)")});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].lhs, t("(m z z z)"));
  EXPECT_EQ(s[1].lhs, t("(m x1 z z)"));
  EXPECT_EQ(s[1].rhs, t("(m z z x1)"));
  EXPECT_EQ(s[2].lhs, t("(m z z x1)"));
  EXPECT_EQ(s[2].rhs, t("(m x1 z z)"));
  EXPECT_EQ(slice_identity({t("(u 1 z)"), Term::z()}).size(), 1u);
  EXPECT_EQ(slice_identity({t("(r 1 x1 x2)"), t("x1")}).size(), 3u);
}

TEST(SliceIdentity, FaithfulOnSmallModels) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Identity id{test::random_term(rng, kSig, 2, 3), test::random_term(rng, kSig, 2, 3)};
    AffineModel m = random_model(kSig, 2, 1, rng);
    bool slices = true;
    for (const auto& s : slice_identity(id)) slices = slices && satisfies(m, s, true);
    EXPECT_EQ(satisfies(m, id, true), slices);
  }
}

TEST(UnaryDefect, Examples) {
  EXPECT_EQ(unary_defect(V("u1"), kSig), P("r1 - 1"));
  EXPECT_EQ(unary_defect(V("r2*u1"), kSig), P("r2*r1 - r2"));
  EXPECT_TRUE(unary_defect(ModuleVec(1), kSig).is_zero());
}

TEST(ExtractCongruence, Examples) {
  VarietyPresentation vp{kSig, {{t("(u 1 x1)"), t("x1")}}};
  CongruenceData cd = extract_congruence(vp);
  ASSERT_EQ(cd.ideal_gens.size(), 1u);
  EXPECT_EQ(cd.ideal_gens[0], P("r1 - 1"));
  ASSERT_EQ(cd.submodule_gens.size(), 1u);
  EXPECT_EQ(cd.submodule_gens[0], V("u1"));

  CongruenceData kill = extract_congruence({kSig, {{t("(r 1 x1 z)"), Term::z()}}});
  ASSERT_EQ(kill.ideal_gens.size(), 1u);
  EXPECT_EQ(kill.ideal_gens[0], P("r1"));
  EXPECT_TRUE(kill.submodule_gens.empty());

  EXPECT_EQ(extract_congruence({kSig, {}}), CongruenceData{});
  EXPECT_EQ(extract_congruence({kSig, {{t("x1"), t("(m x1 z z)")}}}), CongruenceData{});
}

TEST(ExtractCongruence, SoundOnKillingModels) {
  // Every identity holds in each model of the extracted congruence.
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    VarietyPresentation vp{kSig, {{test::random_term(rng, kSig, 2, 3),
                                   test::random_term(rng, kSig, 2, 3)}}};
    CongruenceData cd = extract_congruence(vp);
    VarietyPresentation back = synthesize_basis(
        RingPresentation{kSig.n, cd.ideal_gens},
        ModulePresentation{kSig.ell, cd.submodule_gens, {kSig.n, cd.ideal_gens}});
    ModelStream stream(kSig, {3, 2, 8, static_cast<std::uint64_t>(i)});
    while (auto m = stream.next()) {
      bool model = true;
      for (const auto& id : back.ids) model = model && holds_exactly(*m, id);
      if (!model) continue;
      ++checked;
      EXPECT_TRUE(holds_exactly(*m, vp.ids[0])) << print_term(vp.ids[0].lhs);
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Present, Examples) {
  RingPresentation rp = present_ring({Signature{0, 0}, {}});
  EXPECT_EQ(rp.n, 0);
  EXPECT_TRUE(rp.relations.empty());
  ModulePresentation mp = present_module({kSig, {}});
  EXPECT_EQ(mp.ell, 1);
  EXPECT_TRUE(mp.relations.empty());
  EXPECT_EQ(mp.over, present_ring({kSig, {}}));
}

TEST(SynthesizeBasis, Examples) {
  RingPresentation rp{2, {P("r1")}};
  ModulePresentation mp{1, {}, rp};
  VarietyPresentation vp = synthesize_basis(rp, mp);
  ASSERT_EQ(vp.ids.size(), 1u);
  EXPECT_EQ(vp.ids[0].lhs, t("(r 1 x1 z)"));
  EXPECT_EQ(vp.ids[0].rhs, Term::z());

  VarietyPresentation vm = synthesize_basis(RingPresentation{2, {}},
                                            ModulePresentation{1, {V("u1")}, {2, {}}});
  ASSERT_EQ(vm.ids.size(), 1u);
  EXPECT_EQ(vm.ids[0].lhs, t("(u 1 z)"));

  EXPECT_THROW(synthesize_basis(rp, ModulePresentation{1, {}, {2, {P("r2")}}}), Error);
  EXPECT_THROW(synthesize_basis(RingPresentation{1, {}},
                                ModulePresentation{2, {}, {1, {}}}),
               SignatureError);
}

TEST(SynthesizeBasis, RoundTripClosure) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    RingPresentation rp{2, {}};
    for (int j = 0; j < 2; ++j) rp.relations.push_back(test::random_poly(rng, 2, 2, 2));
    ModulePresentation mp{1, {test::random_vec(rng, 1, 2, 2, 2)}, rp};
    CongruenceData want = congruence_of(rp, mp);
    CongruenceData got = extract_congruence(synthesize_basis(rp, mp));
    EXPECT_TRUE(all_in(want, got, 1, 6));
    EXPECT_TRUE(all_in(got, want, 1, 6));
  }
}

TEST(CheckFic, Examples) {
  FicReport empty = check_fic_conditions({}, kSig, 4);
  EXPECT_TRUE(empty.all_yes());
  EXPECT_TRUE(empty.unary_shift.empty());

  FicReport bare = check_fic_conditions({{}, {V("u1")}}, kSig, 6);
  ASSERT_EQ(bare.unary_shift.size(), 1u);
  EXPECT_NE(bare.unary_shift[0].result.verdict, Verdict::Yes);
  EXPECT_FALSE(bare.all_yes());

  // The defect of u1 is r1 - 1, which has a constant term outside (r1).
  FicReport r1 = check_fic_conditions({{P("r1")}, {V("u1")}}, kSig, 4);
  EXPECT_EQ(r1.unary_shift[0].defect, P("r1 - 1"));
  EXPECT_FALSE(r1.all_yes());

  FicReport closed = check_fic_conditions({{P("r1 - 1")}, {V("u1")}}, kSig, 2);
  EXPECT_TRUE(closed.all_yes());
}

TEST(CheckFic, ExtractedDataIsClosed) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 30; ++i) {
    VarietyPresentation vp{kSig, {{test::random_term(rng, kSig, 2, 3),
                                   test::random_term(rng, kSig, 2, 3)}}};
    CongruenceData cd = extract_congruence(vp);
    EXPECT_TRUE(check_fic_conditions(cd, kSig, default_fic_bound(cd, kSig)).all_yes());
  }
}

TEST(AmbientAxioms, HoldInRandomModels) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    AffineModel m = random_model(kSig, 5, 2, rng);
    for (const auto& id : ambient_axioms(kSig)) EXPECT_TRUE(holds_exactly(m, id));
  }
}
