#include <gtest/gtest.h>

#include <random>

#include "malcev/membership.hpp"
#include "support.hpp"

using namespace malcev;

namespace {
NCPoly P(const char* s) { return parse_poly(s); }
ModuleVec V(const char* s, int ell) { return parse_module_vec(s, ell); }
}  // namespace

TEST(IdealMember, Examples) {
  std::vector<NCPoly> g{P("r1*r2*r1")};
  MembershipResult a = ideal_member(P("r1*r2*r1"), g, 3);
  ASSERT_EQ(a.verdict, Verdict::Yes);
  ASSERT_EQ(a.certificate.size(), 1u);
  EXPECT_TRUE(a.certificate[0].left.empty());
  EXPECT_TRUE(a.certificate[0].right.empty());
  EXPECT_EQ(a.certificate[0].multiplier, 1);

  EXPECT_EQ(ideal_member(P("r1*r2^2*r1"), g, 8).verdict, Verdict::NoHomogeneous);

  std::vector<NCPoly> h{P("r1")};
  MembershipResult c = ideal_member(P("2*r1"), h, 1);
  ASSERT_EQ(c.verdict, Verdict::Yes);
  EXPECT_EQ(c.certificate[0].multiplier, 2);
}

TEST(IdealMember, IntegralityIsRequired) {
  // 1 = 2c has no integer solution; all data homogeneous, so the refutation
  // is exact.
  std::vector<NCPoly> g{P("2*r1")};
  EXPECT_EQ(ideal_member(P("r1"), g, 4).verdict, Verdict::NoHomogeneous);
  // Same question in a non-homogeneous setting stays conservative.
  std::vector<NCPoly> g2{P("2*r1 + 2")};
  EXPECT_EQ(ideal_member(P("r1 + 1"), g2, 4).verdict, Verdict::NotAtBound);
}

TEST(IdealMember, BoundBelowTargetDegree) {
  std::vector<NCPoly> g{P("r1")};
  EXPECT_THROW(ideal_member(P("r1*r2"), g, 1), Error);
}

TEST(IdealMember, NonHomogeneousNeedsDegree) {
  // r1^2 - 1 = (r1 - 1) r1 + (r1 - 1)
  std::vector<NCPoly> g{P("r1 - 1")};
  MembershipResult res = ideal_member(P("r1^2 - 1"), g, 2);
  ASSERT_EQ(res.verdict, Verdict::Yes);
  EXPECT_EQ(expand_certificate(res.certificate, g), P("r1^2 - 1"));
  EXPECT_EQ(ideal_member(P("r2"), g, 4).verdict, Verdict::NotAtBound);
}

TEST(IdealMember, RandomCombinationsAreFoundWithSoundCertificates) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    std::vector<NCPoly> gens;
    int ng = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < ng; ++k) {
      NCPoly g = test::random_poly(rng, 2, 2, 2);
      if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    NCPoly target;
    for (int k = 0; k < 3; ++k) {
      NCPoly left = test::random_poly(rng, 2, 1, 2);
      NCPoly right = test::random_poly(rng, 2, 1, 2);
      target += left * gens[rng() % gens.size()] * right;
    }
    if (target.is_zero()) continue;
    int maxdeg = 0;
    for (const auto& g : gens) maxdeg = std::max(maxdeg, g.degree());
    int bound = std::max(target.degree(), maxdeg + 2);
    MembershipResult res = ideal_member(target, gens, bound);
    ASSERT_EQ(res.verdict, Verdict::Yes) << print_poly(target);
    EXPECT_EQ(expand_certificate(res.certificate, gens), target);
  }
}

TEST(IdealMember, Monotone) {
  std::vector<NCPoly> g{P("r1*r2 - r2*r1"), P("r1^2 - 1")};
  NCPoly target = P("r1*r2*r1 - r2");
  // r1 r2 r1 - r2 = (r1 r2 - r2 r1) r1 + r2 (r1^2 - 1)
  MembershipResult first;
  int found = -1;
  for (int b = 3; b <= 6; ++b) {
    MembershipResult res = ideal_member(target, g, b);
    if (found >= 0) EXPECT_EQ(res.verdict, Verdict::Yes) << b;
    if (res.verdict == Verdict::Yes && found < 0) found = b;
  }
  EXPECT_EQ(found, 3);
}

TEST(IdealMember, HomogeneousCompleteness) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    std::vector<NCPoly> gens;
    for (int k = 0; k < 2; ++k) {
      Word w;
      int d = 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < d; ++j) w.push_back(1 + static_cast<int>(rng() % 2));
      gens.push_back(NCPoly::monomial(w, 1 + static_cast<long>(rng() % 3)));
    }
    Word tw;
    for (int j = 0; j < 3; ++j) tw.push_back(1 + static_cast<int>(rng() % 2));
    NCPoly target = NCPoly::monomial(tw, 1 + static_cast<long>(rng() % 4));
    MembershipResult res = ideal_member(target, gens, 3);
    EXPECT_NE(res.verdict, Verdict::NotAtBound);
    if (res.verdict == Verdict::Yes) EXPECT_EQ(expand_certificate(res.certificate, gens), target);
  }
}

TEST(IdealMember, ZeroTargetAndEmptyGenerators) {
  std::vector<NCPoly> none;
  EXPECT_EQ(ideal_member(NCPoly(), none, 0).verdict, Verdict::Yes);
  EXPECT_EQ(ideal_member(P("r1"), none, 3).verdict, Verdict::NoHomogeneous);
}

TEST(SubmoduleMember, Examples) {
  std::vector<NCPoly> none;
  std::vector<ModuleVec> u1{V("u1", 2)};
  EXPECT_EQ(submodule_member(V("u1", 2), u1, none, 2).verdict, Verdict::Yes);
  std::vector<NCPoly> i{P("r1")};
  std::vector<ModuleVec> empty;
  MembershipResult b = submodule_member(V("r1*u2", 2), empty, i, 3);
  ASSERT_EQ(b.verdict, Verdict::Yes);
  EXPECT_EQ(expand_certificate(b.certificate, empty, i, 2), V("r1*u2", 2));
  EXPECT_EQ(submodule_member(V("u2", 2), u1, none, 4).verdict, Verdict::NoHomogeneous);
}

TEST(SubmoduleMember, RandomCombinations) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    std::vector<ModuleVec> mods{test::random_vec(rng, 2, 2, 1, 2)};
    std::vector<NCPoly> ideal{test::random_poly(rng, 2, 1, 2)};
    if (mods[0].is_zero() || ideal[0].is_zero()) continue;
    ModuleVec target = test::random_poly(rng, 2, 1, 2) * mods[0];
    target += (test::random_poly(rng, 2, 1, 1) * ideal[0]) * ModuleVec::generator(2, 1 + static_cast<int>(rng() % 2));
    if (target.is_zero()) continue;
    int bound = std::max(target.degree(), 3);
    MembershipResult res = submodule_member(target, mods, ideal, bound);
    ASSERT_EQ(res.verdict, Verdict::Yes) << print_module_vec(target);
    EXPECT_EQ(expand_certificate(res.certificate, mods, ideal, 2), target);
  }
}

TEST(DefaultBound, TwiceMaxDegreePlusTwo) {
  std::vector<NCPoly> g{P("r1*r2")};
  EXPECT_EQ(default_bound(P("r1"), g), 6);
}
