#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "twistlab/coh.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/fixtures.hpp"

using namespace twistlab;

namespace {

using Inv = std::vector<std::int64_t>;

// Order of the class of z, found with coboundary witnesses only.
int class_order_by_witness(const Cochain& z, int bound) {
  for (int k = 1; k <= bound; ++k)
    if (find_coboundary_witness(z * k)) return k;
  return -1;
}

Cochain random_coboundary(const GroupPtr& g, int arity, std::mt19937_64& rng) {
  return coboundary(random_cochain(g, arity - 1, rng));
}

}  // namespace

TEST(CochainTest, StorageAndIdentity) {
  auto q8 = generalized_quaternion(8);
  Cochain c(q8, 2);
  EXPECT_EQ(c.stored_values().size(), 49u);
  c.set(std::array<Element, 2>{3, 5}, UnitScalar(1, 4));
  EXPECT_EQ(c(3, 5), UnitScalar(1, 4));
  EXPECT_EQ(c(0, 5), UnitScalar());
  EXPECT_THROW(c.set(std::array<Element, 2>{0, 5}, UnitScalar(1, 2)), InvalidParameter);
  EXPECT_EQ(c.denominator(), 4);
  EXPECT_EQ((c * 4).is_zero(), true);
  EXPECT_THROW(c + Cochain(q8, 3), InvalidParameter);
  EXPECT_THROW(Cochain(q8, 5), InvalidParameter);
}

TEST(CochainTest, CoboundarySquaresToZero) {
  std::mt19937_64 rng(1);
  for (const auto& g : {cyclic(5), generalized_quaternion(8), sl2_3()}) {
    for (int n = 0; n <= 2; ++n) {
      auto c = random_cochain(g, n, rng);
      auto dc = coboundary(c);
      EXPECT_TRUE(is_cocycle(dc));
      if (g->order() <= 8) EXPECT_TRUE(coboundary(dc).is_zero());
    }
  }
}

TEST(CochainTest, MatrixAgreesWithDirectCoboundary) {
  std::mt19937_64 rng(2);
  for (const auto& g : {cyclic(4), generalized_quaternion(8), direct_product(cyclic(2), cyclic(3))}) {
    for (int n = 0; n <= 2; ++n) {
      auto c = random_cochain(g, n, rng);
      auto v = QZVector::from_units(c.stored_values());
      auto img = coboundary_matrix(g, n).apply_mod(v.numerators, v.denominator);
      auto direct = coboundary(c);
      ASSERT_EQ(img.size(), direct.stored_values().size());
      for (std::size_t i = 0; i < img.size(); ++i) EXPECT_EQ(UnitScalar(img[i], v.denominator), direct.stored_values()[i]);
    }
  }
}

TEST(CohomologyTest, KnownGroups) {
  EXPECT_EQ(cohomology(cyclic(6), 1).invariants(), (Inv{6}));
  EXPECT_EQ(cohomology(cyclic(6), 2).invariants(), Inv{});
  EXPECT_EQ(cohomology(cyclic(6), 3).invariants(), (Inv{6}));
  EXPECT_EQ(cohomology(cyclic(1), 3).invariants(), Inv{});
  auto v4 = direct_product(cyclic(2), cyclic(2));
  EXPECT_EQ(cohomology(v4, 1).invariants(), (Inv{2, 2}));
  EXPECT_EQ(cohomology(v4, 2).invariants(), (Inv{2}));
  EXPECT_EQ(cohomology(v4, 3).invariants(), (Inv{2, 2, 2}));
  EXPECT_EQ(cohomology(generalized_quaternion(8), 2).invariants(), Inv{});
  EXPECT_EQ(cohomology(generalized_quaternion(8), 3).invariants(), (Inv{8}));
  EXPECT_EQ(cohomology(generalized_quaternion(12), 3).invariants(), (Inv{12}));
  EXPECT_EQ(cohomology(sl2_3(), 1).invariants(), (Inv{3}));
  EXPECT_EQ(cohomology(sl2_3(), 2).invariants(), Inv{});
  EXPECT_THROW(cohomology(sl2_3(), 3), ResourceLimit);
  EXPECT_THROW(cohomology(cyclic(3), 0), InvalidParameter);
}

TEST(CohomologyTest, H1MatchesCharacterCount) {
  for (const auto& g : {cyclic(12), generalized_quaternion(16), sl2_3(), direct_product(cyclic(2), cyclic(4))})
    EXPECT_EQ(cohomology(g, 1).order(), character_group(g).size()) << g->name();
}

TEST(CohomologyTest, Q16DegreeThree) {
  auto g = generalized_quaternion(16);
  const auto t0 = std::chrono::steady_clock::now();
  auto h = cohomology(g, 3);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(h.invariants(), (Inv{16}));
  EXPECT_LT(secs, 120.0);
  ASSERT_EQ(h.generators().size(), 1u);
  EXPECT_TRUE(is_cocycle(h.generators()[0]));
  EXPECT_EQ(h.decompose(h.generators()[0]), (Inv{1}));
  // the generator restricts to the generator on the center
  EXPECT_TRUE(two_generator_test(g, h.generators()[0]));
  EXPECT_FALSE(two_generator_test(g, h.generators()[0] * 2));
}

TEST(CohomologyTest, GeneratorsHaveStatedOrder) {
  for (const auto& g : {cyclic(4), generalized_quaternion(8), direct_product(cyclic(2), cyclic(2))}) {
    auto h = cohomology(g, 3);
    for (std::size_t i = 0; i < h.generators().size(); ++i) {
      EXPECT_TRUE(is_cocycle(h.generators()[i]));
      EXPECT_EQ(class_order_by_witness(h.generators()[i], 64), h.invariants()[i]);
    }
  }
}

TEST(CohomologyTest, DecomposeIsLinearAndKillsCoboundaries) {
  std::mt19937_64 rng(3);
  auto g = generalized_quaternion(8);
  auto h = cohomology(g, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::int64_t e = static_cast<std::int64_t>(rng() % 8);
    auto z = h.element({e}) + random_coboundary(g, 3, rng);
    EXPECT_EQ(h.decompose(z), (Inv{e}));
  }
  auto v4 = direct_product(cyclic(2), cyclic(2));
  auto hv = cohomology(v4, 3);
  for (int trial = 0; trial < 10; ++trial) {
    Inv a{static_cast<std::int64_t>(rng() % 2), static_cast<std::int64_t>(rng() % 2), static_cast<std::int64_t>(rng() % 2)};
    Inv b{static_cast<std::int64_t>(rng() % 2), static_cast<std::int64_t>(rng() % 2), static_cast<std::int64_t>(rng() % 2)};
    Inv s(3);
    for (int i = 0; i < 3; ++i) s[i] = (a[i] + b[i]) % 2;
    EXPECT_EQ(hv.decompose(hv.element(a) + hv.element(b) + random_coboundary(v4, 3, rng)), s);
  }
  EXPECT_THROW(h.decompose(random_cochain(g, 3, rng)), NotACocycle);
}

TEST(CohomologyTest, Witnesses) {
  std::mt19937_64 rng(4);
  for (const auto& g : {cyclic(6), generalized_quaternion(8), sl2_3()}) {
    for (int n = 2; n <= 3; ++n) {
      auto z = random_coboundary(g, n, rng);
      auto w = coboundary_witness(z);
      EXPECT_EQ(coboundary(w), z);
    }
  }
  auto z1 = Cochain(cyclic(3), 1);
  EXPECT_TRUE(find_coboundary_witness(z1).has_value());
  auto chi = Cochain::from_function(cyclic(3), 1, [](std::span<const Element> t) { return UnitScalar(t[0], 3); });
  EXPECT_FALSE(find_coboundary_witness(chi).has_value());
  EXPECT_THROW(coboundary_witness(cyclic_cocycle(4, 1)), NotCoboundary);
}

TEST(CohomologyTest, CyclicCocycles) {
  for (int n : {2, 3, 5, 8}) {
    auto h = cohomology(cyclic(n), 3);
    for (int s = 0; s < n; ++s) {
      auto w = cyclic_cocycle(n, s);
      ASSERT_EQ(w.group()->order(), n);
      EXPECT_TRUE(is_cocycle(w));
    }
    auto g = cyclic(n);
    auto w1 = cyclic_cocycle(g, 1);
    EXPECT_EQ(class_order_by_witness(w1, 2 * n), n);
    auto h3 = cohomology(g, 3);
    const auto e1 = h3.decompose(w1)[0];
    EXPECT_EQ(std::gcd(e1, static_cast<std::int64_t>(n)), 1);
    for (int s = 0; s < n; ++s) EXPECT_EQ(h3.decompose(cyclic_cocycle(g, s))[0], (e1 * s) % n);
  }
  auto z2 = cyclic(2);
  auto z4 = cyclic(4);
  EXPECT_TRUE(two_generator_test(z2, cyclic_cocycle(z2, 1)));
  EXPECT_FALSE(two_generator_test(z4, cyclic_cocycle(z4, 2)));
  EXPECT_TRUE(two_generator_test(z4, cyclic_cocycle(z4, 1)));
  EXPECT_THROW(two_generator_test(z4, cyclic_cocycle(4, 1)), InvalidParameter);
  auto v4 = direct_product(cyclic(2), cyclic(2));
  EXPECT_THROW(two_generator_test(v4, Cochain(v4, 3)), PreconditionError);
  EXPECT_THROW(cyclic_cocycle(generalized_quaternion(4), 1), InvalidParameter);
}

TEST(CohomologyTest, RestrictionAndTransfer) {
  std::mt19937_64 rng(5);
  auto g = generalized_quaternion(8);
  auto hgen = cohomology(g, 3);
  auto sub = Subgroup::generated_by(g, {1});  // <i>, cyclic of order 4
  auto hs = cohomology(sub.as_group(), 3);
  // res: the generator of H^3(Q8) restricts to a generator of H^3(Z4)
  auto r = restrict(hgen.generators()[0], sub);
  EXPECT_TRUE(is_cocycle(r));
  EXPECT_EQ(std::gcd(hs.decompose(r)[0], std::int64_t{4}), 1);
  // cor o res is multiplication by the index
  for (int e = 0; e < 8; ++e) {
    auto z = hgen.element({e}) + random_coboundary(g, 3, rng);
    auto back = transfer(restrict(z, sub), sub);
    EXPECT_TRUE(is_cocycle(back));
    EXPECT_EQ(hgen.decompose(back), (Inv{(2 * e) % 8}));
  }
  // degree 1: transfer of a character is a character
  auto s = sl2_3();
  auto q8 = commutator_subgroup(s);
  auto chi = Cochain::from_function(q8.as_group(), 1, [&](std::span<const Element>) { return UnitScalar(); });
  EXPECT_TRUE(transfer(chi, q8).is_zero());
  auto z2 = cohomology(q8.as_group(), 2);
  EXPECT_EQ(z2.invariants(), Inv{});
  auto y = random_coboundary(q8.as_group(), 3, rng);
  EXPECT_TRUE(find_coboundary_witness(transfer(y, q8)).has_value());
  EXPECT_THROW(transfer(y, Subgroup::whole(s)), InvalidParameter);
}

TEST(CohomologyTest, Inflation) {
  auto g = cyclic(8);
  auto q = cyclic(4);
  std::vector<Element> proj(8);
  for (int i = 0; i < 8; ++i) proj[i] = i % 4;
  auto w = inflate(cyclic_cocycle(q, 1), g, proj);
  EXPECT_TRUE(is_cocycle(w));
  auto h = cohomology(g, 3);
  // inflation Z4 -> Z8 lands in the subgroup of index... order divides 4
  EXPECT_EQ((h.decompose(w)[0] * 4) % 8, 0);
  proj[1] = 2;
  EXPECT_THROW(inflate(cyclic_cocycle(q, 1), g, proj), NotHomomorphism);
}

TEST(CohomologyTest, JsonRoundTrip) {
  auto g = generalized_quaternion(8);
  auto gen = cohomology(g, 3).generators()[0];
  auto j = cochain_to_json(gen);
  EXPECT_EQ(j["numerators"].size(), 512u);
  EXPECT_EQ(j["arity"], 3);
  EXPECT_EQ(cochain_from_json(j, g), gen);
  j["numerators"][1] = 1;  // (0, 0, 1) contains the identity
  EXPECT_THROW(cochain_from_json(j, g), InvalidParameter);
  EXPECT_THROW(cochain_from_json(nlohmann::json::object(), g), ParseError);
}

TEST(ClassOrderTest, MatchesCohomology) {
  auto z8 = cyclic(8);
  EXPECT_EQ(class_order(cyclic_cocycle(z8, 1)), 8);
  EXPECT_EQ(class_order(cyclic_cocycle(z8, 6)), 4);
  EXPECT_EQ(class_order(Cochain(z8, 3)), 1);
  const auto& cls = sl2_3_classes();
  EXPECT_EQ(class_order(cls.cocycle(1, 1)), 24);
  EXPECT_EQ(class_order(cls.cocycle(2, 0)), 4);
  EXPECT_EQ(class_order(cls.cocycle(0, 2)), 3);
  auto z2 = cyclic(2);
  auto bad = Cochain(z2, 3);
  bad.set(std::array<Element, 3>{1, 1, 1}, UnitScalar(1, 3));
  EXPECT_THROW(class_order(bad), NotACocycle);
}
