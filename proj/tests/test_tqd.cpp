#include <gtest/gtest.h>

#include <map>
#include <random>

#include "twistlab/errors.hpp"
#include "twistlab/fixtures.hpp"
#include "twistlab/tqd.hpp"

using namespace twistlab;

namespace {

Subgroup involution_subgroup(const GroupPtr& g) {
  const auto info = center_and_involutions(g);
  return Subgroup(g, {0, info.involutions.at(0)});
}

std::multiset<BKind> outcomes(const TwistedContext& ctx, const Subgroup& a) {
  std::multiset<BKind> s;
  for (const auto& p : admissible_pairs(ctx, a)) s.insert(classify(p).kind);
  return s;
}

// The explicit pair on Z_2k for omega = eta^{m^2}: tau_{z^a}(z^b) = m^2 a b / 4k^2,
// nu(z^k)(z^a) = m^2 a / 2k.
AdmissiblePair explicit_cyclic_pair(const GroupPtr& g, int k, int m) {
  const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
  const std::int64_t kk4 = 4LL * k * k;
  Subgroup a(g, {0, k});
  AdmissiblePair p{a, {}, {}, "explicit"};
  for (Element x : a.elements()) {
    p.tau.push_back(Cochain::from_function(g, 1, [&](std::span<const Element> t) { return UnitScalar(m2 * x * t[0], kk4); }));
    LinearCharacter chi{g, {}};
    for (int y = 0; y < 2 * k; ++y) chi.values.push_back(x == 0 ? UnitScalar() : UnitScalar(m2 * y, 2 * k));
    p.nu.push_back(chi);
  }
  return p;
}

GroupPtr z2_cubed() {
  static const GroupPtr g = direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2));
  return g;
}

// x1 y2 z3 / 2 with x = 4 x1 + 2 x2 + x3
Cochain type_three(const GroupPtr& g) {
  return Cochain::from_function(g, 3, [](std::span<const Element> t) {
    return UnitScalar(((t[0] >> 2) & 1) * ((t[1] >> 1) & 1) * (t[2] & 1), 2);
  });
}

std::int64_t inverse_mod(std::int64_t m, std::int64_t n) {
  for (std::int64_t x = 1; x < n; ++x)
    if ((m * x) % n == 1) return x;
  return -1;
}

}  // namespace

TEST(TwistedContextTest, TrivialAndCyclicValues) {
  auto q8 = named_group("q8");
  TwistedContext ctx(q8, Cochain(q8, 3));
  for (int g = 0; g < 8; ++g)
    for (int x = 0; x < 8; ++x)
      for (int y = 0; y < 8; ++y) {
        EXPECT_TRUE(ctx.theta(g, x, y).is_zero());
        EXPECT_TRUE(ctx.gamma(g, x, y).is_zero());
      }
  auto z2 = named_group("z2");
  TwistedContext c2(z2, cyclic_cocycle(z2, 1));
  EXPECT_EQ(c2.theta(1, 1, 1), UnitScalar(1, 2));
  auto bad = Cochain(z2, 3);
  bad.set(std::array<Element, 3>{1, 1, 1}, UnitScalar(1, 3));
  EXPECT_THROW(TwistedContext(z2, bad), NotACocycle);
}

TEST(TwistedContextTest, CocycleIdentities) {
  std::mt19937_64 rng(11);
  for (const auto& f : fixture_groups()) {
    SCOPED_TRACE(f.name);
    const auto& g = f.group;
    auto reps = h3_representatives(g);
    // a generator-like class and a random one keep this test fast; the
    // acceptance binary sweeps every class
    std::vector<Cochain> sample{reps.at(reps.size() > 1 ? 1 : 0), reps.at(rng() % reps.size())};
    for (const auto& omega : sample) {
      TwistedContext ctx(g, omega);
      std::uniform_int_distribution<int> el(0, g->order() - 1);
      for (int t = 0; t < 300; ++t) {
        const Element gg = el(rng), h = el(rng), x = el(rng), y = el(rng), z = el(rng);
        const Element gx = g->conj(gg, x);
        EXPECT_EQ(ctx.theta(gg, x, y) + ctx.theta(gg, g->mul(x, y), z),
                  ctx.theta(gx, y, z) + ctx.theta(gg, x, g->mul(y, z)));
        EXPECT_EQ(ctx.theta(gg, x, y) + ctx.theta(h, x, y) + ctx.gamma(x, gg, h) + ctx.gamma(y, gx, g->conj(h, x)),
                  ctx.theta(g->mul(gg, h), x, y) + ctx.gamma(g->mul(x, y), gg, h));
      }
      for (Element gg = 0; gg < g->order(); ++gg) {
        const auto c = centralizer(g, gg);
        for (Element x : c.elements())
          for (Element y : c.elements()) EXPECT_EQ(ctx.theta(gg, x, y), ctx.gamma(gg, x, y));
        EXPECT_TRUE(is_cocycle(ctx.theta_on_centralizer(gg, c)));
      }
    }
  }
}

TEST(TwistedContextTest, ZOmega) {
  auto q8 = named_group("q8");
  for (const auto& w : h3_representatives(q8)) EXPECT_EQ(z_omega(TwistedContext(q8, w)).order(), 2);
  for (const char* n : {"z4", "z6", "z8"}) {
    auto g = named_group(n);
    for (const auto& w : h3_representatives(g)) EXPECT_EQ(z_omega(TwistedContext(g, w)).order(), g->order());
  }
  auto v4 = named_group("v4");
  for (const auto& w : h3_representatives(v4)) EXPECT_EQ(z_omega(TwistedContext(v4, w)).order(), 4);
  auto e8 = z2_cubed();
  EXPECT_EQ(z_omega(TwistedContext(e8, type_three(e8))).order(), 1);
}

TEST(AdmissiblePairTest, ExplicitCyclicPair) {
  for (int k = 1; k <= 4; ++k)
    for (int m : {1, 3}) {
      SCOPED_TRACE(std::to_string(k) + "," + std::to_string(m));
      auto g = named_group("z" + std::to_string(2 * k));
      TwistedContext ctx(g, cyclic_cocycle(g, static_cast<std::int64_t>(m) * m));
      auto p = explicit_cyclic_pair(g, k, m);
      EXPECT_TRUE(is_admissible_pair(ctx, p));
      auto beta = beta_tau(ctx, p.a, p.tau);
      for (int x = 0; x < 2 * k; ++x) EXPECT_EQ(beta[1][1](x), UnitScalar(static_cast<std::int64_t>(m) * m * x, k));
      const auto c = classify(p);
      // q(z^k) = -m^2/4
      EXPECT_EQ(c.q_values[1], UnitScalar(-static_cast<std::int64_t>(m) * m, 4));
      EXPECT_EQ(c.kind, BKind::Modular);
    }
}

TEST(AdmissiblePairTest, Z2Untwisted) {
  auto z2 = named_group("z2");
  TwistedContext ctx(z2, Cochain(z2, 3));
  auto pairs = admissible_pairs(ctx, Subgroup::whole(z2));
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].nu[1](1), UnitScalar());
  EXPECT_EQ(pairs[1].nu[1](1), UnitScalar(1, 2));
  auto beta = beta_tau(ctx, pairs[0].a, pairs[0].tau);
  for (const auto& row : beta)
    for (const auto& chi : row) EXPECT_TRUE(chi.is_trivial());
  EXPECT_EQ(classify(pairs[0]).kind, BKind::TannakianCenter);
  EXPECT_EQ(classify(pairs[1]).kind, BKind::SuperModular);
  EXPECT_EQ(classify(pairs[0]).q_values[1], UnitScalar());
  EXPECT_EQ(classify(pairs[1]).q_values[1], UnitScalar(1, 2));
  for (const auto& p : pairs) EXPECT_TRUE(is_admissible_pair(ctx, p));
}

TEST(AdmissiblePairTest, Sl23CenterHasOnePair) {
  const auto& cls = sl2_3_classes();
  auto g = cls.group();
  auto center = center_and_involutions(g).center;
  for (int i : {0, 1, 3}) {
    TwistedContext ctx(g, cls.cocycle(i, i % 3));
    auto pairs = admissible_pairs(ctx, center);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_TRUE(is_admissible_pair(ctx, pairs[0]));
  }
}

TEST(AdmissiblePairTest, ErrorsAndPreconditions) {
  auto e8 = z2_cubed();
  TwistedContext t3(e8, type_three(e8));
  EXPECT_THROW(admissible_pairs(t3, Subgroup(e8, {0, 4})), NotInZOmega);
  auto q8 = named_group("q8");
  TwistedContext ctx(q8, Cochain(q8, 3));
  EXPECT_THROW(admissible_pairs(ctx, Subgroup::generated_by(q8, {1})), PreconditionError);
}

TEST(AdmissiblePairTest, PairsDifferByHomomorphisms) {
  for (const char* n : {"z4", "z6", "q8", "v4"}) {
    auto g = named_group(n);
    const auto center = center_and_involutions(g).center;
    for (const auto& w : h3_representatives(g)) {
      TwistedContext ctx(g, w);
      const auto z = z_omega(ctx);
      std::vector<AdmissiblePair> pairs;
      try {
        pairs = admissible_pairs(ctx, z);
      } catch (const ExtensionDoesNotSplit&) {
        continue;
      }
      const auto& el = z.elements();
      for (const auto& p : pairs) {
        EXPECT_TRUE(is_admissible_pair(ctx, p));
        // (tau'_a - nu'(a)) - (tau_a - nu(a)) is a homomorphism A -> G^
        std::vector<LinearCharacter> f;
        for (std::size_t i = 0; i < el.size(); ++i) {
          LinearCharacter chi{g, {}};
          for (Element x = 0; x < g->order(); ++x)
            chi.values.push_back((p.tau[i](x) - p.nu[i](x)) - (pairs[0].tau[i](x) - pairs[0].nu[i](x)));
          EXPECT_TRUE(chi.is_multiplicative());
          f.push_back(chi);
        }
        for (std::size_t i = 0; i < el.size(); ++i)
          for (std::size_t j = 0; j < el.size(); ++j)
            EXPECT_EQ(f[z.position(g->mul(el[i], el[j]))], f[i] + f[j]);
      }
    }
  }
}

TEST(ClassifyTest, MainTheoremSmall) {
  for (const char* n : {"z4", "z8", "q8"}) {
    SCOPED_TRACE(n);
    auto g = named_group(n);
    const auto a = involution_subgroup(g);
    const auto reps = h3_representatives(g);
    int modular = 0;
    for (const auto& w : reps) {
      TwistedContext ctx(g, w);
      const auto pairs = admissible_pairs(ctx, a);
      ASSERT_FALSE(pairs.empty());
      const bool gen = two_generator_test(g, w);
      for (const auto& p : pairs) EXPECT_EQ(classify(p).kind == BKind::Modular, gen);
      if (gen) ++modular;
    }
    EXPECT_EQ(2 * modular, static_cast<int>(reps.size()));
  }
}

TEST(ClassifyTest, SuperModularCases) {
  for (const char* n : {"z4", "q8"}) {
    auto g = named_group(n);
    const auto h = cohomology(g, 3);
    const Cochain w = h.generators()[0] * 2;
    TwistedContext ctx(g, w);
    for (const auto& p : admissible_pairs(ctx, involution_subgroup(g)))
      EXPECT_EQ(classify(p).kind, BKind::SuperModular) << n;
  }
  auto z6 = named_group("z6");
  TwistedContext ctx(z6, cyclic_cocycle(z6, 2));
  int super = 0, total = 0;
  for (const auto& p : admissible_pairs(ctx, Subgroup(z6, {0, 3}))) {
    ++total;
    if (classify(p).kind == BKind::SuperModular) ++super;
  }
  EXPECT_GE(super, 1);
  EXPECT_LT(super, total);
}

TEST(ClassifyTest, CoboundaryShiftInvariance) {
  std::mt19937_64 rng(12);
  for (const char* n : {"z4", "q8", "z6"}) {
    auto g = named_group(n);
    const auto a = Subgroup(g, {0, center_and_involutions(g).involutions.at(0)});
    for (const auto& w : h3_representatives(g)) {
      TwistedContext ctx(g, w);
      const auto base = outcomes(ctx, a);
      for (int t = 0; t < 3; ++t) {
        TwistedContext shifted(g, w + coboundary(random_cochain(g, 2, rng)));
        EXPECT_EQ(outcomes(shifted, a), base);
      }
    }
  }
}

TEST(BraidingTest, QuadraticFormAndBicharacter) {
  for (const char* n : {"z4", "z8", "q8", "z6"}) {
    auto g = named_group(n);
    for (const auto& w : h3_representatives(g)) {
      TwistedContext ctx(g, w);
      for (const auto& p : admissible_pairs(ctx, involution_subgroup(g))) {
        const auto bs = braiding_scalars(p);
        EXPECT_TRUE(bs.q.is_quadratic());
        const int na = p.a.order();
        for (int i = 0; i < na; ++i)
          for (int j = 0; j < na; ++j) EXPECT_EQ(bs.b[i][j], bs.d[i][j] + bs.d[j][i]);
        // |A| = 2: b(a,a) = 2 tau_a(a)
        EXPECT_EQ(bs.b[1][1], p.tau[1](p.a.elements()[1]) * 2);
      }
    }
  }
}

TEST(ThetaOrderTest, DividesElementOrder) {
  for (const auto& f : fixture_groups()) {
    const auto reps = h3_representatives(f.group);
    for (std::size_t r = 0; r < reps.size(); r += std::max<std::size_t>(1, reps.size() / 3)) {
      TwistedContext ctx(f.group, reps[r]);
      EXPECT_EQ(theta_class_order(ctx, 0), 1);
      for (Element g = 0; g < f.group->order(); ++g)
        EXPECT_EQ(f.group->element_order(g) % theta_class_order(ctx, g), 0) << f.name << " g=" << g;
    }
  }
  // unique-involution groups: theta_a of the involution is a coboundary on G
  for (const char* n : {"z4", "q8", "q16"}) {
    auto g = named_group(n);
    const Element a = center_and_involutions(g).involutions[0];
    for (const auto& w : h3_representatives(g)) EXPECT_EQ(theta_class_order(TwistedContext(g, w), a), 1);
  }
}

TEST(InducePairTest, Sl23ToQ8) {
  const auto& cls = sl2_3_classes();
  auto g = cls.group();
  const auto center = center_and_involutions(g).center;
  for (int i = 0; i < 8; ++i) {
    TwistedContext ctx(g, cls.cocycle(i, 1));
    const auto pairs = admissible_pairs(ctx, center);
    ASSERT_EQ(pairs.size(), 1u);
    const auto ind = induce_pair(ctx, pairs[0], cls.q8());
    EXPECT_TRUE(is_admissible_pair(ind.ctx, ind.pair));
    EXPECT_EQ(classify(ind.pair).kind, classify(pairs[0]).kind);
    // nu restricted to Q8 is trivial since G^ has order 3
    for (const auto& chi : ind.pair.nu) EXPECT_TRUE(chi.is_trivial());
    EXPECT_EQ(ind.pair.provenance, "induced-from:SL2(3)");
  }
  TwistedContext ctx(g, cls.cocycle(1, 0));
  const auto p = admissible_pairs(ctx, center)[0];
  const auto same = induce_pair(ctx, p, Subgroup::whole(g));
  EXPECT_EQ(classify(same.pair).q_values, classify(p).q_values);
}

TEST(Gamma0Test, UntwistedIsCharacterPairing) {
  auto z4 = named_group("z4");
  TwistedContext ctx(z4, Cochain(z4, 3));
  const auto pairs = admissible_pairs(ctx, Subgroup(z4, {0, 2}));
  const auto g0 = gamma0_pointed(ctx, pairs[0]);
  EXPECT_EQ(g0.size(), 16);
  EXPECT_EQ(g0.form.invariants(), (std::vector<std::int64_t>{4, 4}));
  EXPECT_TRUE(g0.form.is_quadratic());
  EXPECT_TRUE(g0.form.is_nondegenerate());
  for (int u = 0; u < g0.size(); ++u) EXPECT_EQ(g0.form.q_values()[0], UnitScalar());
  EXPECT_EQ(g0.complement.size(), 8u);
  auto q8 = named_group("q8");
  TwistedContext cq(q8, Cochain(q8, 3));
  EXPECT_THROW(gamma0_pointed(cq, admissible_pairs(cq, involution_subgroup(q8))[0]), PreconditionError);
}

TEST(Gamma0Test, ExplicitCyclicValues) {
  for (int k = 1; k <= 4; ++k) {
    const int m = k == 3 ? 5 : 3;
    SCOPED_TRACE(k);
    auto g = named_group("z" + std::to_string(2 * k));
    const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
    TwistedContext ctx(g, cyclic_cocycle(g, m2));
    const auto p = explicit_cyclic_pair(g, k, m);
    const auto g0 = gamma0_pointed(ctx, p);
    EXPECT_EQ(g0.size(), 4 * k * k);
    EXPECT_TRUE(g0.form.is_nondegenerate());
    // the current (z^k, tau - nu) has q = -i
    const int cur = g0.currents[1];
    std::vector<int> orig = g0.form.original_index();
    auto q_of = [&](int u) { return g0.form.q(static_cast<int>(std::find(orig.begin(), orig.end(), u) - orig.begin())); };
    EXPECT_EQ(q_of(cur), UnitScalar(3, 4));
    // u = (z, tau_z) generates the complement and u^{m~} has q = 1/4k^2
    std::vector<UnitScalar> tz;
    for (int b = 0; b < 2 * k; ++b) tz.push_back(UnitScalar(m2 * b, 4LL * k * k));
    const int u = g0.index_of(1, tz);
    EXPECT_EQ(g0.complement.size(), static_cast<std::size_t>(2 * k * k));
    EXPECT_TRUE(std::find(g0.complement.begin(), g0.complement.end(), u) != g0.complement.end());
    const std::int64_t mt = inverse_mod(m, 2LL * k * k);
    EXPECT_EQ(q_of(g0.power(u, mt)), UnitScalar(1, 4LL * k * k));
    EXPECT_TRUE(form_equivalent(g0.complement_form, lattice_form(k)).has_value());
  }
}

TEST(AdmissiblePairTest, JsonRoundTrip) {
  auto q8 = named_group("q8");
  TwistedContext ctx(q8, h3_representatives(q8)[3]);
  const auto pairs = admissible_pairs(ctx, involution_subgroup(q8));
  for (const auto& p : pairs) {
    const auto j = admissible_pair_to_json(p);
    const auto back = admissible_pair_from_json(j, q8);
    EXPECT_EQ(admissible_pair_to_json(back).dump(), j.dump());
    EXPECT_TRUE(is_admissible_pair(ctx, back));
  }
}
