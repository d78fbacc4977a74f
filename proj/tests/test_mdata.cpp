#include <gtest/gtest.h>

#include <chrono>
#include <fstream>

#include "twistlab/errors.hpp"
#include "twistlab/fixtures.hpp"
#include "twistlab/mdata.hpp"

using namespace twistlab;

namespace {

ModularData load_golden(const std::string& name) {
  std::ifstream in(std::string(TWISTLAB_DATA_DIR) + "/golden/" + name);
  return modular_data_from_json(nlohmann::json::parse(in));
}

Subgroup involution_subgroup(const GroupPtr& g) {
  return Subgroup(g, {0, center_and_involutions(g).involutions.at(0)});
}

bool has_fermion(const ModularData& md) {
  for (int i = 0; i < md.rank(); ++i)
    if (md.dims_exact[i] == Cyclotomic::integer(1) && md.twists[i] == UnitScalar(1, 2)) return true;
  return false;
}

// A fermion j that braids trivially with everything: S~_jk = d_j d_k for all k.
bool has_transparent_fermion(const ModularData& md) {
  for (int j = 0; j < md.rank(); ++j) {
    if (md.dims_exact[j] != Cyclotomic::integer(1) || md.twists[j] != UnitScalar(1, 2)) continue;
    bool transparent = true;
    for (int k = 0; k < md.rank() && transparent; ++k) transparent = md.s_exact[j][k] == md.dims_exact[k];
    if (transparent) return true;
  }
  return false;
}

bool s_invertible(const ModularData& md) {
  // S S* = D^2 C holds only when S is invertible; the unitarity check captures that
  for (const auto& c : validate(md).checks)
    if (c.name == "unitarity") return c.status == ValidationCheck::Status::Pass;
  return false;
}

// Untwisted D(A) for abelian A written directly from the group: simples
// (g, chi), twist chi(g), S~ = conj(chi(h) psi(g)).
ModularData brute_force_untwisted_abelian(const GroupPtr& g) {
  const auto ghat = character_group(g);
  const auto& chars = ghat;
  ModularData md;
  for (Element x = 0; x < g->order(); ++x)
    for (std::size_t c = 0; c < chars.size(); ++c) {
      md.labels.push_back(std::to_string(x) + "," + std::to_string(c));
      md.dims_exact.push_back(Cyclotomic::integer(1));
      md.twists.push_back(chars[c].values[x]);
    }
  const int r = md.rank();
  md.s_exact.assign(r, std::vector<Cyclotomic>(r));
  const int nc = static_cast<int>(chars.size());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const auto& chi = chars[i % nc];
      const auto& psi = chars[j % nc];
      md.s_exact[i][j] = Cyclotomic::root_of_unity(-(chi.values[j / nc] + psi.values[i / nc]));
    }
  md.refresh_numeric();
  return md;
}

}  // namespace

TEST(TwistedCharactersTest, OrdinaryCharacterTables) {
  auto z2 = named_group("z2");
  auto c2 = twisted_characters(Cochain(z2, 2));
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_EQ(c2[0].degree, 1);
  EXPECT_EQ(c2[1].degree, 1);

  auto q8 = named_group("q8");
  auto cq = twisted_characters(Cochain(q8, 2), 5);
  ASSERT_EQ(cq.size(), 5u);
  std::vector<int> degs;
  for (const auto& c : cq) degs.push_back(c.degree);
  EXPECT_EQ(degs, (std::vector<int>{1, 1, 1, 1, 2}));
  for (std::size_t i = 0; i < cq.size(); ++i)
    for (std::size_t j = 0; j < cq.size(); ++j)
      EXPECT_NEAR(std::abs(twisted_inner_product(cq[i], cq[j])), i == j ? 1.0 : 0.0, 1e-9);
}

TEST(TwistedCharactersTest, NontrivialCocycleOnV4) {
  auto v4 = named_group("v4");
  // x1 y2 / 2 with x = 2 x1 + x2
  auto theta = Cochain::from_function(v4, 2, [](std::span<const Element> t) { return UnitScalar((t[0] >> 1) * (t[1] & 1), 2); });
  auto c = twisted_characters(theta, 3);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].degree, 2);
  // the order is independent of the seed
  auto q8 = named_group("q8");
  auto a = twisted_characters(Cochain(q8, 2), 1), b = twisted_characters(Cochain(q8, 2), 99);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(std::abs(a[i].values[x] - b[i].values[x]), 0.0, 1e-9);
  auto bad = Cochain(v4, 2);
  bad.set(std::array<Element, 2>{1, 1}, UnitScalar(1, 3));
  EXPECT_THROW(twisted_characters(bad), NotACocycle);
}

TEST(SimplesTest, CountsAndDimensions) {
  auto z2 = named_group("z2");
  const auto s = simples(TwistedContext(z2, Cochain(z2, 3)));
  ASSERT_EQ(s.size(), 4u);
  for (const auto& so : s) EXPECT_EQ(so.dim, 1);
  EXPECT_EQ(simples(TwistedContext(named_group("trivial"), Cochain(named_group("trivial"), 3))).size(), 1u);

  const auto& cls = sl2_3_classes();
  std::int64_t total = 0;
  for (const auto& so : simples(TwistedContext(cls.group(), cls.cocycle(1, 1)))) total += so.dim * so.dim;
  EXPECT_EQ(total, 576);
}

TEST(DoubleDataTest, ToricCodeMatchesBruteForceAndFixture) {
  auto z2 = named_group("z2");
  const auto dd = compute_double(TwistedContext(z2, Cochain(z2, 3)));
  const auto brute = brute_force_untwisted_abelian(z2);
  const auto golden = load_golden("toric_code.json");
  EXPECT_EQ(sorted_twists(dd.md), (std::vector<UnitScalar>{UnitScalar(), UnitScalar(), UnitScalar(), UnitScalar(1, 2)}));
  EXPECT_TRUE(modular_data_equivalent(dd.md, brute).has_value());
  EXPECT_TRUE(modular_data_equivalent(dd.md, golden).has_value());
  EXPECT_TRUE(modular_data_equivalent(brute, golden).has_value());
}

TEST(DoubleDataTest, UntwistedAbelianMatchesBruteForce) {
  for (const char* n : {"z3", "z4", "v4"}) {
    auto g = named_group(n);
    const auto dd = compute_double(TwistedContext(g, Cochain(g, 3)));
    EXPECT_TRUE(modular_data_equivalent(dd.md, brute_force_untwisted_abelian(g)).has_value()) << n;
  }
}

TEST(DoubleDataTest, AxiomsOnFixtures) {
  for (const char* n : {"z2", "z4", "z6", "v4", "q8", "q12"}) {
    auto g = named_group(n);
    const auto reps = h3_representatives(g);
    for (std::size_t r = 0; r < reps.size(); r += std::max<std::size_t>(1, reps.size() / 4)) {
      TwistedContext ctx(g, reps[r]);
      const auto dd = compute_double(ctx);
      const double d2 = static_cast<double>(g->order()) * g->order();
      const auto rep = validate(dd.md, {1e-6, fs_exponent_bound(ctx), d2});
      for (const auto& c : rep.checks)
        EXPECT_NE(c.status, ValidationCheck::Status::Fail) << n << " class " << r << ": " << c.name << " " << c.detail;
      EXPECT_EQ(dd.md.s_exact[0][0], Cyclotomic::integer(1));
    }
  }
}

TEST(DoubleDataTest, SimpleCurrentsAndRestriction) {
  auto z2 = named_group("z2");
  TwistedContext ctx(z2, Cochain(z2, 3));
  const auto dd = compute_double(ctx);
  const auto pairs = admissible_pairs(ctx, Subgroup::whole(z2));
  const auto cur0 = identify_simple_currents(dd, pairs[0]);
  const auto cur1 = identify_simple_currents(dd, pairs[1]);
  EXPECT_EQ(cur0[0], 0);
  EXPECT_EQ(dd.md.twists[cur0[1]], UnitScalar());
  EXPECT_EQ(dd.md.twists[cur1[1]], UnitScalar(1, 2));
  const auto r1 = restrict_to_pair(dd, pairs[1]);
  EXPECT_EQ(r1.md.rank(), 2);
  EXPECT_TRUE(has_fermion(r1.md));
  const auto trivial = mueger_restrict(dd, {0});
  EXPECT_EQ(trivial.md.rank(), 4);
  EXPECT_THROW(mueger_restrict(dd, {}), DimensionMismatch);
}

TEST(DoubleDataTest, RestrictionAgreesWithClassification) {
  for (const char* n : {"z4", "q8", "z6"}) {
    auto g = named_group(n);
    for (const auto& w : h3_representatives(g)) {
      TwistedContext ctx(g, w);
      const auto dd = compute_double(ctx);
      for (const auto& p : admissible_pairs(ctx, involution_subgroup(g))) {
        const auto kind = classify(p).kind;
        const auto r = restrict_to_pair(dd, p);
        EXPECT_EQ(2 * r.md.global_dimension(), static_cast<double>(g->order()) * g->order());
        EXPECT_EQ(s_invertible(r.md), kind == BKind::Modular) << n;
        EXPECT_EQ(has_transparent_fermion(r.md), kind == BKind::SuperModular) << n;
        EXPECT_EQ(dd.md.twists[r.currents[1]], classify(p).q_values[1]);
      }
    }
  }
}

TEST(DoubleDataTest, TypeAPointedAgreement) {
  // the restricted data of the cyclic case is pointed by the lattice form
  for (int k = 1; k <= 2; ++k) {
    auto g = named_group("z" + std::to_string(2 * k));
    TwistedContext ctx(g, cyclic_cocycle(g, 1));
    const auto pairs = admissible_pairs(ctx, Subgroup(g, {0, k}));
    const auto dd = compute_double(ctx);
    bool any = false;
    for (const auto& p : pairs) {
      const auto r = restrict_to_pair(dd, p);
      const auto g0 = gamma0_pointed(ctx, p);
      const auto pmd = pointed_modular_data(g0.complement_form);
      EXPECT_EQ(r.md.rank(), 2 * k * k);
      const bool eq = modular_data_equivalent(r.md, pmd).has_value();
      EXPECT_TRUE(eq) << k;
      any = any || modular_data_equivalent(r.md, pointed_modular_data(lattice_form(k))).has_value();
    }
    EXPECT_TRUE(any) << k;
  }
}

TEST(SearchTest, ToricTarget) {
  auto z2 = named_group("z2");
  const std::vector<Cochain> cands{Cochain(z2, 3), cyclic_cocycle(z2, 1)};
  const std::vector<UnitScalar> target{UnitScalar(), UnitScalar(), UnitScalar(), UnitScalar(1, 2)};
  const auto m = search_omega0(z2, cands, Subgroup::trivial(z2), target);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].candidate, 0);
  EXPECT_TRUE(search_omega0(z2, cands, Subgroup::trivial(z2), {UnitScalar(1, 3)}).empty());
}

TEST(GoldenTest, GoldenFixturesAreValid) {
  const auto sl = load_golden("sl2_3.json");
  EXPECT_EQ(sl.rank(), 21);
  EXPECT_DOUBLE_EQ(sl.global_dimension(), 288.0);
  for (const auto& c : validate(sl, {1e-8, 24 * 24, 288.0}).checks)
    EXPECT_NE(c.status, ValidationCheck::Status::Fail) << c.name << " " << c.detail;
  const auto q8 = load_golden("q8.json");
  EXPECT_DOUBLE_EQ(q8.global_dimension(), 32.0);
  for (const auto& c : validate(q8, {1e-8, 64, 32.0}).checks)
    EXPECT_NE(c.status, ValidationCheck::Status::Fail) << c.name << " " << c.detail;
}

TEST(GoldenTest, Sl23AndQ8) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& cls = sl2_3_classes();
  auto g = cls.group();
  const auto golden = load_golden("sl2_3.json");
  const auto center = center_and_involutions(g).center;
  const auto matches = search_omega0(g, cls.all(), center, golden.twists);
  ASSERT_EQ(matches.size(), 1u);
  const auto& m = matches[0];
  auto p = modular_data_equivalent(m.data.md, golden);
  EXPECT_TRUE(p.has_value());
  std::cout << "omega0 = candidate " << m.candidate << " ("
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s)\n";

  // Q8 with the induced pair
  TwistedContext ctx(g, cls.all()[m.candidate]);
  const auto pair = admissible_pairs(ctx, center)[m.pair];
  const auto ind = induce_pair(ctx, pair, cls.q8());
  const auto q8golden = load_golden("q8.json");
  const auto dq = compute_double(ind.ctx);
  const auto rq = restrict_to_pair(dq, ind.pair);
  EXPECT_TRUE(modular_data_equivalent(rq.md, q8golden).has_value());
  // only the induced pair reproduces the golden twists
  const auto qpairs = admissible_pairs(ind.ctx, ind.pair.a);
  ASSERT_EQ(qpairs.size(), 4u);
  int hits = 0;
  for (const auto& qp : qpairs) {
    const auto r = restrict_to_pair(dq, qp);
    if (sorted_twists(r.md) == sorted_twists(q8golden)) {
      ++hits;
      EXPECT_EQ(identify_simple_currents(dq, qp), rq.currents);
    }
  }
  EXPECT_EQ(hits, 1);
}
