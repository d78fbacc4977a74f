#include <gtest/gtest.h>

#include <cmath>

#include "twistlab/errors.hpp"
#include "twistlab/grp.hpp"
#include "twistlab/pointed.hpp"

using namespace twistlab;

TEST(MetricGroupTest, CyclicForm) {
  const auto m = MetricGroup::cyclic(8, UnitScalar(1, 16));
  EXPECT_EQ(m.size(), 8);
  EXPECT_EQ(m.q(3), UnitScalar(9, 16));
  EXPECT_TRUE(m.is_quadratic());
  EXPECT_TRUE(m.is_nondegenerate());
  EXPECT_EQ(m.b(1, 1), UnitScalar(1, 8));
  // q(x) = x/4 on Z4 is not quadratic
  std::vector<UnitScalar> lin;
  for (int x = 0; x < 4; ++x) lin.push_back(UnitScalar(x, 4));
  EXPECT_FALSE(MetricGroup({4}, lin).is_quadratic());
}

TEST(MetricGroupTest, RadicalAndDegeneracy) {
  const auto m = MetricGroup::cyclic(4, UnitScalar(1, 4));  // b(1,1) = 1/2
  EXPECT_EQ(m.radical(), (std::vector<int>{0, 2}));
  EXPECT_FALSE(m.is_nondegenerate());
  EXPECT_THROW(pointed_modular_data(m), Degenerate);
}

TEST(MetricGroupTest, FromOperationReindexes) {
  // Z2 x Z4 given in product order (a, b) -> 4a + b, q(a, b) = a/2 + b^2/8
  std::vector<UnitScalar> q;
  for (int x = 0; x < 8; ++x) q.push_back(UnitScalar(x / 4, 2) + UnitScalar((x % 4) * (x % 4), 8));
  auto op = [](int x, int y) { return ((x / 4 + y / 4) % 2) * 4 + (x % 4 + y % 4) % 4; };
  const auto m = MetricGroup::from_operation(8, op, q);
  std::vector<std::int64_t> inv = m.invariants();
  std::sort(inv.begin(), inv.end());
  EXPECT_EQ(inv, (std::vector<std::int64_t>{2, 4}));
  for (int i = 0; i < m.size(); ++i) EXPECT_EQ(m.q(i), q[m.original_index()[i]]);
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) EXPECT_EQ(m.original_index()[m.add(i, j)], op(m.original_index()[i], m.original_index()[j]));
}

TEST(MetricGroupTest, GaussSumOfLatticeForm) {
  // |sum e(q)| = sqrt(|D|) and the phase is e(1/8) for a rank-one positive lattice
  for (int k = 1; k <= 4; ++k) {
    const auto m = lattice_form(k);
    EXPECT_EQ(m.size(), 2 * k * k);
    EXPECT_TRUE(m.is_nondegenerate());
    const auto g = m.gauss_sum().evaluate();
    EXPECT_NEAR(std::abs(g), std::sqrt(2.0 * k * k), 1e-9);
    EXPECT_NEAR(std::arg(g), M_PI / 4, 1e-9);
  }
}

TEST(MetricGroupTest, FormEquivalence) {
  const auto a = MetricGroup::cyclic(8, UnitScalar(1, 16));
  EXPECT_TRUE(form_equivalent(a, MetricGroup::cyclic(8, UnitScalar(9, 16))).has_value());
  EXPECT_FALSE(form_equivalent(a, MetricGroup::cyclic(8, UnitScalar(3, 16))).has_value());
  EXPECT_TRUE(form_equivalent(a, lattice_form(2)).has_value());
  EXPECT_FALSE(form_equivalent(a, MetricGroup::cyclic(8, UnitScalar(5, 16))).has_value());
  // Z2 x Z2 with q = (0, 0, 0, 1/2) against the reordered copy
  const MetricGroup tc({2, 2}, {UnitScalar(), UnitScalar(), UnitScalar(), UnitScalar(1, 2)});
  const MetricGroup semion2({2, 2}, {UnitScalar(), UnitScalar(1, 4), UnitScalar(3, 4), UnitScalar()});
  const MetricGroup z4({4}, {UnitScalar(), UnitScalar(), UnitScalar(), UnitScalar(1, 2)});
  EXPECT_FALSE(form_equivalent(tc, semion2).has_value());
  EXPECT_FALSE(form_equivalent(tc, z4).has_value());
  auto phi = form_equivalent(semion2, semion2);
  ASSERT_TRUE(phi.has_value());
  for (int x = 0; x < 4; ++x) EXPECT_EQ(semion2.q((*phi)[x]), semion2.q(x));
}

TEST(PointedModularDataTest, ToricCode) {
  const MetricGroup tc({2, 2}, {UnitScalar(), UnitScalar(), UnitScalar(), UnitScalar(1, 2)});
  const auto md = pointed_modular_data(tc);
  EXPECT_TRUE(validate(md, {1e-9, 2, 4.0}).ok());
  ModularData ref;
  ref.labels = {"1", "e", "m", "f"};
  ref.dims_exact.assign(4, Cyclotomic::integer(1));
  ref.twists = {UnitScalar(), UnitScalar(), UnitScalar(), UnitScalar(1, 2)};
  const int s[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  ref.s_exact.assign(4, std::vector<Cyclotomic>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ref.s_exact[i][j] = Cyclotomic::integer(s[i][j]);
  ref.refresh_numeric();
  EXPECT_TRUE(modular_data_equivalent(md, ref).has_value());
}

TEST(PointedModularDataTest, LatticeFormsAreModular) {
  for (int k = 1; k <= 4; ++k) {
    const auto md = pointed_modular_data(lattice_form(k));
    const auto rep = validate(md, {1e-8, 4LL * k * k, 2.0 * k * k});
    for (const auto& c : rep.checks) EXPECT_NE(c.status, ValidationCheck::Status::Fail) << k << " " << c.name << " " << c.detail;
  }
}

TEST(MetricGroupTest, JsonRoundTrip) {
  const auto m = lattice_form(3);
  const auto back = metric_group_from_json(metric_group_to_json(m));
  EXPECT_EQ(back.invariants(), m.invariants());
  EXPECT_EQ(back.q_values(), m.q_values());
  EXPECT_THROW(metric_group_from_json(nlohmann::json::parse("{}")), ParseError);
}
