#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "twistlab/errors.hpp"
#include "twistlab/scalars.hpp"

using namespace twistlab;

namespace {

ComplexApprox expi(double turns) {
  double t = 2 * std::numbers::pi * turns;
  return {std::cos(t), std::sin(t)};
}

}  // namespace

TEST(UnitScalar, GroupLaw) {
  EXPECT_EQ(UnitScalar(1, 2) + UnitScalar(1, 2), UnitScalar(0, 1));
  EXPECT_EQ(unit_order(UnitScalar(3, 8)), 8);
  EXPECT_EQ(UnitScalar(1, 3) + UnitScalar(1, 4), UnitScalar(7, 12));
  EXPECT_EQ(UnitScalar(-1, 4), UnitScalar(3, 4));
  EXPECT_EQ(UnitScalar(6, 8), UnitScalar(3, 4));
  EXPECT_EQ(unit_pow(UnitScalar(1, 6), 3), UnitScalar(1, 2));
  EXPECT_EQ(-UnitScalar(0, 5), UnitScalar(0, 1));
  EXPECT_THROW(UnitScalar(1, 0), InvalidParameter);
}

TEST(UnitScalar, TextRoundTrip) {
  EXPECT_EQ(UnitScalar(0, 7).to_string(), "0/1");
  EXPECT_EQ(UnitScalar(5, 12).to_string(), "5/12");
  EXPECT_EQ(UnitScalar::parse("5/12"), UnitScalar(5, 12));
  EXPECT_EQ(UnitScalar::parse("13/12"), UnitScalar(1, 12));
  EXPECT_THROW(UnitScalar::parse("1/x"), ParseError);
}

TEST(UnitScalar, NumericProductsMatch) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> den(1, 500);
  for (int trial = 0; trial < 1000; ++trial) {
    int q1 = den(rng), q2 = den(rng);
    UnitScalar a(static_cast<std::int64_t>(rng() % q1), q1), b(static_cast<std::int64_t>(rng() % q2), q2);
    EXPECT_LT(std::abs((a + b).evaluate() - a.evaluate() * b.evaluate()), 1e-12);
  }
}

TEST(Cyclotomic, SquareRootOfTwo) {
  Cyclotomic s = Cyclotomic::zeta(8) + Cyclotomic::zeta(8, -1);
  EXPECT_EQ(s * s, Cyclotomic::integer(2));
  EXPECT_NEAR(s.evaluate().real(), std::sqrt(2.0), 1e-14);
  EXPECT_EQ(s.conductor(), 8);
}

TEST(Cyclotomic, BasicIdentities) {
  Cyclotomic x = Cyclotomic::zeta(9, 2) * mpq_class(3, 5) + Cyclotomic::zeta(4);
  EXPECT_TRUE((x + (-x)).is_zero());
  EXPECT_EQ(conj(Cyclotomic::zeta(9)), Cyclotomic::zeta(9, 8));
  EXPECT_EQ(Cyclotomic::zeta(4) * Cyclotomic::zeta(4), Cyclotomic::integer(-1));
  // minimal conductors
  EXPECT_EQ(Cyclotomic::zeta(8, 2).conductor(), 4);
  EXPECT_EQ(Cyclotomic::zeta(6).conductor(), 3);
  EXPECT_EQ(Cyclotomic::zeta(2).conductor(), 1);
  EXPECT_EQ((Cyclotomic::zeta(12) + Cyclotomic::zeta(12, 11)).conductor(), 12);  // sqrt 3
  EXPECT_EQ((Cyclotomic::zeta(5) + Cyclotomic::zeta(5, 4)).conductor(), 5);
}

TEST(Cyclotomic, CyclotomicPolynomialVanishes) {
  for (int n = 1; n <= 200; ++n) {
    auto phi = cyclotomic_polynomial(n);
    ASSERT_EQ(static_cast<int>(phi.size()) - 1, euler_phi(n));
    std::vector<mpq_class> counts(n);
    for (std::size_t k = 0; k < phi.size(); ++k) counts[k % n] += phi[k];
    EXPECT_TRUE(Cyclotomic::from_exponent_counts(n, counts).is_zero()) << n;
    // numeric evaluation at a primitive root
    ComplexApprox v = 0;
    for (std::size_t k = 0; k < phi.size(); ++k) v += static_cast<double>(phi[k]) * expi(static_cast<double>(k) / n);
    EXPECT_LT(std::abs(v), 1e-6) << n;
  }
}

TEST(Cyclotomic, CanonicalEqualityMatchesNumericEquality) {
  std::mt19937_64 rng(7);
  const int conductors[] = {1, 3, 4, 5, 8, 9, 12, 16, 36};
  auto random_value = [&](int n) {
    std::vector<mpq_class> counts(n);
    std::vector<std::pair<int, int>> terms;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < k; ++t) counts[rng() % n] += mpq_class(static_cast<int>(rng() % 7) - 3, 1 + rng() % 3);
    return std::make_pair(Cyclotomic::from_exponent_counts(n, counts), counts);
  };
  int equal_pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n1 = conductors[rng() % 9], n2 = conductors[rng() % 9];
    auto [a, ca] = random_value(n1);
    Cyclotomic b;
    if (trial % 3 == 0) {
      // the same number reached through a different expression
      auto [c, cc] = random_value(n2);
      b = (a + c) - c;
    } else {
      b = random_value(n2).first;
    }
    bool canonical_equal = a == b;
    bool numeric_equal = std::abs(a.evaluate() - b.evaluate()) < 1e-10;
    EXPECT_EQ(canonical_equal, numeric_equal) << a.to_string() << " vs " << b.to_string();
    equal_pairs += canonical_equal;
  }
  EXPECT_GT(equal_pairs, 300);
}

TEST(Cyclotomic, ShadowAccuracy) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 1000);
    std::vector<mpq_class> counts(n);
    ComplexApprox expected = 0;
    for (int t = 0; t < 5; ++t) {
      int e = static_cast<int>(rng() % n);
      mpq_class c(static_cast<int>(rng() % 9) - 4, 1 + rng() % 5);
      c.canonicalize();
      counts[e] += c;
      expected += c.get_d() * expi(static_cast<double>(e) / n);
    }
    Cyclotomic x = Cyclotomic::from_exponent_counts(n, counts);
    EXPECT_LE(std::abs(x.evaluate() - expected), 1e-12) << x.to_string();
  }
}

TEST(Cyclotomic, TextRoundTrip) {
  std::vector<Cyclotomic> xs = {Cyclotomic(), Cyclotomic::integer(-3), Cyclotomic::zeta(16, 9) * mpq_class(3, 2),
                                Cyclotomic::zeta(36, 25) + Cyclotomic::zeta(9, 4) - Cyclotomic::zeta(8)};
  for (const auto& x : xs) {
    std::string s = x.to_string();
    EXPECT_EQ(Cyclotomic::parse(s), x) << s;
    EXPECT_EQ(Cyclotomic::parse(s).to_string(), s);
  }
  EXPECT_EQ(Cyclotomic().to_string(), "0 @ 1");
  EXPECT_EQ(Cyclotomic::parse("4*z^5 @ 18"), Cyclotomic::zeta(18, 5) * mpq_class(4));
  EXPECT_EQ(Cyclotomic::parse("6*z^1 + 6*z^7 @ 8"), (Cyclotomic::zeta(8) + Cyclotomic::zeta(8, 7)) * mpq_class(6));
  EXPECT_EQ(Cyclotomic::parse("-1/2 - z @ 4"), Cyclotomic::rational(mpq_class(-1, 2)) - Cyclotomic::zeta(4));
  EXPECT_EQ(Cyclotomic::parse("z^3 @ 4"), -Cyclotomic::zeta(4));
  EXPECT_THROW(Cyclotomic::parse("1 + "), ParseError);
  EXPECT_THROW(Cyclotomic::parse("1 @ 0"), ParseError);
}

TEST(Snap, Examples) {
  auto half_sqrt2 = snap({std::sqrt(0.5), 0.0}, 8, 2);
  ASSERT_TRUE(half_sqrt2.has_value());
  EXPECT_EQ(*half_sqrt2, (Cyclotomic::zeta(8) + Cyclotomic::zeta(8, 7)) * mpq_class(1, 2));
  auto zero = snap({0.0, 0.0}, 8, 4);
  ASSERT_TRUE(zero.has_value());
  EXPECT_TRUE(zero->is_zero());
  EXPECT_FALSE(snap({0.123456, 0.0}, 1, 4).has_value());
  EXPECT_FALSE(snap({0.123456, 0.0}, 8, 4).has_value());
  EXPECT_THROW(snap({0.5, 0.0}, 8, 4, 0.3), Ambiguous);
}

TEST(Snap, RecoversRandomElements) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int n = std::vector<int>{3, 4, 5, 8, 12}[rng() % 5];
    int phi = euler_phi(n);
    std::vector<mpq_class> counts(n);
    for (int i = 0; i < phi; ++i) counts[i] = mpq_class(static_cast<int>(rng() % 5) - 2, 1 + rng() % 2);
    for (auto& c : counts) c.canonicalize();
    Cyclotomic x = Cyclotomic::from_exponent_counts(n, counts);
    auto y = snap(x.evaluate(), n, 2, 1e-9, 2);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(*y, x);
  }
}
