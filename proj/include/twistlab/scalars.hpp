#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

using ComplexApprox = std::complex<double>;

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);  // throws ResourceLimit on overflow
std::int64_t mod64(std::int64_t a, std::int64_t m);  // result in [0, m)
int euler_phi(int n);

// e(r) for r in Q/Z, stored as a reduced fraction in [0,1).
class UnitScalar {
 public:
  UnitScalar() = default;
  UnitScalar(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::int64_t order() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  UnitScalar operator+(const UnitScalar& o) const;
  UnitScalar operator-(const UnitScalar& o) const;
  UnitScalar operator-() const;
  UnitScalar operator*(std::int64_t k) const;  // k-th power in multiplicative notation
  UnitScalar& operator+=(const UnitScalar& o) { return *this = *this + o; }
  UnitScalar& operator-=(const UnitScalar& o) { return *this = *this - o; }
  bool operator==(const UnitScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const UnitScalar& o) const { return !(*this == o); }
  bool operator<(const UnitScalar& o) const;  // by angle in [0,1)

  double angle() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  ComplexApprox evaluate() const;
  std::string to_string() const;  // "p/q", zero is "0/1"
  static UnitScalar parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline UnitScalar unit_mul(const UnitScalar& a, const UnitScalar& b) { return a + b; }
inline UnitScalar unit_pow(const UnitScalar& a, std::int64_t k) { return a * k; }
inline std::int64_t unit_order(const UnitScalar& a) { return a.order(); }

// Element of Q(zeta_N) in the power basis zeta_N^i, 0 <= i < phi(N), always
// kept at the minimal conductor so that equal numbers have equal representations.
class Cyclotomic {
 public:
  Cyclotomic();  // zero
  static Cyclotomic rational(const mpq_class& q);
  static Cyclotomic integer(std::int64_t k) { return rational(mpq_class(k)); }
  static Cyclotomic zeta(int n, std::int64_t k = 1);  // zeta_n^k
  static Cyclotomic root_of_unity(const UnitScalar& u) { return zeta(static_cast<int>(u.den()), u.num()); }
  // Sum_j counts[j] * zeta_n^j; the fast path for large exponent sums.
  static Cyclotomic from_exponent_counts(int n, const std::vector<mpq_class>& counts);

  int conductor() const { return n_; }
  const std::vector<mpq_class>& coefficients() const { return c_; }
  bool is_zero() const;
  bool is_rational() const { return n_ == 1; }
  mpq_class rational_value() const;  // requires is_rational()

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const mpq_class& q) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && c_ == o.c_; }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  Cyclotomic conj() const;
  Cyclotomic galois(std::int64_t k) const;  // zeta -> zeta^k, gcd(k, N) = 1
  ComplexApprox evaluate() const;

  std::string to_string() const;  // "c0 + c1*z^1 + ... @ N"
  static Cyclotomic parse(const std::string& text);

 private:
  Cyclotomic(int n, std::vector<mpq_class> c);
  static Cyclotomic make_canonical(int n, std::vector<mpq_class> c);
  std::vector<mpq_class> lifted(int m) const;

  int n_;
  std::vector<mpq_class> c_;
};

inline Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }

// x^j mod Phi_n for 0 <= j < n, as integer coefficient rows of length phi(n).
const std::vector<std::vector<std::int64_t>>& cyclotomic_reduction_table(int n);
std::vector<std::int64_t> cyclotomic_polynomial(int n);

// Recovers the unique element of Q(zeta_n) whose coefficients have
// denominators <= bound and absolute value <= height within tol of z.
// Returns nullopt if there is none; throws Ambiguous if there are several.
std::optional<Cyclotomic> snap(ComplexApprox z, int n, int bound, double tol = 1e-9, int height = 4);

}  // namespace twistlab
