#include "twistlab/scalars.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  std::int64_t g = gcd64(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l < 0) l = -l;
  if (l > INT64_MAX) throw ResourceLimit("denominator overflow in lcm");
  return static_cast<std::int64_t>(l);
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

std::vector<int> prime_divisors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

// ---------------------------------------------------------------- UnitScalar

UnitScalar::UnitScalar(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw InvalidParameter("UnitScalar denominator must be positive");
  num = mod64(num, den);
  std::int64_t g = gcd64(num, den);
  if (g == 0) g = den;
  num_ = num / g;
  den_ = den / g;
}

UnitScalar UnitScalar::operator+(const UnitScalar& o) const {
  if (den_ == o.den_) return UnitScalar(num_ + o.num_, den_);
  std::int64_t l = lcm64(den_, o.den_);
  __int128 n = static_cast<__int128>(num_) * (l / den_) + static_cast<__int128>(o.num_) * (l / o.den_);
  return UnitScalar(static_cast<std::int64_t>(n % l), l);
}

UnitScalar UnitScalar::operator-() const { return UnitScalar(den_ - num_, den_); }

UnitScalar UnitScalar::operator-(const UnitScalar& o) const { return *this + (-o); }

UnitScalar UnitScalar::operator*(std::int64_t k) const {
  __int128 n = static_cast<__int128>(num_) * k;
  n %= den_;
  return UnitScalar(static_cast<std::int64_t>(n), den_);
}

bool UnitScalar::operator<(const UnitScalar& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

ComplexApprox UnitScalar::evaluate() const {
  double t = 2.0 * std::numbers::pi * angle();
  return {std::cos(t), std::sin(t)};
}

std::string UnitScalar::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

UnitScalar UnitScalar::parse(const std::string& text) {
  auto slash = text.find('/');
  std::int64_t p = 0, q = 1;
  auto parse_int = [&](std::string_view s, std::int64_t& out) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad unit scalar: " + text);
  };
  if (slash == std::string::npos) {
    parse_int(text, p);
  } else {
    parse_int(std::string_view(text).substr(0, slash), p);
    parse_int(std::string_view(text).substr(slash + 1), q);
  }
  if (q <= 0) throw ParseError("bad unit scalar denominator: " + text);
  return UnitScalar(p, q);
}

// ------------------------------------------------------- cyclotomic tables

namespace {

using Poly = std::vector<std::int64_t>;

// (x^n - 1) divided by the product of Phi_d over proper divisors d.
Poly compute_cyclotomic(int n, std::map<int, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    Poly den = compute_cyclotomic(d, memo);
    int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    Poly q(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
      std::int64_t c = num[i];
      q[i - dd] = c;
      if (c != 0)
        for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = q;
  }
  memo[n] = num;
  return num;
}

struct ReductionCache {
  std::mutex mu;
  std::map<int, Poly> polys;
  std::map<int, std::unique_ptr<std::vector<std::vector<std::int64_t>>>> tables;
};

ReductionCache& reduction_cache() {
  static ReductionCache cache;
  return cache;
}

// Coordinates of the subfield Q(zeta_m) inside Q(zeta_n): chosen pivot rows of
// the lift matrix and the inverse of that square block.
struct Projection {
  std::vector<int> rows;
  std::vector<std::vector<mpq_class>> inverse;
};

std::mutex projection_mu;
std::map<std::pair<int, int>, std::unique_ptr<Projection>> projection_cache;

std::vector<mpq_class> reduce_counts(int n, const std::vector<mpq_class>& counts) {
  const auto& table = cyclotomic_reduction_table(n);
  int phi = euler_phi(n);
  std::vector<mpq_class> out(phi);
  for (int j = 0; j < n; ++j) {
    if (sgn(counts[j]) == 0) continue;
    const auto& row = table[j];
    for (int i = 0; i < phi; ++i)
      if (row[i] != 0) out[i] += counts[j] * row[i];
  }
  return out;
}

const Projection& projection(int n, int m) {
  std::lock_guard lock(projection_mu);
  auto key = std::make_pair(n, m);
  if (auto it = projection_cache.find(key); it != projection_cache.end()) return *it->second;
  int pn = euler_phi(n), pm = euler_phi(m);
  const auto& table = cyclotomic_reduction_table(n);
  // B[r][i] = coordinate r of zeta_m^i lifted to Q(zeta_n)
  std::vector<std::vector<mpq_class>> b(pn, std::vector<mpq_class>(pm));
  for (int i = 0; i < pm; ++i) {
    const auto& row = table[static_cast<std::size_t>(i) * (n / m) % n];
    for (int r = 0; r < pn; ++r) b[r][i] = row[r];
  }
  // Greedy choice of independent rows.
  std::vector<int> rows;
  std::vector<std::vector<mpq_class>> basis;  // row-echelon copies
  std::vector<int> lead;
  for (int r = 0; r < pn && static_cast<int>(rows.size()) < pm; ++r) {
    std::vector<mpq_class> v = b[r];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (sgn(v[lead[k]]) == 0) continue;
      mpq_class f = v[lead[k]] / basis[k][lead[k]];
      for (int i = 0; i < pm; ++i) v[i] -= f * basis[k][i];
    }
    int l = -1;
    for (int i = 0; i < pm; ++i)
      if (sgn(v[i]) != 0) { l = i; break; }
    if (l < 0) continue;
    rows.push_back(r);
    basis.push_back(v);
    lead.push_back(l);
  }
  // Invert the square block B[rows].
  std::vector<std::vector<mpq_class>> a(pm, std::vector<mpq_class>(2 * pm));
  for (int k = 0; k < pm; ++k) {
    for (int i = 0; i < pm; ++i) a[k][i] = b[rows[k]][i];
    a[k][pm + k] = 1;
  }
  for (int col = 0; col < pm; ++col) {
    int piv = col;
    while (sgn(a[piv][col]) == 0) ++piv;
    std::swap(a[piv], a[col]);
    mpq_class inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (int r = 0; r < pm; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      mpq_class f = a[r][col];
      for (int i = 0; i < 2 * pm; ++i) a[r][i] -= f * a[col][i];
    }
  }
  auto proj = std::make_unique<Projection>();
  proj->rows = rows;
  proj->inverse.assign(pm, std::vector<mpq_class>(pm));
  for (int i = 0; i < pm; ++i)
    for (int k = 0; k < pm; ++k) proj->inverse[i][k] = a[i][pm + k];
  auto& ref = *proj;
  projection_cache[key] = std::move(proj);
  return ref;
}

std::vector<mpq_class> apply_galois(int n, const std::vector<mpq_class>& c, std::int64_t k) {
  std::vector<mpq_class> counts(n);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != 0) counts[static_cast<std::size_t>(mod64(static_cast<std::int64_t>(i) * k, n))] += c[i];
  return reduce_counts(n, counts);
}

bool in_subfield(int n, const std::vector<mpq_class>& c, int m) {
  for (int j = 1; j < n / m; ++j) {
    std::int64_t k = 1 + static_cast<std::int64_t>(j) * m;
    if (gcd64(k, n) != 1) continue;
    if (apply_galois(n, c, k) != c) return false;
  }
  return true;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(int n) {
  if (n < 1) throw InvalidParameter("cyclotomic polynomial index must be positive");
  auto& cache = reduction_cache();
  std::lock_guard lock(cache.mu);
  return compute_cyclotomic(n, cache.polys);
}

const std::vector<std::vector<std::int64_t>>& cyclotomic_reduction_table(int n) {
  if (n < 1) throw InvalidParameter("conductor must be positive");
  auto& cache = reduction_cache();
  std::lock_guard lock(cache.mu);
  if (auto it = cache.tables.find(n); it != cache.tables.end()) return *it->second;
  Poly phi_poly = compute_cyclotomic(n, cache.polys);
  int phi = static_cast<int>(phi_poly.size()) - 1;
  auto table = std::make_unique<std::vector<std::vector<std::int64_t>>>();
  std::vector<std::int64_t> row(phi, 0);
  row[0] = 1;
  if (phi == 0) row = {};
  for (int j = 0; j < n; ++j) {
    if (phi == 0) {
      table->push_back({});
      continue;
    }
    table->push_back(row);
    std::int64_t top = row[phi - 1];
    for (int i = phi - 1; i > 0; --i) row[i] = row[i - 1];
    row[0] = 0;
    if (top != 0)
      for (int i = 0; i < phi; ++i) row[i] -= top * phi_poly[i];
  }
  auto& ref = *table;
  cache.tables[n] = std::move(table);
  return ref;
}

// ---------------------------------------------------------------- Cyclotomic

Cyclotomic::Cyclotomic() : n_(1), c_(1) {}

Cyclotomic::Cyclotomic(int n, std::vector<mpq_class> c) : n_(n), c_(std::move(c)) {}

Cyclotomic Cyclotomic::make_canonical(int n, std::vector<mpq_class> c) {
  bool zero_above = true;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (sgn(c[i]) != 0) { zero_above = false; break; }
  if (zero_above) return Cyclotomic(1, {c.empty() ? mpq_class(0) : c[0]});
  bool changed = true;
  while (changed && n > 1) {
    changed = false;
    for (int p : prime_divisors(n)) {
      int m = n / p;
      if (!in_subfield(n, c, m)) continue;
      const Projection& proj = projection(n, m);
      int pm = euler_phi(m);
      std::vector<mpq_class> nc(pm);
      for (int i = 0; i < pm; ++i)
        for (int k = 0; k < pm; ++k)
          if (sgn(proj.inverse[i][k]) != 0) nc[i] += proj.inverse[i][k] * c[proj.rows[k]];
      c = std::move(nc);
      n = m;
      changed = true;
      break;
    }
  }
  return Cyclotomic(n, std::move(c));
}

Cyclotomic Cyclotomic::rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return Cyclotomic(1, {c});
}

Cyclotomic Cyclotomic::zeta(int n, std::int64_t k) {
  if (n < 1) throw InvalidParameter("root of unity order must be positive");
  std::vector<mpq_class> counts(n);
  counts[static_cast<std::size_t>(mod64(k, n))] = 1;
  return make_canonical(n, reduce_counts(n, counts));
}

Cyclotomic Cyclotomic::from_exponent_counts(int n, const std::vector<mpq_class>& counts) {
  if (static_cast<int>(counts.size()) != n) throw InvalidParameter("exponent count vector has wrong length");
  std::vector<mpq_class> c = counts;
  for (auto& x : c) x.canonicalize();
  return make_canonical(n, reduce_counts(n, c));
}

bool Cyclotomic::is_zero() const { return n_ == 1 && sgn(c_[0]) == 0; }

mpq_class Cyclotomic::rational_value() const {
  if (n_ != 1) throw InvalidParameter("cyclotomic value is not rational: " + to_string());
  return c_[0];
}

std::vector<mpq_class> Cyclotomic::lifted(int m) const {
  if (m == n_) return c_;
  std::vector<mpq_class> counts(m);
  int step = m / n_;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) counts[i * step] += c_[i];
  return reduce_counts(m, counts);
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  int m = static_cast<int>(lcm64(n_, o.n_));
  auto a = lifted(m);
  auto b = o.lifted(m);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return make_canonical(m, std::move(a));
}

Cyclotomic Cyclotomic::operator-() const {
  std::vector<mpq_class> c = c_;
  for (auto& x : c) x = -x;
  return Cyclotomic(n_, std::move(c));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const mpq_class& q) const {
  mpq_class f = q;
  f.canonicalize();
  if (sgn(f) == 0) return Cyclotomic();
  std::vector<mpq_class> c = c_;
  for (auto& x : c) x *= f;
  return Cyclotomic(n_, std::move(c));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (is_rational()) return o * c_[0];
  if (o.is_rational()) return *this * o.c_[0];
  int m = static_cast<int>(lcm64(n_, o.n_));
  auto a = lifted(m);
  auto b = o.lifted(m);
  std::vector<mpq_class> counts(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (sgn(b[j]) != 0) counts[(i + j) % m] += a[i] * b[j];
  }
  return make_canonical(m, reduce_counts(m, counts));
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  if (gcd64(k, n_) != 1) throw InvalidParameter("Galois exponent must be coprime to the conductor");
  return make_canonical(n_, apply_galois(n_, c_, k));
}

Cyclotomic Cyclotomic::conj() const { return n_ <= 2 ? *this : galois(n_ - 1); }

ComplexApprox Cyclotomic::evaluate() const {
  ComplexApprox z = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    z += c_[i].get_d() * UnitScalar(static_cast<std::int64_t>(i), n_).evaluate();
  }
  return z;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << c_[i].get_str();
    if (i > 0) out << "*z^" << i;
  }
  if (first) out << "0";
  out << " @ " << n_;
  return out.str();
}

Cyclotomic Cyclotomic::parse(const std::string& text) {
  auto at = text.find('@');
  if (at == std::string::npos) throw ParseError("cyclotomic needs '@ N': " + text);
  std::string expr, cond;
  for (char ch : text.substr(0, at))
    if (!std::isspace(static_cast<unsigned char>(ch))) expr += ch;
  for (char ch : text.substr(at + 1))
    if (!std::isspace(static_cast<unsigned char>(ch))) cond += ch;
  int n = 0;
  {
    auto [ptr, ec] = std::from_chars(cond.data(), cond.data() + cond.size(), n);
    if (ec != std::errc() || ptr != cond.data() + cond.size() || n < 1) throw ParseError("bad conductor: " + text);
  }
  std::vector<mpq_class> counts(n);
  std::size_t pos = 0;
  auto fail = [&]() { throw ParseError("bad cyclotomic expression: " + text); };
  auto read_digits = [&]() {
    std::size_t start = pos;
    while (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) ++pos;
    if (pos == start) fail();
    return expr.substr(start, pos - start);
  };
  if (expr.empty()) fail();
  while (pos < expr.size()) {
    int sign = 1;
    bool saw_sign = false;
    while (pos < expr.size() && (expr[pos] == '+' || expr[pos] == '-')) {
      if (expr[pos] == '-') sign = -sign;
      saw_sign = true;
      ++pos;
    }
    if (pos != 0 && !saw_sign) fail();
    mpq_class coef(1);
    bool has_coef = false;
    if (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) {
      std::string num = read_digits();
      std::string den = "1";
      if (pos < expr.size() && expr[pos] == '/') {
        ++pos;
        den = read_digits();
      }
      coef = mpq_class(mpz_class(num), mpz_class(den));
      coef.canonicalize();
      has_coef = true;
    }
    std::int64_t exponent = 0;
    if (pos < expr.size() && expr[pos] == '*') {
      if (!has_coef) fail();
      ++pos;
    }
    if (pos < expr.size() && expr[pos] == 'z') {
      ++pos;
      exponent = 1;
      if (pos < expr.size() && expr[pos] == '^') {
        ++pos;
        exponent = std::stoll(read_digits());
      }
    } else if (!has_coef) {
      fail();
    }
    counts[static_cast<std::size_t>(mod64(exponent, n))] += sign * coef;
  }
  return from_exponent_counts(n, counts);
}

// ---------------------------------------------------------------- snap

std::optional<Cyclotomic> snap(ComplexApprox z, int n, int bound, double tol, int height) {
  if (n < 1 || bound < 1 || height < 0) throw InvalidParameter("snap needs positive conductor and bound");
  int phi = euler_phi(n);
  std::set<mpq_class> grid_set;
  for (int q = 1; q <= bound; ++q)
    for (int p = -height * q; p <= height * q; ++p) grid_set.insert(mpq_class(p, q));
  std::vector<mpq_class> grid(grid_set.begin(), grid_set.end());
  for (auto& g : grid) g.canonicalize();

  auto basis = [&](int i) { return UnitScalar(i, n).evaluate(); };
  auto nearest = [&](double v) -> std::optional<mpq_class> {
    std::optional<mpq_class> best;
    double best_err = tol;
    for (int q = 1; q <= bound; ++q) {
      double p = std::round(v * q);
      if (std::abs(p) > static_cast<double>(height) * q) continue;
      double err = std::abs(p / q - v);
      if (err <= best_err) {
        mpq_class r(static_cast<long>(p), q);
        r.canonicalize();
        if (!best || err < best_err) best = r;
        best_err = std::min(best_err, err);
      }
    }
    return best;
  };

  std::vector<Cyclotomic> found;
  auto consider = [&](const std::vector<mpq_class>& coeffs) {
    std::vector<mpq_class> counts(n);
    for (int i = 0; i < phi; ++i) counts[i] = coeffs[i];
    Cyclotomic c = Cyclotomic::from_exponent_counts(n, counts);
    if (std::abs(c.evaluate() - z) > tol) return;
    if (std::find(found.begin(), found.end(), c) == found.end()) found.push_back(c);
  };

  int free_count = std::max(phi - 2, 0);
  std::vector<std::size_t> idx(free_count, 0);
  std::vector<mpq_class> coeffs(phi);
  while (true) {
    ComplexApprox w = z;
    for (int i = 0; i < free_count; ++i) {
      coeffs[i] = grid[idx[i]];
      w -= coeffs[i].get_d() * basis(i);
    }
    if (phi == 1) {
      if (std::abs(w.imag()) <= tol) {
        if (auto r = nearest(w.real())) {
          coeffs[0] = *r;
          consider(coeffs);
        }
      }
    } else {
      ComplexApprox u = basis(phi - 2), v = basis(phi - 1);
      double det = u.real() * v.imag() - u.imag() * v.real();
      double a = (w.real() * v.imag() - w.imag() * v.real()) / det;
      double b = (u.real() * w.imag() - u.imag() * w.real()) / det;
      auto ra = nearest(a), rb = nearest(b);
      if (ra && rb) {
        coeffs[phi - 2] = *ra;
        coeffs[phi - 1] = *rb;
        consider(coeffs);
      }
    }
    int k = 0;
    while (k < free_count && ++idx[k] == grid.size()) idx[k++] = 0;
    if (k == free_count) break;
  }
  if (found.empty()) return std::nullopt;
  if (found.size() > 1)
    throw Ambiguous("several cyclotomic candidates within tolerance: " + found[0].to_string() + ", " +
                    found[1].to_string());
  return found.front();
}

}  // namespace twistlab
