#include "twistlab/pointed.hpp"

#include <algorithm>
#include <functional>

#include "twistlab/errors.hpp"
#include "twistlab/grp.hpp"

namespace twistlab {

MetricGroup::MetricGroup(std::vector<std::int64_t> invariants, std::vector<UnitScalar> q)
    : invariants_(std::move(invariants)), q_(std::move(q)) {
  std::int64_t n = 1;
  for (auto d : invariants_) {
    if (d < 1) throw InvalidParameter("invariant factors must be positive");
    n *= d;
  }
  if (static_cast<std::int64_t>(q_.size()) != n) throw DimensionMismatch("q needs one value per group element");
  original_.resize(q_.size());
  for (std::size_t i = 0; i < original_.size(); ++i) original_[i] = static_cast<int>(i);
}

MetricGroup MetricGroup::from_operation(int n, const std::function<int(int, int)>& op, const std::vector<UnitScalar>& q) {
  if (static_cast<int>(q.size()) != n) throw DimensionMismatch("q needs one value per group element");
  const AbelianDecomposition dec = decompose_abelian(n, op);
  MetricGroup m(dec.invariants, std::vector<UnitScalar>(n));
  for (int e = 0; e < n; ++e) {
    const int idx = m.index(dec.coords[e]);
    m.q_[idx] = q[e];
    m.original_[idx] = e;
  }
  return m;
}

MetricGroup MetricGroup::cyclic(std::int64_t n, const UnitScalar& q_generator) {
  std::vector<UnitScalar> q;
  for (std::int64_t x = 0; x < n; ++x) q.push_back(q_generator * (x * x));
  return MetricGroup(n == 1 ? std::vector<std::int64_t>{} : std::vector<std::int64_t>{n}, std::move(q));
}

std::vector<std::int64_t> MetricGroup::coords(int x) const {
  std::vector<std::int64_t> c(invariants_.size());
  for (std::size_t i = invariants_.size(); i-- > 0;) {
    c[i] = x % invariants_[i];
    x = static_cast<int>(x / invariants_[i]);
  }
  return c;
}

int MetricGroup::index(const std::vector<std::int64_t>& c) const {
  if (c.size() != invariants_.size()) throw DimensionMismatch("coordinate vector length");
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i) idx = idx * invariants_[i] + mod64(c[i], invariants_[i]);
  return static_cast<int>(idx);
}

int MetricGroup::add(int x, int y) const {
  auto a = coords(x);
  const auto b = coords(y);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return index(a);
}

int MetricGroup::neg(int x) const {
  auto a = coords(x);
  for (auto& v : a) v = -v;
  return index(a);
}

int MetricGroup::mul(int x, std::int64_t k) const {
  auto a = coords(x);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod64(a[i] * mod64(k, invariants_[i]), invariants_[i]);
  return index(a);
}

int MetricGroup::element_order(int x) const {
  std::int64_t o = 1;
  const auto a = coords(x);
  for (std::size_t i = 0; i < a.size(); ++i) o = lcm64(o, invariants_[i] / gcd64(a[i], invariants_[i]));
  return static_cast<int>(o);
}

bool MetricGroup::is_quadratic() const {
  if (!q_[0].is_zero()) return false;
  const int n = size();
  for (int x = 0; x < n; ++x) {
    if (q_[neg(x)] != q_[x]) return false;
    const int o = element_order(x);
    for (int k = 2; k < o; ++k)
      if (q_[mul(x, k)] != q_[x] * (static_cast<std::int64_t>(k) * k)) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (b(add(x, y), z) != b(x, z) + b(y, z)) return false;
  return true;
}

std::vector<int> MetricGroup::radical() const {
  std::vector<int> r;
  for (int x = 0; x < size(); ++x) {
    bool in = true;
    for (int y = 0; y < size() && in; ++y) in = b(x, y).is_zero();
    if (in) r.push_back(x);
  }
  return r;
}

Cyclotomic MetricGroup::gauss_sum() const {
  std::int64_t cond = 1;
  for (const auto& v : q_) cond = lcm64(cond, v.den());
  std::vector<mpq_class> counts(static_cast<std::size_t>(cond));
  for (const auto& v : q_) counts[static_cast<std::size_t>(v.num() * (cond / v.den()))] += 1;
  return Cyclotomic::from_exponent_counts(static_cast<int>(cond), counts);
}

MetricGroup lattice_form(int k) {
  if (k < 1) throw InvalidParameter("lattice_form needs k >= 1");
  const std::int64_t kk = static_cast<std::int64_t>(k) * k;
  return MetricGroup::cyclic(2 * kk, UnitScalar(1, 4 * kk));
}

std::optional<std::vector<int>> form_equivalent(const MetricGroup& m1, const MetricGroup& m2) {
  const int n = m1.size();
  if (m2.size() != n) return std::nullopt;
  auto sorted_values = [](const MetricGroup& m) {
    auto v = m.q_values();
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted_values(m1) != sorted_values(m2)) return std::nullopt;
  if (m1.gauss_sum() != m2.gauss_sum()) return std::nullopt;
  std::vector<int> orders2(n);
  for (int y = 0; y < n; ++y) orders2[y] = m2.element_order(y);

  const auto& inv = m1.invariants();
  const int r = static_cast<int>(inv.size());
  std::vector<int> gens(r);
  for (int i = 0; i < r; ++i) {
    std::vector<std::int64_t> e(r, 0);
    e[i] = 1;
    gens[i] = m1.index(e);
  }
  std::vector<int> img(r, -1);
  std::vector<int> phi;
  auto build = [&]() -> bool {
    phi.assign(n, 0);
    std::vector<char> hit(n, 0);
    for (int x = 0; x < n; ++x) {
      const auto c = m1.coords(x);
      int y = 0;
      for (int i = 0; i < r; ++i) y = m2.add(y, m2.mul(img[i], c[i]));
      if (hit[y] || m2.q(y) != m1.q(x)) return false;
      hit[y] = 1;
      phi[x] = y;
    }
    return true;
  };
  std::function<bool(int)> search = [&](int i) {
    if (i == r) return build();
    for (int y = 0; y < n; ++y) {
      if (orders2[y] != inv[i] || m2.q(y) != m1.q(gens[i])) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = m2.b(y, img[j]) == m1.b(gens[i], gens[j]);
      if (!ok) continue;
      img[i] = y;
      if (search(i + 1)) return true;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return phi;
}

ModularData pointed_modular_data(const MetricGroup& m) {
  if (!m.is_nondegenerate()) throw Degenerate("bilinear form has a nontrivial radical");
  ModularData md;
  const int n = m.size();
  for (int x = 0; x < n; ++x) {
    std::string label = "(";
    const auto c = m.coords(x);
    for (std::size_t i = 0; i < c.size(); ++i) label += (i ? "," : "") + std::to_string(c[i]);
    md.labels.push_back(label + ")");
    md.dims_exact.push_back(Cyclotomic::integer(1));
    md.twists.push_back(m.q(x));
  }
  md.s_exact.assign(n, std::vector<Cyclotomic>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) md.s_exact[x][y] = Cyclotomic::root_of_unity(-m.b(x, y));
  md.refresh_numeric();
  return md;
}

nlohmann::json metric_group_to_json(const MetricGroup& m) {
  std::vector<std::string> q;
  for (const auto& v : m.q_values()) q.push_back(v.to_string());
  return {{"invariants", m.invariants()}, {"q_on_generators_and_sums", q}};
}

MetricGroup metric_group_from_json(const nlohmann::json& j) {
  try {
    std::vector<UnitScalar> q;
    for (const auto& v : j.at("q_on_generators_and_sums")) q.push_back(UnitScalar::parse(v.get<std::string>()));
    return MetricGroup(j.at("invariants").get<std::vector<std::int64_t>>(), std::move(q));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("metric group json: ") + e.what());
  }
}

}  // namespace twistlab
