#include "twistlab/coh.hpp"

#include <limits>
#include <map>
#include <mutex>

#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Calls f on every tuple in {1..n-1}^arity in storage order.
template <class F>
void for_each_nonidentity_tuple(int n, int arity, F&& f) {
  std::vector<Element> t(arity, 1);
  if (n == 1 && arity > 0) return;
  while (true) {
    f(std::span<const Element>(t));
    int k = arity - 1;
    while (k >= 0 && ++t[k] == n) t[k--] = 1;
    if (k < 0) return;
  }
}

// (delta c)(g_0, ..., g_n)
UnitScalar coboundary_at(const Cochain& c, std::span<const Element> g, std::vector<Element>& scratch) {
  const FiniteGroup& G = *c.group();
  const int n = c.arity();
  scratch.resize(n);
  UnitScalar v = c.at(g.subspan(1));
  for (int i = 1; i <= n; ++i) {
    int k = 0;
    for (int j = 0; j < i - 1; ++j) scratch[k++] = g[j];
    scratch[k++] = G.mul(g[i - 1], g[i]);
    for (int j = i + 1; j <= n; ++j) scratch[k++] = g[j];
    const UnitScalar t = c.at(scratch);
    v = (i % 2 == 0) ? v + t : v - t;
  }
  const UnitScalar last = c.at(g.subspan(0, n));
  return ((n + 1) % 2 == 0) ? v + last : v - last;
}

struct SnfCacheEntry {
  std::weak_ptr<const FiniteGroup> owner;
  std::map<int, std::shared_ptr<const SnfDecomposition>> by_degree;
};

std::mutex& snf_cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<const FiniteGroup*, SnfCacheEntry>& snf_cache() {
  static std::map<const FiniteGroup*, SnfCacheEntry> c;
  return c;
}

}  // namespace

Cochain::Cochain(GroupPtr g, int arity) : group_(std::move(g)), arity_(arity) {
  if (!group_) throw InvalidParameter("cochain needs a group");
  if (arity < 0 || arity > 4) throw InvalidParameter("cochain arity must be in 0..4");
  values_.assign(ipow(static_cast<std::size_t>(group_->order() - 1), arity), UnitScalar());
}

Cochain Cochain::from_function(GroupPtr g, int arity, const std::function<UnitScalar(std::span<const Element>)>& f) {
  Cochain c(std::move(g), arity);
  std::size_t i = 0;
  for_each_nonidentity_tuple(c.group_->order(), arity, [&](std::span<const Element> t) { c.values_[i++] = f(t); });
  return c;
}

Cochain Cochain::from_stored(GroupPtr g, int arity, std::vector<UnitScalar> values) {
  Cochain c(std::move(g), arity);
  if (values.size() != c.values_.size()) throw DimensionMismatch("stored cochain values have the wrong length");
  c.values_ = std::move(values);
  return c;
}

std::int64_t Cochain::storage_index(std::span<const Element> args) const {
  if (static_cast<int>(args.size()) != arity_) throw DimensionMismatch("wrong number of cochain arguments");
  const std::int64_t base = group_->order() - 1;
  std::int64_t idx = 0;
  for (Element a : args) {
    if (a < 0 || a >= group_->order()) throw InvalidParameter("element out of range");
    if (a == 0) return -1;
    idx = idx * base + (a - 1);
  }
  return idx;
}

UnitScalar Cochain::at(std::span<const Element> args) const {
  const std::int64_t i = storage_index(args);
  return i < 0 ? UnitScalar() : values_[static_cast<std::size_t>(i)];
}

void Cochain::set(std::span<const Element> args, const UnitScalar& v) {
  const std::int64_t i = storage_index(args);
  if (i < 0) {
    if (!v.is_zero()) throw InvalidParameter("normalized cochains vanish when an argument is the identity");
    return;
  }
  values_[static_cast<std::size_t>(i)] = v;
}

std::int64_t Cochain::denominator() const {
  std::int64_t d = 1;
  for (const auto& v : values_) d = lcm64(d, v.den());
  return d;
}

bool Cochain::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

void Cochain::check_compatible(const Cochain& o) const {
  if (group_ != o.group_ || arity_ != o.arity_) throw InvalidParameter("cochains live on different groups or arities");
}

Cochain Cochain::operator+(const Cochain& o) const {
  check_compatible(o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] += o.values_[i];
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
  check_compatible(o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] -= o.values_[i];
  return r;
}

Cochain Cochain::operator-() const {
  Cochain r = *this;
  for (auto& v : r.values_) v = -v;
  return r;
}

Cochain Cochain::operator*(std::int64_t k) const {
  Cochain r = *this;
  for (auto& v : r.values_) v = v * k;
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  return group_ == o.group_ && arity_ == o.arity_ && values_ == o.values_;
}

IntMatrix coboundary_matrix(const GroupPtr& g, int n) {
  if (n < 0 || n > 3) throw InvalidParameter("coboundary degree must be in 0..3");
  const int order = g->order();
  const std::size_t rows = ipow(static_cast<std::size_t>(order - 1), n + 1);
  const std::size_t cols = ipow(static_cast<std::size_t>(order - 1), n);
  if (rows > static_cast<std::size_t>(std::numeric_limits<int>::max()))
    throw ResourceLimit("coboundary matrix too large");
  const std::int64_t base = order - 1;
  std::vector<Triplet> entries;
  entries.reserve(rows * static_cast<std::size_t>(n + 2));
  // column index of a tuple, or -1 if it contains the identity
  auto col_of = [&](auto&& get, int len) -> std::int64_t {
    std::int64_t idx = 0;
    for (int i = 0; i < len; ++i) {
      const Element a = get(i);
      if (a == 0) return -1;
      idx = idx * base + (a - 1);
    }
    return idx;
  };
  int row = 0;
  for_each_nonidentity_tuple(order, n + 1, [&](std::span<const Element> t) {
    auto push = [&](std::int64_t col, std::int64_t v) {
      if (col >= 0) entries.push_back({row, static_cast<int>(col), v});
    };
    push(col_of([&](int i) { return t[i + 1]; }, n), 1);
    for (int i = 1; i <= n; ++i) {
      const Element merged = g->mul(t[i - 1], t[i]);
      auto get = [&](int k) { return k < i - 1 ? t[k] : (k == i - 1 ? merged : t[k + 1]); };
      push(col_of(get, n), i % 2 == 0 ? 1 : -1);
    }
    push(col_of([&](int i) { return t[i]; }, n), (n + 1) % 2 == 0 ? 1 : -1);
    ++row;
  });
  return IntMatrix(static_cast<int>(rows), static_cast<int>(cols), std::move(entries));
}

std::shared_ptr<const SnfDecomposition> coboundary_snf(const GroupPtr& g, int n) {
  {
    std::lock_guard<std::mutex> lock(snf_cache_mutex());
    auto& cache = snf_cache();
    for (auto it = cache.begin(); it != cache.end();) it = it->second.owner.expired() ? cache.erase(it) : std::next(it);
    auto it = cache.find(g.get());
    if (it != cache.end()) {
      auto d = it->second.by_degree.find(n);
      if (d != it->second.by_degree.end()) return d->second;
    }
  }
  auto snf = std::make_shared<const SnfDecomposition>(smith_normal_form(coboundary_matrix(g, n)));
  std::lock_guard<std::mutex> lock(snf_cache_mutex());
  auto& entry = snf_cache()[g.get()];
  entry.owner = g;
  return entry.by_degree.emplace(n, snf).first->second;
}

Cochain coboundary(const Cochain& c) {
  if (c.arity() > 3) throw InvalidParameter("coboundary of an arity-4 cochain is not supported");
  std::vector<Element> scratch;
  return Cochain::from_function(c.group(), c.arity() + 1,
                                [&](std::span<const Element> t) { return coboundary_at(c, t, scratch); });
}

bool is_cocycle(const Cochain& c) {
  if (c.arity() > 3) throw InvalidParameter("cocycle test needs arity at most 3");
  std::vector<Element> scratch;
  bool ok = true;
  const int n = c.group()->order();
  // streamed: the arity-(n+1) coboundary is never materialized
  std::vector<Element> t(c.arity() + 1, 1);
  if (n == 1) return true;
  while (ok) {
    if (!coboundary_at(c, t, scratch).is_zero()) ok = false;
    int k = c.arity();
    while (k >= 0 && ++t[k] == n) t[k--] = 1;
    if (k < 0) break;
  }
  return ok;
}

std::optional<Cochain> find_coboundary_witness(const Cochain& z) {
  if (z.arity() < 1) throw InvalidParameter("a coboundary has arity at least 1");
  if (z.arity() == 1) {
    // delta of a constant is zero under the trivial action
    if (z.is_zero()) return Cochain(z.group(), 0);
    return std::nullopt;
  }
  auto snf = coboundary_snf(z.group(), z.arity() - 1);
  auto res = solve_divisible(*snf, z.stored_values());
  if (!res) return std::nullopt;
  return Cochain::from_stored(z.group(), z.arity() - 1, std::move(*res.witness));
}

std::int64_t class_order(const Cochain& z) {
  if (!is_cocycle(z)) throw NotACocycle("class_order needs a cocycle");
  const std::int64_t n = z.group()->order();
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0 && find_coboundary_witness(z * d)) return d;
  throw NotACocycle("cocycle not killed by |G|");
}

Cochain coboundary_witness(const Cochain& z) {
  auto w = find_coboundary_witness(z);
  if (!w) throw NotCoboundary("cochain is not a coboundary");
  return *w;
}

CohomologyGroup::CohomologyGroup(GroupPtr g, int degree, std::shared_ptr<const SnfDecomposition> snf)
    : group_(std::move(g)), degree_(degree), snf_(std::move(snf)) {
  for (const auto& p : snf_->pivots())
    if (p.d > 1) {
      torsion_pivots_.push_back(p);
      invariants_.push_back(p.d);
      std::vector<std::int64_t> y(snf_->cols(), 0);
      y[p.col] = 1;
      snf_->apply_v_mod(y, p.d);
      std::vector<UnitScalar> vals;
      vals.reserve(y.size());
      for (auto v : y) vals.emplace_back(v, p.d);
      generators_.push_back(Cochain::from_stored(group_, degree_, std::move(vals)));
    }
}

std::int64_t CohomologyGroup::order() const {
  std::int64_t o = 1;
  for (auto d : invariants_) o *= d;
  return o;
}

std::vector<std::int64_t> CohomologyGroup::decompose(const Cochain& z) const {
  if (z.group() != group_ || z.arity() != degree_) throw InvalidParameter("cochain does not match this cohomology group");
  QZVector v = QZVector::from_units(z.stored_values());
  const std::int64_t m = v.denominator;
  snf_->apply_v_inverse_mod(v.numerators, m);
  for (const auto& p : snf_->pivots())
    if (p.d == 1 && v.numerators[p.col] != 0) throw NotACocycle("cochain is not a cocycle");
  std::vector<std::int64_t> e;
  e.reserve(torsion_pivots_.size());
  for (const auto& p : torsion_pivots_) {
    const __int128 t = static_cast<__int128>(p.d) * v.numerators[p.col];
    if (t % m != 0) throw NotACocycle("cochain is not a cocycle");
    e.push_back(mod64(static_cast<std::int64_t>(t / m), p.d));
  }
  return e;
}

Cochain CohomologyGroup::element(const std::vector<std::int64_t>& exponents) const {
  if (exponents.size() != generators_.size()) throw DimensionMismatch("exponent vector length");
  Cochain c(group_, degree_);
  for (std::size_t i = 0; i < exponents.size(); ++i) c += generators_[i] * exponents[i];
  return c;
}

CohomologyGroup cohomology(const GroupPtr& g, int n, int h3_max_order) {
  if (n < 1 || n > 3) throw InvalidParameter("cohomology degree must be in 1..3");
  if (n == 3 && g->order() > h3_max_order)
    throw ResourceLimit("degree-3 cohomology is capped at |G| <= " + std::to_string(h3_max_order));
  return CohomologyGroup(g, n, coboundary_snf(g, n));
}

Cochain restrict(const Cochain& c, const Subgroup& h) {
  if (h.parent() != c.group()) throw InvalidParameter("subgroup is not in the cochain's group");
  std::vector<Element> mapped(c.arity());
  return Cochain::from_function(h.as_group(), c.arity(), [&](std::span<const Element> t) {
    for (int i = 0; i < c.arity(); ++i) mapped[i] = h.elements()[t[i]];
    return c.at(mapped);
  });
}

Cochain transfer(const Cochain& c, const Subgroup& h) {
  if (c.group() != h.as_group()) throw InvalidParameter("cochain must live on the subgroup");
  const GroupPtr& g = h.parent();
  const RightTransversal tr = right_transversal(h);
  std::vector<Element> args(c.arity());
  return Cochain::from_function(g, c.arity(), [&](std::span<const Element> t) {
    UnitScalar sum;
    for (Element rep : tr.representatives) {
      Element cur = rep;
      for (int i = 0; i < c.arity(); ++i) {
        const Element x = g->mul(cur, t[i]);
        const Element next = tr.rep_of[x];
        args[i] = h.position(g->mul(x, g->inv(next)));
        cur = next;
      }
      sum += c.at(args);
    }
    return sum;
  });
}

Cochain inflate(const Cochain& c, const GroupPtr& g, const std::vector<Element>& projection) {
  const GroupPtr& q = c.group();
  if (static_cast<int>(projection.size()) != g->order()) throw NotHomomorphism("projection has the wrong length");
  for (Element p : projection)
    if (p < 0 || p >= q->order()) throw NotHomomorphism("projection image out of range");
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b)
      if (projection[g->mul(a, b)] != q->mul(projection[a], projection[b]))
        throw NotHomomorphism("projection is not a homomorphism");
  std::vector<Element> mapped(c.arity());
  return Cochain::from_function(g, c.arity(), [&](std::span<const Element> t) {
    for (int i = 0; i < c.arity(); ++i) mapped[i] = projection[t[i]];
    return c.at(mapped);
  });
}

Cochain cyclic_cocycle(int n, std::int64_t s) { return cyclic_cocycle(cyclic(n), s); }

Cochain cyclic_cocycle(const GroupPtr& g, std::int64_t s) {
  const int n = g->order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mul(a, b) != (a + b) % n) throw InvalidParameter("group is not the standard cyclic group");
  return Cochain::from_function(g, 3, [&](std::span<const Element> t) {
    return t[1] + t[2] >= n ? UnitScalar(mod64(s, n) * t[0], n) : UnitScalar();
  });
}

bool two_generator_test(const GroupPtr& g, const Cochain& omega) {
  if (omega.group() != g || omega.arity() != 3) throw InvalidParameter("expected a 3-cochain on the group");
  const auto info = center_and_involutions(g);
  if (!info.unique_involution) throw PreconditionError("group does not have a unique involution");
  const Element a = info.involutions.front();
  return omega(a, a, a) == UnitScalar(1, 2);
}

Cochain random_cochain(const GroupPtr& g, int arity, std::mt19937_64& rng, int max_denominator) {
  std::uniform_int_distribution<int> den(1, max_denominator);
  return Cochain::from_function(g, arity, [&](std::span<const Element>) {
    const int d = den(rng);
    return UnitScalar(std::uniform_int_distribution<int>(0, d - 1)(rng), d);
  });
}

nlohmann::json cochain_to_json(const Cochain& c) {
  const std::int64_t m = c.denominator();
  const int n = c.group()->order();
  std::vector<std::int64_t> nums;
  nums.reserve(ipow(n, c.arity()));
  std::vector<Element> t(c.arity(), 0);
  while (true) {
    const UnitScalar v = c.at(t);
    nums.push_back(v.num() * (m / v.den()));
    int k = c.arity() - 1;
    while (k >= 0 && ++t[k] == n) t[k--] = 0;
    if (k < 0) break;
  }
  return {{"group", c.group()->name()}, {"arity", c.arity()}, {"denominator", m}, {"numerators", nums}};
}

Cochain cochain_from_json(const nlohmann::json& j, const GroupPtr& g) {
  int arity;
  std::int64_t m;
  std::vector<std::int64_t> nums;
  try {
    arity = j.at("arity").get<int>();
    m = j.at("denominator").get<std::int64_t>();
    nums = j.at("numerators").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cochain json: ") + e.what());
  }
  if (m < 1) throw ParseError("cochain json: denominator must be positive");
  Cochain c(g, arity);
  const int n = g->order();
  if (nums.size() != ipow(n, arity)) throw DimensionMismatch("cochain json: numerator count does not match |G|^arity");
  std::vector<Element> t(arity, 0);
  std::size_t i = 0;
  while (true) {
    c.set(t, UnitScalar(nums[i++], m));
    int k = arity - 1;
    while (k >= 0 && ++t[k] == n) t[k--] = 0;
    if (k < 0) break;
  }
  return c;
}

}  // namespace twistlab
