#include "twistlab/grp.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>

#include "twistlab/errors.hpp"
#include "twistlab/zlin.hpp"

namespace twistlab {

// ---------------------------------------------------------------- FiniteGroup

GroupPtr FiniteGroup::from_multiplication_table(const std::vector<std::vector<int>>& table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroup("empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw NotAGroup("multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw NotAGroup("multiplication table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) throw NotAGroup("element 0 is not an identity (fails at " + std::to_string(a) + ")");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->name_ = std::move(name);
  g->mul_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->mul_[static_cast<std::size_t>(a) * n + b] = table[a][b];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = table[a][b];
      for (int c = 0; c < n; ++c)
        if (table[ab][c] != table[a][table[b][c]])
          throw NotAGroup("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(c) + ")");
    }
  g->inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) {
        g->inv_[a] = b;
        break;
      }
    if (g->inv_[a] < 0) throw NotAGroup("element " + std::to_string(a) + " has no inverse");
  }
  g->ord_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = table[x][a];
      ++k;
    }
    g->ord_[a] = k;
    g->exponent_ = static_cast<int>(lcm64(g->exponent_, k));
  }
  for (int a = 0; a < n && g->abelian_; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] != table[b][a]) {
        g->abelian_ = false;
        break;
      }
  g->class_of_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (g->class_of_[a] >= 0) continue;
    ConjugacyClass cls{a, {}};
    for (int x = 0; x < n; ++x) cls.elements.push_back(g->conj(a, x));
    std::sort(cls.elements.begin(), cls.elements.end());
    cls.elements.erase(std::unique(cls.elements.begin(), cls.elements.end()), cls.elements.end());
    for (int e : cls.elements) g->class_of_[e] = static_cast<int>(g->classes_.size());
    g->classes_.push_back(std::move(cls));
  }
  return g;
}

Element FiniteGroup::pow(Element g, std::int64_t k) const {
  k = mod64(k, ord_[g]);
  Element result = 0, base = g;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> elements) : parent_(std::move(parent)) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  const int n = parent_->order();
  if (elements.empty() || elements[0] != 0) throw InvalidParameter("subgroup must contain the identity");
  position_.assign(n, -1);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 0 || elements[i] >= n) throw InvalidParameter("subgroup element out of range");
    position_[elements[i]] = static_cast<int>(i);
  }
  const int m = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = position_[parent_->mul(elements[i], elements[j])];
      if (p < 0) throw InvalidParameter("subset is not closed under multiplication");
      table[i][j] = p;
    }
  elements_ = std::move(elements);
  group_ = FiniteGroup::from_multiplication_table(table, parent_->name().empty() ? "" : parent_->name() + "_sub");
}

Subgroup Subgroup::generated_by(const GroupPtr& parent, const std::vector<Element>& generators) {
  std::vector<char> in(parent->order(), 0);
  std::vector<Element> elems{0};
  in[0] = 1;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (Element g : generators) {
      Element x = parent->mul(elems[k], g);
      if (!in[x]) {
        in[x] = 1;
        elems.push_back(x);
      }
    }
  return Subgroup(parent, std::move(elems));
}

Subgroup Subgroup::whole(const GroupPtr& parent) {
  std::vector<Element> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(parent, std::move(all));
}

Subgroup Subgroup::trivial(const GroupPtr& parent) { return Subgroup(parent, {0}); }

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (parent_ != other.parent_) return false;
  return std::all_of(elements_.begin(), elements_.end(), [&](Element g) { return other.contains(g); });
}

// ---------------------------------------------------------------- characters

LinearCharacter LinearCharacter::operator+(const LinearCharacter& o) const {
  LinearCharacter r{group, values};
  for (std::size_t i = 0; i < values.size(); ++i) r.values[i] += o.values[i];
  return r;
}

LinearCharacter LinearCharacter::operator-() const {
  LinearCharacter r{group, values};
  for (auto& v : r.values) v = -v;
  return r;
}

bool LinearCharacter::is_trivial() const {
  return std::all_of(values.begin(), values.end(), [](const UnitScalar& u) { return u.is_zero(); });
}

bool LinearCharacter::is_multiplicative() const {
  const int n = group->order();
  if (!values[0].is_zero()) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (values[group->mul(a, b)] != values[a] + values[b]) return false;
  return true;
}

int AbelianDecomposition::element_with(const std::vector<std::int64_t>& c) const {
  for (int x = 0; x < size(); ++x)
    if (coords[x] == c) return x;
  return -1;
}

AbelianDecomposition decompose_abelian(int n, const std::function<int(int, int)>& op) {
  AbelianDecomposition out;
  out.coords.assign(n, {});
  if (n == 1) return out;
  std::vector<Triplet> rel;
  int row = 0;
  for (int x = 1; x < n; ++x)
    for (int y = x; y < n; ++y) {
      int z = op(x, y);
      rel.push_back({row, x - 1, 1});
      rel.push_back({row, y - 1, 1});
      if (z != 0) rel.push_back({row, z - 1, -1});
      ++row;
    }
  IntMatrix r(row, n - 1, std::move(rel));
  SnfDecomposition snf = smith_normal_form(r);
  if (snf.rank() != n - 1) throw InvalidParameter("operation does not define a finite abelian group");
  auto power = [&](int x, std::int64_t k) {
    int result = 0, base = x;
    while (k > 0) {
      if (k & 1) result = op(result, base);
      base = op(base, base);
      k >>= 1;
    }
    return result;
  };
  for (const auto& p : snf.pivots()) {
    if (p.d == 1) continue;
    out.invariants.push_back(p.d);
    std::vector<std::int64_t> col(n - 1, 0);
    col[p.col] = 1;
    snf.apply_v_mod(col, p.d);
    out.coords[0].push_back(0);
    for (int x = 1; x < n; ++x) out.coords[x].push_back(col[x - 1]);
    std::vector<std::int64_t> h = snf.v_inverse_row_mod(p.col, n);
    int g = 0;
    for (int x = 1; x < n; ++x)
      if (h[x - 1] != 0) g = op(g, power(x, h[x - 1]));
    out.generators.push_back(g);
  }
  return out;
}

CharacterGroup::CharacterGroup(GroupPtr g) : group_(std::move(g)) {
  const int n = group_->order();
  Subgroup d = commutator_subgroup(group_);
  std::vector<Element> coset_rep(n);
  for (int x = 0; x < n; ++x) {
    Element best = n;
    for (Element k : d.elements()) best = std::min(best, group_->mul(x, k));
    coset_rep[x] = best;
  }
  std::vector<Element> reps;
  for (int x = 0; x < n; ++x)
    if (coset_rep[x] == x) reps.push_back(x);
  std::vector<int> rep_index(n, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);
  AbelianDecomposition dec = decompose_abelian(static_cast<int>(reps.size()), [&](int a, int b) {
    return rep_index[coset_rep[group_->mul(reps[a], reps[b])]];
  });
  invariants_ = dec.invariants;
  for (int gi : dec.generators) generators_.push_back(reps[gi]);
  element_coords_.resize(n);
  for (int x = 0; x < n; ++x) element_coords_[x] = dec.coords[rep_index[coset_rep[x]]];
}

int CharacterGroup::size() const {
  int s = 1;
  for (auto m : invariants_) s *= static_cast<int>(m);
  return s;
}

LinearCharacter CharacterGroup::character(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != invariants_.size()) throw InvalidParameter("character coordinate vector has wrong length");
  LinearCharacter chi{group_, std::vector<UnitScalar>(group_->order())};
  for (int x = 0; x < group_->order(); ++x) {
    UnitScalar v;
    for (std::size_t j = 0; j < invariants_.size(); ++j)
      v += UnitScalar(mod64(coords[j], invariants_[j]) * element_coords_[x][j], invariants_[j]);
    chi.values[x] = v;
  }
  return chi;
}

std::vector<std::int64_t> CharacterGroup::coordinates(const LinearCharacter& chi) const {
  std::vector<std::int64_t> k;
  for (std::size_t j = 0; j < invariants_.size(); ++j) {
    UnitScalar v = chi(generators_[j]);
    if ((v.num() * invariants_[j]) % v.den() != 0) throw NotACharacter("value order does not divide the invariant");
    k.push_back(v.num() * invariants_[j] / v.den());
  }
  if (!(character(k) == chi)) throw NotACharacter("values are not a linear character of " + group_->name());
  return k;
}

std::vector<std::vector<std::int64_t>> CharacterGroup::all_coordinates() const {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> k(invariants_.size(), 0);
  while (true) {
    out.push_back(k);
    int j = static_cast<int>(k.size()) - 1;
    while (j >= 0 && ++k[j] == invariants_[j]) k[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

std::vector<LinearCharacter> CharacterGroup::all() const {
  std::vector<LinearCharacter> out;
  for (const auto& k : all_coordinates()) out.push_back(character(k));
  return out;
}

std::vector<LinearCharacter> character_group(const GroupPtr& g) { return CharacterGroup(g).all(); }

// ---------------------------------------------------------------- named groups

GroupPtr cyclic(int n) {
  if (n < 1) throw InvalidParameter("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_multiplication_table(t, "Z" + std::to_string(n));
}

GroupPtr trivial_group() { return FiniteGroup::from_multiplication_table({{0}}, "trivial"); }

GroupPtr generalized_quaternion(int order) {
  if (order < 4 || order % 4 != 0) throw InvalidParameter("generalized quaternion order must be 4n with n >= 1");
  const int n = order / 4, m = 2 * n;
  // r^i s^j has index i + m*j
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      int i = a % m, j = a / m, k = b % m, l = b / m;
      int e = i + (j == 0 ? k : -k);
      int s = j + l;
      if (s == 2) {
        e += n;
        s = 0;
      }
      t[a][b] = static_cast<int>(mod64(e, m)) + m * s;
    }
  return FiniteGroup::from_multiplication_table(t, "Q" + std::to_string(order));
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
  const int a = g->order(), b = h->order();
  std::vector<std::vector<int>> t(a * b, std::vector<int>(a * b));
  for (int x = 0; x < a * b; ++x)
    for (int y = 0; y < a * b; ++y) t[x][y] = g->mul(x / b, y / b) * b + h->mul(x % b, y % b);
  return FiniteGroup::from_multiplication_table(t, g->name() + "x" + h->name());
}

GroupPtr from_permutation_generators(const std::vector<std::vector<int>>& perms, std::string name) {
  if (perms.empty()) return trivial_group();
  const std::size_t deg = perms[0].size();
  for (const auto& p : perms) {
    if (p.size() != deg) throw InvalidParameter("permutations act on sets of different sizes");
    std::vector<char> seen(deg, 0);
    for (int v : p) {
      if (v < 0 || static_cast<std::size_t>(v) >= deg || seen[v]) throw InvalidParameter("not a permutation");
      seen[v] = 1;
    }
  }
  constexpr std::size_t kMaxOrder = 2000;
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  // (p*q)(x) = q(p(x)): apply p first
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(deg);
    for (std::size_t x = 0; x < deg; ++x) r[x] = q[p[x]];
    return r;
  };
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& g : perms) {
      auto r = compose(elems[k], g);
      if (!index.count(r)) {
        if (elems.size() >= kMaxOrder) throw InvalidParameter("permutation group too large");
        index[r] = static_cast<int>(elems.size());
        elems.push_back(r);
      }
    }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup::from_multiplication_table(t, std::move(name));
}

GroupPtr sl2_3() {
  using M = std::array<int, 4>;  // row-major 2x2 over F_3
  std::vector<M> elems;
  for (int code = 0; code < 81; ++code) {
    M m{code % 3, code / 3 % 3, code / 9 % 3, code / 27};
    if (((m[0] * m[3] - m[1] * m[2]) % 3 + 3) % 3 == 1) elems.push_back(m);
  }
  const M id{1, 0, 0, 1};
  std::stable_partition(elems.begin(), elems.end(), [&](const M& m) { return m == id; });
  std::map<M, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const M& x = elems[a];
      const M& y = elems[b];
      M p{(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3, (x[2] * y[0] + x[3] * y[2]) % 3,
          (x[2] * y[1] + x[3] * y[3]) % 3};
      t[a][b] = index.at(p);
    }
  return FiniteGroup::from_multiplication_table(t, "SL2(3)");
}

// ---------------------------------------------------------------- structure

std::vector<FiniteGroup::ConjugacyClass> conjugacy_classes(const GroupPtr& g) { return g->conjugacy_classes(); }

Subgroup centralizer(const GroupPtr& g, Element x) {
  std::vector<Element> c;
  for (int y = 0; y < g->order(); ++y)
    if (g->commute(x, y)) c.push_back(y);
  return Subgroup(g, std::move(c));
}

Subgroup commutator_subgroup(const GroupPtr& g) {
  std::vector<Element> comms;
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b) comms.push_back(g->mul(g->mul(g->inv(a), g->inv(b)), g->mul(a, b)));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return Subgroup::generated_by(g, comms);
}

CenterInfo center_and_involutions(const GroupPtr& g) {
  std::vector<Element> z, inv;
  for (int a = 0; a < g->order(); ++a) {
    bool central = true;
    for (int b = 0; b < g->order() && central; ++b) central = g->commute(a, b);
    if (central) z.push_back(a);
    if (g->element_order(a) == 2) inv.push_back(a);
  }
  bool unique = inv.size() == 1;
  return CenterInfo{Subgroup(g, std::move(z)), std::move(inv), unique};
}

RightTransversal right_transversal(const Subgroup& h) {
  const GroupPtr& g = h.parent();
  RightTransversal t;
  t.rep_of.assign(g->order(), -1);
  for (int x = 0; x < g->order(); ++x) {
    if (t.rep_of[x] >= 0) continue;
    t.representatives.push_back(x);  // x is the minimal element of H x
    for (Element k : h.elements()) t.rep_of[g->mul(k, x)] = x;
  }
  return t;
}

std::vector<Element> extend_homomorphism(const GroupPtr& g, const std::vector<Element>& gens_g, const GroupPtr& h,
                                         const std::vector<Element>& gens_h) {
  if (gens_g.size() != gens_h.size()) throw InvalidParameter("generator lists differ in length");
  std::vector<Element> phi(g->order(), -1);
  phi[0] = 0;
  std::deque<Element> queue{0};
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens_g.size(); ++k) {
      Element y = g->mul(x, gens_g[k]);
      Element v = h->mul(phi[x], gens_h[k]);
      if (phi[y] < 0) {
        phi[y] = v;
        queue.push_back(y);
      } else if (phi[y] != v) {
        return {};
      }
    }
  }
  for (int a = 0; a < g->order(); ++a) {
    if (phi[a] < 0) return {};
    for (int b = 0; b < g->order(); ++b)
      if (phi[b] >= 0 && phi[g->mul(a, b)] != h->mul(phi[a], phi[b])) return {};
  }
  return phi;
}

nlohmann::json group_to_json(const FiniteGroup& g) {
  return nlohmann::json{{"order", g.order()}, {"mul", g.table()}, {"name", g.name()}};
}

GroupPtr group_from_json(const nlohmann::json& j) {
  try {
    auto table = j.at("mul").get<std::vector<std::vector<int>>>();
    int order = j.at("order").get<int>();
    if (order != static_cast<int>(table.size())) throw NotAGroup("order does not match table size");
    return FiniteGroup::from_multiplication_table(table, j.value("name", std::string()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad group JSON: ") + e.what());
  }
}

}  // namespace twistlab
