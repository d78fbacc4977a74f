#include "twistlab/tqd.hpp"

#include <algorithm>

#include "twistlab/errors.hpp"

namespace twistlab {

TwistedContext::TwistedContext(GroupPtr g, Cochain omega)
    : group_(std::move(g)), omega_(std::move(omega)), memo_(std::make_shared<Memo>()) {
  if (omega_.group() != group_ || omega_.arity() != 3) throw InvalidParameter("omega must be a 3-cochain on G");
  if (!is_cocycle(omega_)) throw NotACocycle("omega is not a 3-cocycle");
  memo_->theta.resize(group_->order());
  memo_->gamma.resize(group_->order());
}

UnitScalar TwistedContext::theta(Element g, Element x, Element y) const {
  const FiniteGroup& G = *group_;
  return omega_(g, x, y) + omega_(x, y, G.conj(g, G.mul(x, y))) - omega_(x, G.conj(g, x), y);
}

UnitScalar TwistedContext::gamma(Element g, Element x, Element y) const {
  const FiniteGroup& G = *group_;
  const Element yg = G.conj(y, g);
  return omega_(x, y, g) + omega_(g, G.conj(x, g), yg) - omega_(x, g, yg);
}

const Cochain& TwistedContext::theta_cochain(Element g) const {
  std::lock_guard<std::mutex> lock(memo_->mu);
  auto& slot = memo_->theta.at(g);
  if (!slot)
    slot = std::make_unique<Cochain>(Cochain::from_function(
        group_, 2, [&](std::span<const Element> t) { return theta(g, t[0], t[1]); }));
  return *slot;
}

const Cochain& TwistedContext::gamma_cochain(Element g) const {
  std::lock_guard<std::mutex> lock(memo_->mu);
  auto& slot = memo_->gamma.at(g);
  if (!slot)
    slot = std::make_unique<Cochain>(Cochain::from_function(
        group_, 2, [&](std::span<const Element> t) { return gamma(g, t[0], t[1]); }));
  return *slot;
}

Cochain TwistedContext::theta_on_centralizer(Element g, const Subgroup& c) const {
  if (c.parent() != group_) throw InvalidParameter("centralizer is not a subgroup of G");
  const auto& el = c.elements();
  return Cochain::from_function(c.as_group(), 2,
                                [&](std::span<const Element> t) { return theta(g, el[t[0]], el[t[1]]); });
}

Subgroup z_omega(const TwistedContext& ctx) {
  const auto info = center_and_involutions(ctx.group());
  std::vector<Element> keep;
  for (Element z : info.center.elements())
    if (find_coboundary_witness(ctx.gamma_cochain(z))) keep.push_back(z);
  return Subgroup(ctx.group(), keep);
}

std::vector<std::vector<LinearCharacter>> beta_tau(const TwistedContext& ctx, const Subgroup& a,
                                                   const std::vector<Cochain>& tau) {
  const GroupPtr& g = ctx.group();
  const auto& el = a.elements();
  if (tau.size() != el.size()) throw DimensionMismatch("one tau per element of A");
  std::vector<std::vector<LinearCharacter>> beta(el.size());
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = 0; j < el.size(); ++j) {
      const Cochain& txy = tau[a.position(g->mul(el[i], el[j]))];
      LinearCharacter chi{g, std::vector<UnitScalar>(g->order())};
      for (Element x = 0; x < g->order(); ++x)
        chi.values[x] = ctx.theta(x, el[i], el[j]) + tau[i](x) + tau[j](x) - txy(x);
      if (!chi.is_multiplicative())
        throw NotACharacter("beta_tau(" + std::to_string(el[i]) + "," + std::to_string(el[j]) + ") is not a character");
      beta[i].push_back(std::move(chi));
    }
  return beta;
}

std::vector<AdmissiblePair> admissible_pairs(const TwistedContext& ctx, const Subgroup& a) {
  const GroupPtr& g = ctx.group();
  if (a.parent() != g) throw InvalidParameter("A is not a subgroup of G");
  const auto& el = a.elements();
  for (Element x : el)
    for (Element y = 0; y < g->order(); ++y)
      if (!g->commute(x, y)) throw PreconditionError("A is not central");

  std::vector<Cochain> tau;
  for (Element x : el) {
    auto w = find_coboundary_witness(ctx.theta_cochain(x));
    if (!w) throw NotInZOmega("element " + std::to_string(x) + " is not in Z_omega(G)");
    tau.push_back(std::move(*w));
  }
  const auto beta = beta_tau(ctx, a, tau);

  const CharacterGroup chat(g);
  const auto& m = chat.invariants();
  const int na = a.order();
  // nu_coords[i][k]: coordinate k of nu(a_i)
  std::vector<std::vector<std::int64_t>> nu_coords(na, std::vector<std::int64_t>(m.size(), 0));
  if (na > 1) {
    auto snf = coboundary_snf(a.as_group(), 1);
    for (std::size_t k = 0; k < m.size(); ++k) {
      std::vector<std::int64_t> rhs;
      rhs.reserve(static_cast<std::size_t>(na - 1) * (na - 1));
      for (int i = 1; i < na; ++i)
        for (int j = 1; j < na; ++j) rhs.push_back(chat.coordinates(beta[i][j])[k]);
      auto sol = solve_mod(*snf, rhs, m[k]);
      if (!sol) throw ExtensionDoesNotSplit("delta nu = beta_tau has no solution");
      for (int i = 1; i < na; ++i) nu_coords[i][k] = (*sol)[i - 1];
    }
  }

  // Hom(A, G^) from images of a basis of A
  const auto dec = decompose_abelian(na, [&](int i, int j) { return a.position(g->mul(el[i], el[j])); });
  const auto all_chars = chat.all_coordinates();
  std::vector<std::vector<std::vector<std::int64_t>>> images(dec.invariants.size());
  for (std::size_t i = 0; i < dec.invariants.size(); ++i)
    for (const auto& c : all_chars) {
      bool ok = true;
      for (std::size_t k = 0; k < m.size() && ok; ++k) ok = (c[k] * dec.invariants[i]) % m[k] == 0;
      if (ok) images[i].push_back(c);
    }
  std::vector<std::vector<std::vector<std::int64_t>>> shifted;  // per hom: coords of nu(a_i)
  std::vector<std::size_t> pick(images.size(), 0);
  while (true) {
    auto nu = nu_coords;
    for (int p = 0; p < na; ++p)
      for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t k = 0; k < m.size(); ++k)
          nu[p][k] = mod64(nu[p][k] + dec.coords[p][i] * images[i][pick[i]][k], m[k]);
    shifted.push_back(std::move(nu));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == images[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  std::sort(shifted.begin(), shifted.end());

  std::vector<AdmissiblePair> out;
  for (const auto& nu : shifted) {
    AdmissiblePair p{a, tau, {}, "solved"};
    for (int i = 0; i < na; ++i) p.nu.push_back(chat.character(nu[i]));
    out.push_back(std::move(p));
  }
  return out;
}

bool is_admissible_pair(const TwistedContext& ctx, const AdmissiblePair& p) {
  const GroupPtr& g = ctx.group();
  const auto& el = p.a.elements();
  if (p.a.parent() != g || p.tau.size() != el.size() || p.nu.size() != el.size()) return false;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (p.tau[i].group() != g || p.tau[i].arity() != 1) return false;
    if (coboundary(p.tau[i]) != ctx.theta_cochain(el[i])) return false;
    if (!p.nu[i].is_multiplicative()) return false;
  }
  std::vector<std::vector<LinearCharacter>> beta;
  try {
    beta = beta_tau(ctx, p.a, p.tau);
  } catch (const NotACharacter&) {
    return false;
  }
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = 0; j < el.size(); ++j) {
      const auto& nxy = p.nu[p.a.position(g->mul(el[i], el[j]))];
      if (p.nu[i] + p.nu[j] + (-nxy) != beta[i][j]) return false;
    }
  return true;
}

InducedPair induce_pair(const TwistedContext& ctx, const AdmissiblePair& p, const Subgroup& h) {
  if (h.parent() != ctx.group()) throw InvalidParameter("H is not a subgroup of G");
  if (!p.a.is_subgroup_of(h)) throw PreconditionError("A is not contained in H");
  const GroupPtr& hg = h.as_group();
  TwistedContext hctx(hg, restrict(ctx.omega(), h));
  std::vector<Element> a_in_h;
  for (Element x : p.a.elements()) a_in_h.push_back(h.position(x));
  Subgroup ah(hg, a_in_h);
  AdmissiblePair out{ah, {}, {}, "induced-from:" + ctx.group()->name()};
  for (Element y : ah.elements()) {
    const int i = p.a.position(h.elements()[y]);
    out.tau.push_back(restrict(p.tau[i], h));
    LinearCharacter chi{hg, {}};
    for (Element x : h.elements()) chi.values.push_back(p.nu[i](x));
    out.nu.push_back(std::move(chi));
  }
  return {std::move(hctx), std::move(out)};
}

BraidingScalars braiding_scalars(const AdmissiblePair& p) {
  const auto& el = p.a.elements();
  const int n = p.a.order();
  const GroupPtr& g = p.a.parent();
  BraidingScalars bs;
  bs.d.assign(n, std::vector<UnitScalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bs.d[i][j] = p.tau[j](el[i]) - p.nu[j](el[i]);
  std::vector<UnitScalar> q(n);
  for (int i = 0; i < n; ++i) q[i] = bs.d[i][i];
  auto op = [&](int i, int j) { return p.a.position(g->mul(el[i], el[j])); };
  bs.q = MetricGroup::from_operation(n, op, q);
  bs.b.assign(n, std::vector<UnitScalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bs.b[i][j] = q[op(i, j)] - q[i] - q[j];
  return bs;
}

std::string to_string(BKind k) {
  switch (k) {
    case BKind::Modular: return "Modular";
    case BKind::SuperModular: return "SuperModular";
    case BKind::TannakianCenter: return "TannakianCenter";
    case BKind::PartiallyDegenerate: return "PartiallyDegenerate";
  }
  return "?";
}

BClassification classify(const AdmissiblePair& p) {
  const auto bs = braiding_scalars(p);
  BClassification c;
  for (int i = 0; i < p.a.order(); ++i) c.q_values.push_back(bs.d[i][i]);
  const bool all_zero = std::all_of(c.q_values.begin(), c.q_values.end(), [](const UnitScalar& u) { return u.is_zero(); });
  if (bs.q.is_nondegenerate())
    c.kind = BKind::Modular;
  else if (p.a.order() == 2 && c.q_values[1] == UnitScalar(1, 2))
    c.kind = BKind::SuperModular;
  else if (all_zero)
    c.kind = BKind::TannakianCenter;
  else
    c.kind = BKind::PartiallyDegenerate;
  return c;
}

int theta_class_order(const TwistedContext& ctx, Element g) {
  const Subgroup c = centralizer(ctx.group(), g);
  const Cochain theta = ctx.theta_on_centralizer(g, c);
  const std::int64_t bound = theta.denominator();
  for (std::int64_t n = 1; n < bound; ++n)
    if (find_coboundary_witness(theta * n)) return static_cast<int>(n);
  return static_cast<int>(bound);
}

int Gamma0::index_of(Element x, const std::vector<UnitScalar>& r) const {
  for (int u = 0; u < size(); ++u)
    if (base[u] == x && rho[u] == r) return u;
  throw NotFound("element is not in Gamma0");
}

int Gamma0::power(int u, std::int64_t k) const {
  std::int64_t o = 1;
  for (int r = u; r != 0; r = table[r][u]) ++o;
  k = mod64(k, o);
  int r = 0;
  for (std::int64_t i = 0; i < k; ++i) r = table[r][u];
  return r;
}

Gamma0 gamma0_pointed(const TwistedContext& ctx, const AdmissiblePair& p) {
  const GroupPtr& g = ctx.group();
  const int n = g->order();
  bool cyclic_group = g->is_abelian() && g->exponent() == n;
  if (!cyclic_group) throw PreconditionError("Gamma0 is only implemented for cyclic groups");
  const auto chars = character_group(g);
  Gamma0 out;
  std::vector<std::vector<UnitScalar>> rho0(n);
  for (Element x = 0; x < n; ++x) {
    const Cochain w = coboundary_witness(ctx.theta_cochain(x));
    rho0[x].resize(n);
    for (Element y = 0; y < n; ++y) rho0[x][y] = w(y);
  }
  for (Element x = 0; x < n; ++x)
    for (const auto& chi : chars) {
      std::vector<UnitScalar> r(n);
      for (Element y = 0; y < n; ++y) r[y] = rho0[x][y] + chi(y);
      out.base.push_back(x);
      out.rho.push_back(std::move(r));
    }
  const int size = out.size();
  out.table.assign(size, std::vector<int>(size));
  for (int u = 0; u < size; ++u)
    for (int v = 0; v < size; ++v) {
      const Element x = out.base[u], y = out.base[v];
      std::vector<UnitScalar> r(n);
      for (Element z = 0; z < n; ++z) r[z] = out.rho[u][z] + out.rho[v][z] + ctx.theta(z, x, y);
      out.table[u][v] = out.index_of(g->mul(x, y), r);
    }
  std::vector<UnitScalar> q(size);
  for (int u = 0; u < size; ++u) q[u] = out.rho[u][out.base[u]];
  auto op = [&](int u, int v) { return out.table[u][v]; };
  out.form = MetricGroup::from_operation(size, op, q);

  const auto& el = p.a.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    std::vector<UnitScalar> r(n);
    for (Element y = 0; y < n; ++y) r[y] = p.tau[i](y) - p.nu[i](y);
    out.currents.push_back(out.index_of(el[i], r));
  }
  for (int u = 0; u < size; ++u) {
    bool orth = true;
    for (int c : out.currents) orth = orth && (q[out.table[u][c]] - q[u] - q[c]).is_zero();
    if (orth) out.complement.push_back(u);
  }
  std::vector<int> pos(size, -1);
  for (std::size_t i = 0; i < out.complement.size(); ++i) pos[out.complement[i]] = static_cast<int>(i);
  std::vector<UnitScalar> qc;
  for (int u : out.complement) qc.push_back(q[u]);
  out.complement_form = MetricGroup::from_operation(
      static_cast<int>(out.complement.size()),
      [&](int i, int j) { return pos[out.table[out.complement[i]][out.complement[j]]]; }, qc);
  return out;
}

nlohmann::json admissible_pair_to_json(const AdmissiblePair& p) {
  nlohmann::json tau = nlohmann::json::array(), nu = nlohmann::json::array();
  for (const auto& t : p.tau) tau.push_back(cochain_to_json(t));
  for (const auto& chi : p.nu) {
    std::vector<std::string> v;
    for (const auto& x : chi.values) v.push_back(x.to_string());
    nu.push_back(v);
  }
  return {{"group", p.a.parent()->name()}, {"A", p.a.elements()}, {"tau", tau}, {"nu", nu}, {"provenance", p.provenance}};
}

AdmissiblePair admissible_pair_from_json(const nlohmann::json& j, const GroupPtr& g) {
  try {
    Subgroup a(g, j.at("A").get<std::vector<Element>>());
    AdmissiblePair p{a, {}, {}, j.value("provenance", std::string("solved"))};
    for (const auto& t : j.at("tau")) p.tau.push_back(cochain_from_json(t, g));
    for (const auto& v : j.at("nu")) {
      LinearCharacter chi{g, {}};
      for (const auto& x : v) chi.values.push_back(UnitScalar::parse(x.get<std::string>()));
      if (static_cast<int>(chi.values.size()) != g->order()) throw DimensionMismatch("character length");
      p.nu.push_back(std::move(chi));
    }
    if (p.tau.size() != a.elements().size() || p.nu.size() != a.elements().size())
      throw DimensionMismatch("pair needs one tau and one nu per element of A");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("admissible pair json: ") + e.what());
  }
}

}  // namespace twistlab
