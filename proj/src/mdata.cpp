#include "twistlab/mdata.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

constexpr double kTol = 1e-6;
constexpr int kSplitAttempts = 8;

ComplexApprox phase(const UnitScalar& u) { return u.evaluate(); }

bool close(const ComplexApprox& a, const ComplexApprox& b, double tol = kTol) { return std::abs(a - b) < tol; }

bool same_values(const std::vector<ComplexApprox>& a, const std::vector<ComplexApprox>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!close(a[i], b[i])) return false;
  return true;
}

// Lexicographic on rounded (re, im) so the order does not depend on the seed.
bool values_less(const std::vector<ComplexApprox>& a, const std::vector<ComplexApprox>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = std::round(a[i].real() * 1e6), br = std::round(b[i].real() * 1e6);
    if (ar != br) return ar < br;
    const double ai = std::round(a[i].imag() * 1e6), bi = std::round(b[i].imag() * 1e6);
    if (ai != bi) return ai < bi;
  }
  return false;
}

std::optional<std::vector<TwistedCharacter>> try_split(const Cochain& theta, std::uint64_t seed) {
  const GroupPtr& c = theta.group();
  const int n = c->order();
  std::vector<ComplexApprox> e(static_cast<std::size_t>(n) * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) e[static_cast<std::size_t>(x) * n + y] = phase(theta(x, y));
  auto ph = [&](Element x, Element y) { return e[static_cast<std::size_t>(x) * n + y]; };

  // sum_x c_x R(x) with R(x) e_y = e(theta(y,x)) e_{yx} commutes with the left action
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (Element x = 0; x < n; ++x) {
    const ComplexApprox cx(normal(rng), normal(rng));
    for (Element y = 0; y < n; ++y) a(c->mul(y, x), y) += cx * ph(y, x);
  }
  const Eigen::MatrixXcd h = a + a.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const auto& ev = solver.eigenvalues();
  const auto& vec = solver.eigenvectors();
  const double scale = 1.0 + ev.cwiseAbs().maxCoeff();

  std::vector<TwistedCharacter> found;
  std::vector<int> seen;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && ev(end) - ev(end - 1) < 1e-7 * scale) ++end;
    const int k = end - start;
    TwistedCharacter chi;
    chi.values.assign(n, ComplexApprox());
    for (Element x = 0; x < n; ++x) {
      ComplexApprox t;
      for (int col = start; col < end; ++col)
        for (Element y = 0; y < n; ++y) t += std::conj(vec(c->mul(x, y), col)) * ph(x, y) * vec(y, col);
      chi.values[x] = t;
    }
    const double deg = chi.values[0].real();
    chi.degree = static_cast<int>(std::lround(deg));
    if (chi.degree != k || std::abs(deg - k) > kTol) return std::nullopt;
    double norm = 0.0;
    for (const auto& v : chi.values) norm += std::norm(v);
    if (std::abs(norm / n - 1.0) > kTol) return std::nullopt;
    auto it = std::find_if(found.begin(), found.end(),
                           [&](const TwistedCharacter& f) { return same_values(f.values, chi.values); });
    if (it == found.end()) {
      found.push_back(std::move(chi));
      seen.push_back(1);
    } else {
      ++seen[it - found.begin()];
    }
    start = end;
  }
  int total = 0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (seen[i] != found[i].degree) return std::nullopt;
    total += found[i].degree * found[i].degree;
  }
  if (total != n) return std::nullopt;
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = i + 1; j < found.size(); ++j)
      if (std::abs(twisted_inner_product(found[i], found[j])) > kTol) return std::nullopt;
  std::sort(found.begin(), found.end(), [](const TwistedCharacter& l, const TwistedCharacter& r) {
    if (l.degree != r.degree) return l.degree < r.degree;
    return values_less(l.values, r.values);
  });
  return found;
}

}  // namespace

ComplexApprox twisted_inner_product(const TwistedCharacter& chi, const TwistedCharacter& psi) {
  if (chi.values.size() != psi.values.size()) throw DimensionMismatch("characters on different groups");
  ComplexApprox s;
  for (std::size_t i = 0; i < chi.values.size(); ++i) s += chi.values[i] * std::conj(psi.values[i]);
  return s / static_cast<double>(chi.values.size());
}

std::vector<TwistedCharacter> twisted_characters(const Cochain& theta, std::uint64_t seed) {
  if (theta.arity() != 2 || !is_cocycle(theta)) throw NotACocycle("twisted characters need a 2-cocycle");
  for (int attempt = 0; attempt < kSplitAttempts; ++attempt)
    if (auto r = try_split(theta, seed + 0x9e3779b97f4a7c15ULL * attempt)) return *r;
  throw NumericalFailure("twisted regular representation did not split cleanly");
}

std::vector<SimpleObject> simples(const TwistedContext& ctx, std::uint64_t seed) {
  const GroupPtr& g = ctx.group();
  const auto& classes = g->conjugacy_classes();
  std::vector<SimpleObject> out;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const Element a = classes[ci].representative;
    Subgroup c = centralizer(g, a);
    const auto chars = twisted_characters(ctx.theta_on_centralizer(a, c), seed + 1000003ULL * ci);
    // pi(a)^o = e(sum_k theta_a(a^k, a)), so pi(a) = e((s + j)/o) for an integer j
    const int o = g->element_order(a);
    UnitScalar s;
    for (int k = 1; k < o; ++k) s = s + ctx.theta(a, g->pow(a, k), a);
    for (std::size_t xi = 0; xi < chars.size(); ++xi) {
      const auto& chi = chars[xi];
      const ComplexApprox lambda = chi.values[c.position(a)] / static_cast<double>(chi.degree);
      if (std::abs(std::abs(lambda) - 1.0) > kTol) throw NotAScalar("pi(a) is not a scalar");
      double t = std::arg(lambda) / (2 * M_PI);
      const double shift = o * t - s.angle();
      const std::int64_t j = std::llround(shift);
      if (std::abs(shift - static_cast<double>(j)) > 1e-4) throw NotAScalar("twist is not an o-th root of e(s)");
      SimpleObject so{a, static_cast<int>(ci), static_cast<int>(xi), c, chi, 0, {}, {}};
      so.dim = static_cast<std::int64_t>(classes[ci].elements.size()) * chi.degree;
      so.twist = UnitScalar(s.num() + j * s.den(), s.den() * o);
      if (!close(so.twist.evaluate(), lambda, 1e-5)) throw NotAScalar("twist snapping failed");
      so.label = "[" + std::to_string(a) + ":" + std::to_string(xi) + "]";
      out.push_back(std::move(so));
    }
  }
  auto is_unit = [](const SimpleObject& s) {
    if (s.a != 0) return false;
    for (const auto& v : s.chi.values)
      if (!close(v, 1.0)) return false;
    return true;
  };
  std::stable_sort(out.begin(), out.end(), [&](const SimpleObject& l, const SimpleObject& r) {
    const bool ul = is_unit(l), ur = is_unit(r);
    if (ul != ur) return ul;
    if (l.dim != r.dim) return l.dim < r.dim;
    if (l.twist != r.twist) return l.twist < r.twist;
    if (l.a != r.a) return l.a < r.a;
    return l.char_index < r.char_index;
  });
  std::int64_t total = 0;
  for (const auto& so : out) total += so.dim * so.dim;
  if (total != static_cast<std::int64_t>(g->order()) * g->order())
    throw NumericalFailure("sum of d^2 differs from |G|^2");
  return out;
}

DoubleCharacterTable double_characters(const TwistedContext& ctx, const std::vector<SimpleObject>& s) {
  const GroupPtr& g = ctx.group();
  const int n = g->order();
  DoubleCharacterTable t;
  t.group = g;
  for (Element h = 0; h < n; ++h) t.centralizers.push_back(centralizer(g, h));
  t.values.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& so = s[i];
    t.values[i].resize(n);
    for (Element h = 0; h < n; ++h) {
      if (g->class_index(h) != so.class_index) continue;
      // t a t^{-1} = h
      Element tr = 0;
      while (g->conj(so.a, g->inv(tr)) != h) ++tr;
      const auto& ch = t.centralizers[h];
      auto& row = t.values[i][h];
      row.resize(ch.order());
      for (int xi = 0; xi < ch.order(); ++xi) {
        const Element x = ch.elements()[xi];
        const Element c = g->mul(g->mul(g->inv(tr), x), tr);
        row[xi] = phase(ctx.theta(h, x, tr) - ctx.theta(h, tr, c)) * so.chi.values[so.centralizer.position(c)];
      }
    }
  }
  return t;
}

FusionTensor fusion_from_characters(const TwistedContext& ctx, const DoubleCharacterTable& chars) {
  const GroupPtr& g = chars.group;
  const int n = g->order();
  const int r = static_cast<int>(chars.values.size());
  std::vector<std::vector<Element>> support(r);
  for (int i = 0; i < r; ++i)
    for (Element h = 0; h < n; ++h)
      if (!chars.values[i][h].empty()) support[i].push_back(h);

  FusionTensor f;
  f.rank = r;
  f.n.assign(static_cast<std::size_t>(r) * r * r, 0);
  std::vector<std::vector<ComplexApprox>> prod(n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      for (Element x = 0; x < n; ++x) prod[x].assign(chars.centralizers[x].order(), ComplexApprox());
      std::vector<char> touched(n, 0);
      for (Element h : support[i]) {
        const auto& ch = chars.centralizers[h];
        for (Element k : support[j]) {
          const Element gk = g->mul(h, k);
          const auto& cg = chars.centralizers[gk];
          for (int xi = 0; xi < ch.order(); ++xi) {
            const Element x = ch.elements()[xi];
            if (!g->commute(x, k)) continue;
            const int pk = chars.centralizers[k].position(x);
            prod[gk][cg.position(x)] += phase(ctx.gamma(x, h, k)) * chars.values[i][h][xi] * chars.values[j][k][pk];
            touched[gk] = 1;
          }
        }
      }
      for (int k = 0; k < r; ++k) {
        ComplexApprox s;
        for (Element h : support[k]) {
          if (!touched[h]) continue;
          for (std::size_t xi = 0; xi < prod[h].size(); ++xi) s += prod[h][xi] * std::conj(chars.values[k][h][xi]);
        }
        s /= static_cast<double>(n);
        const std::int64_t v = std::llround(s.real());
        if (std::abs(s - static_cast<double>(v)) > kTol || v < 0)
          throw NotIntegral("fusion coefficient " + std::to_string(s.real()) + "+" + std::to_string(s.imag()) + "i");
        f.at(i, j, k) = v;
      }
    }
  return f;
}

DoubleData compute_double(const TwistedContext& ctx, std::uint64_t seed) {
  DoubleData dd{ctx, seed, simples(ctx, seed), {}, {}, {}};
  dd.characters = double_characters(ctx, dd.simples);
  dd.fusion = fusion_from_characters(ctx, dd.characters);
  auto& md = dd.md;
  for (const auto& s : dd.simples) {
    md.labels.push_back(s.label);
    md.dims_exact.push_back(Cyclotomic::integer(s.dim));
    md.twists.push_back(s.twist);
  }
  md.s_exact = s_from_balancing(dd.fusion, md.dims_exact, md.twists);
  md.refresh_numeric();
  return dd;
}

std::vector<int> identify_simple_currents(const DoubleData& dd, const AdmissiblePair& p) {
  const GroupPtr& g = dd.ctx.group();
  std::vector<int> out;
  for (std::size_t i = 0; i < p.a.elements().size(); ++i) {
    const Element a = p.a.elements()[i];
    int found = -1;
    for (std::size_t s = 0; s < dd.simples.size() && found < 0; ++s) {
      const auto& so = dd.simples[s];
      if (so.a != a || so.dim != 1) continue;
      bool match = true;
      for (Element x = 0; x < g->order() && match; ++x)
        match = close(so.chi.values[so.centralizer.position(x)], phase(p.tau[i](x) - p.nu[i](x)));
      if (match) found = static_cast<int>(s);
    }
    if (found < 0) throw NotFound("no simple current for element " + std::to_string(a));
    out.push_back(found);
  }
  return out;
}

RestrictedData mueger_restrict(const DoubleData& dd, const std::vector<int>& currents) {
  RestrictedData r;
  r.currents = currents;
  const auto& md = dd.md;
  std::int64_t total = 0;
  for (int j = 0; j < md.rank(); ++j) {
    bool keep = true;
    for (int c : currents) keep = keep && md.s_exact[c][j] == md.dims_exact[j];
    if (!keep) continue;
    r.kept.push_back(j);
    total += dd.simples[j].dim * dd.simples[j].dim;
  }
  const std::int64_t n = dd.ctx.group()->order();
  if (currents.empty() || total * static_cast<std::int64_t>(currents.size()) != n * n)
    throw DimensionMismatch("restricted dimensions do not sum to |G|^2/|A|");
  r.md = md.sub(r.kept);
  r.fusion = restrict_fusion(dd.fusion, r.kept);
  return r;
}

RestrictedData restrict_to_pair(const DoubleData& dd, const AdmissiblePair& p) {
  return mueger_restrict(dd, identify_simple_currents(dd, p));
}

std::vector<UnitScalar> sorted_twists(const ModularData& md) {
  auto t = md.twists;
  std::sort(t.begin(), t.end());
  return t;
}

FusionTensor restrict_fusion(const FusionTensor& n, const std::vector<int>& keep) {
  std::vector<int> pos(n.rank, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  FusionTensor f;
  f.rank = static_cast<int>(keep.size());
  f.n.assign(static_cast<std::size_t>(f.rank) * f.rank * f.rank, 0);
  for (int i = 0; i < f.rank; ++i)
    for (int j = 0; j < f.rank; ++j)
      for (int k = 0; k < n.rank; ++k) {
        const std::int64_t v = n(keep[i], keep[j], k);
        if (v == 0) continue;
        if (pos[k] < 0) throw DimensionMismatch("label set is not closed under fusion");
        f.at(i, j, pos[k]) = v;
      }
  return f;
}

ValidationReport axiom_report(const ModularData& md, const FusionTensor& n, const ValidationOptions& opt) {
  if (n.rank != md.rank()) throw DimensionMismatch("fusion rank differs from modular data rank");
  const ValidationReport full = validate(md, opt);
  ValidationReport rep;
  bool nondegenerate = false;
  for (const auto& c : full.checks) {
    if (c.name == "unitarity") {
      nondegenerate = c.status == ValidationCheck::Status::Pass;
      continue;
    }
    if (c.status == ValidationCheck::Status::Skip || c.name == "fusion-unit" || c.name == "balancing") continue;
    rep.checks.push_back(c);
  }
  const auto d = md.dims();
  bool unit = true, nonneg = true, dims_ok = true;
  double dim_res = 0;
  for (int i = 0; i < n.rank; ++i)
    for (int j = 0; j < n.rank; ++j) {
      double prod = 0;
      for (int k = 0; k < n.rank; ++k) {
        nonneg = nonneg && n(i, j, k) >= 0;
        prod += static_cast<double>(n(i, j, k)) * d[k];
      }
      if (i == 0)
        for (int k = 0; k < n.rank; ++k) unit = unit && n(0, j, k) == (j == k ? 1 : 0);
      dim_res = std::max(dim_res, std::abs(prod - d[i] * d[j]));
    }
  dims_ok = dim_res <= opt.tol;
  auto add = [&](const std::string& name, bool ok, double res, const std::string& detail = "") {
    rep.checks.push_back({name, ok ? ValidationCheck::Status::Pass : ValidationCheck::Status::Fail, res, detail});
  };
  add("fusion-nonnegative", nonneg, 0);
  add("fusion-unit", unit, 0);
  add("fusion-dimensions", dims_ok, dim_res, "d_i d_j = sum_k N_ij^k d_k");
  const double bal = balancing_residual(md, n);
  add("balancing", bal <= opt.tol, bal);
  if (nondegenerate) {
    try {
      const FusionTensor v = verlinde(md, opt.tol);
      add("verlinde-agrees", v.n == n.n, 0);
    } catch (const NotIntegral& e) {
      add("verlinde-agrees", false, 0, e.what());
    }
  } else {
    rep.checks.push_back({"verlinde-agrees", ValidationCheck::Status::Skip, 0, "S is degenerate"});
  }
  return rep;
}

std::vector<Omega0Match> search_omega0(const GroupPtr& g, const std::vector<Cochain>& candidates, const Subgroup& a,
                                       const std::vector<UnitScalar>& target, std::uint64_t seed) {
  auto want = target;
  std::sort(want.begin(), want.end());
  std::vector<Omega0Match> out;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    TwistedContext ctx(g, candidates[ci]);
    std::vector<AdmissiblePair> pairs;
    try {
      pairs = admissible_pairs(ctx, a);
    } catch (const NotInZOmega&) {
      continue;
    } catch (const ExtensionDoesNotSplit&) {
      continue;
    }
    if (pairs.empty()) continue;
    const DoubleData dd = compute_double(ctx, seed);
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      auto r = restrict_to_pair(dd, pairs[pi]);
      if (sorted_twists(r.md) == want) out.push_back({static_cast<int>(ci), static_cast<int>(pi), std::move(r)});
    }
  }
  return out;
}

std::int64_t fs_exponent_bound(const TwistedContext& ctx, std::optional<std::int64_t> class_order) {
  const std::int64_t n = ctx.group()->order();
  if (class_order) return *class_order * n;
  return twistlab::class_order(ctx.omega()) * n;
}

}  // namespace twistlab
