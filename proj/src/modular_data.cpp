#include "twistlab/modular_data.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

using CMatrix = std::vector<std::vector<ComplexApprox>>;

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.size();
  CMatrix c(n, std::vector<ComplexApprox>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexApprox aik = a[i][k];
      if (aik == ComplexApprox()) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += aik * b[k][j];
    }
  return c;
}

void check_shape(const ModularData& md) {
  const std::size_t r = md.twists.size();
  if (md.labels.size() != r || md.dims_exact.size() != r || md.s.size() != r)
    throw DimensionMismatch("modular data fields have inconsistent sizes");
  for (const auto& row : md.s)
    if (row.size() != r) throw DimensionMismatch("S matrix is not square");
  if (md.has_exact()) {
    if (md.s_exact.size() != r) throw DimensionMismatch("exact S matrix has the wrong size");
    for (const auto& row : md.s_exact)
      if (row.size() != r) throw DimensionMismatch("exact S matrix is not square");
  }
}

ValidationCheck make_check(std::string name, bool pass, double residual, std::string detail = "") {
  return {std::move(name), pass ? ValidationCheck::Status::Pass : ValidationCheck::Status::Fail, residual,
          std::move(detail)};
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::vector<double> ModularData::dims() const {
  std::vector<double> d;
  d.reserve(dims_exact.size());
  for (const auto& x : dims_exact) d.push_back(x.evaluate().real());
  return d;
}

double ModularData::global_dimension() const {
  double s = 0;
  for (double d : dims()) s += d * d;
  return s;
}

ModularData ModularData::sub(const std::vector<int>& keep) const {
  ModularData out;
  for (int i : keep) {
    out.labels.push_back(labels.at(i));
    out.dims_exact.push_back(dims_exact.at(i));
    out.twists.push_back(twists.at(i));
    std::vector<ComplexApprox> row;
    for (int j : keep) row.push_back(s[i][j]);
    out.s.push_back(std::move(row));
    if (has_exact()) {
      std::vector<Cyclotomic> erow;
      for (int j : keep) erow.push_back(s_exact[i][j]);
      out.s_exact.push_back(std::move(erow));
    }
  }
  return out;
}

void ModularData::refresh_numeric() {
  s.assign(s_exact.size(), {});
  for (std::size_t i = 0; i < s_exact.size(); ++i)
    for (const auto& x : s_exact[i]) s[i].push_back(x.evaluate());
}

bool ValidationReport::ok() const { return first_failure() == nullptr; }

const ValidationCheck* ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (c.status == ValidationCheck::Status::Fail) return &c;
  return nullptr;
}

FusionTensor verlinde(const ModularData& md, double tol) {
  check_shape(md);
  const int r = md.rank();
  const double d2 = md.global_dimension();
  for (int m = 0; m < r; ++m)
    if (std::abs(md.s[0][m]) < 1e-12) throw NotIntegral("S row 0 has a zero entry at " + std::to_string(m));
  // w[j][m] = S_jm / S_0m, reused across i
  std::vector<std::vector<ComplexApprox>> w(r, std::vector<ComplexApprox>(r));
  for (int j = 0; j < r; ++j)
    for (int m = 0; m < r; ++m) w[j][m] = md.s[j][m] / md.s[0][m];
  FusionTensor f{r, std::vector<std::int64_t>(static_cast<std::size_t>(r) * r * r, 0)};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        ComplexApprox v = 0;
        for (int m = 0; m < r; ++m) v += md.s[i][m] * w[j][m] * std::conj(md.s[k][m]);
        v /= d2;
        const double rounded = std::round(v.real());
        if (std::abs(v - ComplexApprox(rounded, 0)) > tol || rounded < 0)
          throw NotIntegral("N_{" + std::to_string(i) + "," + std::to_string(j) + "}^" + std::to_string(k) + " = " +
                            fmt_double(v.real()) + (v.imag() != 0 ? "+" + fmt_double(v.imag()) + "i" : ""));
        f.at(i, j, k) = static_cast<std::int64_t>(rounded);
      }
  return f;
}

double balancing_residual(const ModularData& md, const FusionTensor& n) {
  const int r = md.rank();
  const auto d = md.dims();
  double worst = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      ComplexApprox v = 0;
      for (int k = 0; k < r; ++k)
        if (n(i, j, k) != 0)
          v += static_cast<double>(n(i, j, k)) * d[k] * (md.twists[i] + md.twists[j] - md.twists[k]).evaluate();
      worst = std::max(worst, std::abs(v - md.s[i][j]));
    }
  return worst;
}

std::vector<std::vector<Cyclotomic>> s_from_balancing(const FusionTensor& n, const std::vector<Cyclotomic>& dims,
                                                      const std::vector<UnitScalar>& twists) {
  const int r = n.rank;
  std::int64_t cond = 1;
  for (const auto& t : twists) cond = lcm64(cond, t.den());
  bool rational_dims = true;
  for (const auto& d : dims) rational_dims = rational_dims && d.is_rational();
  std::vector<std::vector<Cyclotomic>> s(r, std::vector<Cyclotomic>(r));
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      if (rational_dims) {
        std::vector<mpq_class> counts(static_cast<std::size_t>(cond));
        for (int k = 0; k < r; ++k)
          if (n(i, j, k) != 0) {
            const UnitScalar e = twists[i] + twists[j] - twists[k];
            counts[static_cast<std::size_t>(e.num() * (cond / e.den()))] +=
                mpq_class(static_cast<long>(n(i, j, k))) * dims[k].rational_value();
          }
        s[i][j] = Cyclotomic::from_exponent_counts(static_cast<int>(cond), counts);
      } else {
        Cyclotomic v;
        for (int k = 0; k < r; ++k)
          if (n(i, j, k) != 0)
            v += dims[k] * Cyclotomic::root_of_unity(twists[i] + twists[j] - twists[k]) *
                 mpq_class(static_cast<long>(n(i, j, k)));
        s[i][j] = v;
      }
      s[j][i] = s[i][j];
    }
  return s;
}

ValidationReport validate(const ModularData& md, const ValidationOptions& opt) {
  check_shape(md);
  ValidationReport rep;
  const int r = md.rank();
  const auto d = md.dims();
  const double d2 = md.global_dimension();
  const double tol = opt.tol;

  double sym = 0, row0 = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) sym = std::max(sym, std::abs(md.s[i][j] - md.s[j][i]));
  for (int j = 0; j < r; ++j) row0 = std::max(row0, std::abs(md.s[0][j] - ComplexApprox(d[j], 0)));
  rep.checks.push_back(make_check("symmetry", sym <= tol, sym));
  rep.checks.push_back(make_check("dims-row", row0 <= tol, row0));
  rep.checks.push_back(make_check("unit-twist", r > 0 && md.twists[0].is_zero(), 0));

  // S S* / D^2 must be a permutation matrix of order <= 2
  double unit_res = 0;
  bool perm_ok = true;
  std::vector<int> conj_of(r, -1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      ComplexApprox v = 0;
      for (int k = 0; k < r; ++k) v += md.s[i][k] * std::conj(md.s[j][k]);
      v /= d2;
      const bool one = std::abs(v - 1.0) <= tol;
      if (one) {
        if (conj_of[i] >= 0) perm_ok = false;
        conj_of[i] = j;
      } else {
        unit_res = std::max(unit_res, std::abs(v));
      }
    }
  for (int i = 0; i < r && perm_ok; ++i)
    if (conj_of[i] < 0 || conj_of[conj_of[i]] != i) perm_ok = false;
  // S S* = D^2 C with C symmetric: row i of S pairs with the dual of i
  rep.checks.push_back(make_check("unitarity", perm_ok && unit_res <= tol, unit_res,
                                  perm_ok ? "" : "S S* / D^2 is not a permutation of order <= 2"));
  const bool nondegenerate = perm_ok && unit_res <= tol;

  if (nondegenerate) {
    try {
      const FusionTensor n = verlinde(md, tol);
      rep.checks.push_back(make_check("verlinde", true, 0));
      bool unit_ok = true;
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) unit_ok = unit_ok && n(0, j, k) == (j == k ? 1 : 0);
      rep.checks.push_back(make_check("fusion-unit", unit_ok, 0));
      const double bal = balancing_residual(md, n);
      rep.checks.push_back(make_check("balancing", bal <= tol, bal));
    } catch (const NotIntegral& e) {
      rep.checks.push_back(make_check("verlinde", false, 0, e.what()));
    }
    // (S T)^3 = p+ S^2 for unnormalized S
    CMatrix st(r, std::vector<ComplexApprox>(r));
    ComplexApprox pplus = 0;
    for (int j = 0; j < r; ++j) pplus += d[j] * d[j] * md.twists[j].evaluate();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) st[i][j] = md.s[i][j] * md.twists[j].evaluate();
    const CMatrix st3 = matmul(matmul(st, st), st);
    const CMatrix s2 = matmul(md.s, md.s);
    double mod_res = 0;
    const double scale = std::max(1.0, std::abs(pplus) * d2);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) mod_res = std::max(mod_res, std::abs(st3[i][j] - pplus * s2[i][j]) / scale);
    rep.checks.push_back(make_check("modular-relation", mod_res <= tol, mod_res));
  } else {
    for (const char* name : {"verlinde", "balancing", "modular-relation"})
      rep.checks.push_back({name, ValidationCheck::Status::Skip, 0, "S is degenerate"});
  }

  if (opt.twist_order_bound > 0) {
    bool ok = true;
    std::string bad;
    for (int j = 0; j < r; ++j)
      if (opt.twist_order_bound % md.twists[j].den() != 0) {
        ok = false;
        bad = "twist " + std::to_string(j) + " has order " + std::to_string(md.twists[j].den());
        break;
      }
    rep.checks.push_back(make_check("twist-orders", ok, 0, bad));
  }
  if (opt.expected_global_dimension > 0) {
    const double res = std::abs(d2 - opt.expected_global_dimension);
    rep.checks.push_back(make_check("global-dimension", res <= tol * std::max(1.0, d2), res,
                                    "sum d^2 = " + fmt_double(d2)));
  }
  return rep;
}

void require_valid(const ModularData& md, const ValidationOptions& opt) {
  const auto rep = validate(md, opt);
  if (const auto* f = rep.first_failure())
    throw ValidationFailure(f->name + " failed (residual " + fmt_double(f->residual) + ")" +
                            (f->detail.empty() ? "" : ": " + f->detail));
}

std::optional<std::vector<int>> modular_data_equivalent(const ModularData& md1, const ModularData& md2, double tol) {
  check_shape(md1);
  check_shape(md2);
  const int r = md1.rank();
  if (md2.rank() != r) return std::nullopt;
  const bool exact = md1.has_exact() && md2.has_exact();
  const auto d1 = md1.dims(), d2 = md2.dims();
  std::vector<std::vector<int>> candidates(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (md1.twists[i] != md2.twists[j]) continue;
      if (exact ? md1.dims_exact[i] != md2.dims_exact[j] : std::abs(d1[i] - d2[j]) > tol) continue;
      candidates[i].push_back(j);
    }
    if (candidates[i].empty()) return std::nullopt;
  }
  auto same = [&](int i, int ii, int j, int jj) {
    return exact ? md1.s_exact[i][ii] == md2.s_exact[j][jj] : std::abs(md1.s[i][ii] - md2.s[j][jj]) <= tol;
  };
  // most constrained labels first
  std::vector<int> order(r);
  for (int i = 0; i < r; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return candidates[a].size() < candidates[b].size(); });
  std::vector<int> p(r, -1);
  std::vector<char> used(r, 0);
  std::function<bool(int)> place = [&](int pos) {
    if (pos == r) return true;
    const int i = order[pos];
    for (int j : candidates[i]) {
      if (used[j]) continue;
      bool ok = same(i, i, j, j);
      for (int q = 0; q < pos && ok; ++q) ok = same(i, order[q], j, p[order[q]]);
      if (!ok) continue;
      p[i] = j;
      used[j] = 1;
      if (place(pos + 1)) return true;
      used[j] = 0;
      p[i] = -1;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return p;
}

nlohmann::json modular_data_to_json(const ModularData& md) {
  check_shape(md);
  nlohmann::json j;
  j["labels"] = md.labels;
  j["dims"] = md.dims();
  std::vector<std::string> de, t;
  for (const auto& d : md.dims_exact) de.push_back(d.to_string());
  for (const auto& x : md.twists) t.push_back(x.to_string());
  j["dims_exact"] = de;
  j["T"] = t;
  nlohmann::json s = nlohmann::json::array();
  for (int i = 0; i < md.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < md.rank(); ++k) {
      if (md.has_exact())
        row.push_back(md.s_exact[i][k].to_string());
      else
        row.push_back({md.s[i][k].real(), md.s[i][k].imag()});
    }
    s.push_back(std::move(row));
  }
  j["S"] = std::move(s);
  j["D2"] = md.global_dimension();
  return j;
}

ModularData modular_data_from_json(const nlohmann::json& j) {
  ModularData md;
  try {
    md.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& d : j.at("dims_exact")) md.dims_exact.push_back(Cyclotomic::parse(d.get<std::string>()));
    for (const auto& t : j.at("T")) md.twists.push_back(UnitScalar::parse(t.get<std::string>()));
    const auto& s = j.at("S");
    bool exact = !s.empty() && !s[0].empty() && s[0][0].is_string();
    for (const auto& row : s) {
      std::vector<ComplexApprox> nrow;
      std::vector<Cyclotomic> erow;
      for (const auto& x : row) {
        if (exact) {
          erow.push_back(Cyclotomic::parse(x.get<std::string>()));
        } else {
          nrow.emplace_back(x.at(0).get<double>(), x.at(1).get<double>());
        }
      }
      if (exact)
        md.s_exact.push_back(std::move(erow));
      else
        md.s.push_back(std::move(nrow));
    }
    if (exact) md.refresh_numeric();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("modular data json: ") + e.what());
  }
  check_shape(md);
  return md;
}

std::string modular_data_markdown(const ModularData& md) {
  std::ostringstream os;
  os << "| # | label | d | T |\n|---|---|---|---|\n";
  for (int i = 0; i < md.rank(); ++i)
    os << "| " << i << " | " << md.labels[i] << " | " << md.dims_exact[i].to_string() << " | "
       << md.twists[i].to_string() << " |\n";
  os << "\n|   |";
  for (int j = 0; j < md.rank(); ++j) os << ' ' << j << " |";
  os << "\n|---|";
  for (int j = 0; j < md.rank(); ++j) os << "---|";
  os << '\n';
  for (int i = 0; i < md.rank(); ++i) {
    os << "| " << i << " |";
    for (int j = 0; j < md.rank(); ++j) {
      if (md.has_exact()) {
        os << ' ' << md.s_exact[i][j].to_string() << " |";
      } else {
        const auto v = md.s[i][j];
        os << ' ' << fmt_double(v.real());
        if (std::abs(v.imag()) > 1e-12) os << (v.imag() < 0 ? " - " : " + ") << fmt_double(std::abs(v.imag())) << "i";
        os << " |";
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace twistlab
