#include "twistlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "twistlab/errors.hpp"
#include "twistlab/fixtures.hpp"
#include "twistlab/mdata.hpp"

namespace twistlab {

namespace {

using Clock = std::chrono::steady_clock;
using Status = CheckResult::Status;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::vector<std::int64_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

// Runs body and records a pass/fail check; exceptions become failures.
class Recorder {
 public:
  explicit Recorder(VerificationReport& rep) : rep_(rep) {}

  void check(const std::string& name, const std::function<bool(std::string&)>& body) {
    const auto t0 = Clock::now();
    CheckResult c{name, Status::Pass, 0.0, 0.0, ""};
    try {
      c.status = body(c.detail) ? Status::Pass : Status::Fail;
    } catch (const Error& e) {
      c.status = Status::Fail;
      c.detail = e.kind() + ": " + e.what();
    }
    c.seconds = since(t0);
    rep_.checks.push_back(std::move(c));
  }
  void skip(const std::string& name, const std::string& why) {
    rep_.checks.push_back({name, Status::Skip, 0.0, 0.0, why});
  }

 private:
  VerificationReport& rep_;
};

std::vector<std::string> groups_or(const VerifyOptions& opt, std::vector<std::string> def) {
  return opt.groups.empty() ? def : opt.groups;
}

std::vector<Element> central_involutions(const GroupPtr& g) {
  const auto info = center_and_involutions(g);
  std::vector<Element> out;
  for (Element a : info.involutions)
    if (info.center.contains(a)) out.push_back(a);
  return out;
}

Subgroup involution_subgroup(const GroupPtr& g) {
  const auto info = center_and_involutions(g);
  if (!info.unique_involution) throw PreconditionError(g->name() + " has no unique involution");
  return Subgroup(g, {0, info.involutions[0]});
}

// Subgroups generated by at most two elements, deduplicated.
std::vector<Subgroup> small_subgroups(const GroupPtr& g) {
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> out;
  for (Element x = 0; x < g->order(); ++x)
    for (Element y = x; y < g->order(); ++y) {
      auto h = Subgroup::generated_by(g, {x, y});
      if (seen.insert(h.elements()).second) out.push_back(std::move(h));
    }
  return out;
}

std::vector<Subgroup> subgroups_of(const Subgroup& z) {
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> out;
  const auto& el = z.elements();
  for (Element x : el)
    for (Element y : el) {
      auto h = Subgroup::generated_by(z.parent(), {x, y});
      if (seen.insert(h.elements()).second) out.push_back(std::move(h));
    }
  return out;
}

std::multiset<std::string> outcome_signature(const TwistedContext& ctx, const Subgroup& a) {
  std::multiset<std::string> s;
  for (const auto& p : admissible_pairs(ctx, a)) {
    const auto c = classify(p);
    std::string sig = to_string(c.kind);
    for (const auto& q : c.q_values) sig += " " + q.to_string();
    s.insert(sig);
  }
  return s;
}

std::int64_t hom_count(int cyclic_order, const GroupPtr& g) {
  const CharacterGroup gh(g);
  std::int64_t n = 1;
  for (auto d : gh.invariants()) n *= gcd64(cyclic_order, d);
  return n;
}

void suite_identities(const VerifyOptions& opt, Recorder& r) {
  std::mt19937_64 rng(opt.seed);
  for (const auto& name : groups_or(opt, {"z4", "z6", "z8", "q8", "q16", "sl2_3"})) {
    const auto g = named_group(name);
    const auto reps = h3_representatives(g);
    r.check(name + ": theta/gamma identities", [&](std::string& detail) {
      std::uniform_int_distribution<int> el(0, g->order() - 1);
      std::int64_t bad = 0, total = 0;
      for (const auto& w : reps) {
        TwistedContext ctx(g, w);
        for (int t = 0; t < opt.random_tuples; ++t) {
          const Element a = el(rng), h = el(rng), x = el(rng), y = el(rng), z = el(rng);
          const Element ax = g->conj(a, x);
          if (ctx.theta(a, x, y) + ctx.theta(a, g->mul(x, y), z) != ctx.theta(ax, y, z) + ctx.theta(a, x, g->mul(y, z)))
            ++bad;
          if (ctx.theta(a, x, y) + ctx.theta(h, x, y) + ctx.gamma(x, a, h) + ctx.gamma(y, ax, g->conj(h, x)) !=
              ctx.theta(g->mul(a, h), x, y) + ctx.gamma(g->mul(x, y), a, h))
            ++bad;
          total += 2;
        }
      }
      detail = std::to_string(reps.size()) + " classes, " + std::to_string(total) + " evaluations, " +
               std::to_string(bad) + " violations";
      return bad == 0;
    });
    r.check(name + ": theta_g = gamma_g on C(g), theta_g a 2-cocycle there", [&](std::string& detail) {
      std::int64_t bad = 0;
      for (const auto& w : reps) {
        TwistedContext ctx(g, w);
        for (const auto& cls : g->conjugacy_classes()) {
          const Element a = cls.representative;
          const auto c = centralizer(g, a);
          for (Element x : c.elements())
            for (Element y : c.elements())
              if (ctx.theta(a, x, y) != ctx.gamma(a, x, y)) ++bad;
          if (!is_cocycle(ctx.theta_on_centralizer(a, c))) ++bad;
        }
      }
      detail = std::to_string(bad) + " violations";
      return bad == 0;
    });
  }
}

void suite_cohomology(const VerifyOptions& opt, Recorder& r) {
  for (const auto& f : fixture_groups()) {
    if (!opt.groups.empty() && std::find(opt.groups.begin(), opt.groups.end(), f.name) == opt.groups.end()) continue;
    r.check(f.name + ": H^1 = G^", [&](std::string& detail) {
      auto h1 = cohomology(f.group, 1).invariants();
      auto gh = CharacterGroup(f.group).invariants();
      std::vector<std::int64_t> a, b;
      for (auto d : h1)
        if (d > 1) a.push_back(d);
      for (auto d : gh)
        if (d > 1) b.push_back(d);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      detail = "H^1 " + join(a) + ", G^ " + join(b);
      return a == b && cohomology(f.group, 1).order() == static_cast<std::int64_t>(character_group(f.group).size());
    });
  }
  auto expect = [&](const std::string& name, int n, std::vector<std::int64_t> inv) {
    if (!opt.groups.empty() && std::find(opt.groups.begin(), opt.groups.end(), name) == opt.groups.end()) return;
    r.check(name + ": H^" + std::to_string(n) + " = " + join(inv), [&, name, n, inv](std::string& detail) {
      const auto h = cohomology(named_group(name), n);
      detail = "computed " + join(h.invariants());
      return h.invariants() == inv;
    });
  };
  expect("q8", 2, {});
  for (int n : {2, 3, 4, 6, 8}) expect("z" + std::to_string(n), 3, {n});
  expect("q8", 3, {8});
  expect("q16", 3, {16});
}

void suite_admissibility(const VerifyOptions& opt, Recorder& r) {
  for (const auto& name : groups_or(opt, {"z2", "z4", "z6", "z8", "v4", "q8", "q12", "q16", "sl2_3"})) {
    const auto g = named_group(name);
    r.check(name + ": pairs are admissible and differ by Hom(A, G^)", [&](std::string& detail) {
      int subgroups = 0, pairs_seen = 0, split_failures = 0;
      bool ok = true;
      std::string why;
      for (const auto& w : h3_representatives(g)) {
        TwistedContext ctx(g, w);
        const auto z = z_omega(ctx);
        for (Element a : z.elements()) {
          if (a == 0) continue;
          const auto sub = Subgroup::generated_by(g, {a});
          std::vector<AdmissiblePair> pairs;
          try {
            pairs = admissible_pairs(ctx, sub);
          } catch (const ExtensionDoesNotSplit&) {
            ++split_failures;
            continue;
          }
          ++subgroups;
          pairs_seen += static_cast<int>(pairs.size());
          if (static_cast<std::int64_t>(pairs.size()) != hom_count(sub.order(), g)) {
            ok = false;
            why = "count " + std::to_string(pairs.size()) + " at a=" + std::to_string(a);
          }
          for (const auto& p : pairs) {
            if (!is_admissible_pair(ctx, p)) {
              ok = false;
              why = "not admissible at a=" + std::to_string(a);
            }
            const auto& el = sub.elements();
            std::vector<LinearCharacter> f;
            for (std::size_t i = 0; i < el.size(); ++i) {
              LinearCharacter chi{g, {}};
              for (Element x = 0; x < g->order(); ++x)
                chi.values.push_back((p.tau[i](x) - p.nu[i](x)) - (pairs[0].tau[i](x) - pairs[0].nu[i](x)));
              ok = ok && chi.is_multiplicative();
              f.push_back(chi);
            }
            for (std::size_t i = 0; i < el.size(); ++i)
              for (std::size_t j = 0; j < el.size(); ++j) ok = ok && f[sub.position(g->mul(el[i], el[j]))] == f[i] + f[j];
          }
        }
      }
      detail = std::to_string(subgroups) + " (class, cyclic A) cases, " + std::to_string(pairs_seen) + " pairs, " +
               std::to_string(split_failures) + " non-split" + (why.empty() ? "" : "; " + why);
      return ok;
    });
  }
}

void suite_main_theorem(const VerifyOptions& opt, Recorder& r) {
  for (const auto& name : groups_or(opt, {"z4", "z8", "q8", "q16"})) {
    const auto g = named_group(name);
    r.check(name + ": half the classes are modular, exactly the 2-generator ones", [&](std::string& detail) {
      const auto a = involution_subgroup(g);
      const auto reps = h3_representatives(g);
      int modular = 0;
      bool ok = true;
      for (const auto& w : reps) {
        TwistedContext ctx(g, w);
        const auto pairs = admissible_pairs(ctx, a);
        ok = ok && !pairs.empty();
        const bool gen = two_generator_test(g, w);
        bool all_mod = true, none_mod = true;
        for (const auto& p : pairs) {
          const bool m = classify(p).kind == BKind::Modular;
          all_mod = all_mod && m;
          none_mod = none_mod && !m;
        }
        ok = ok && (gen ? all_mod : none_mod);
        if (gen && all_mod) ++modular;
      }
      detail = std::to_string(reps.size()) + " classes, " + std::to_string(modular) + " modular";
      return ok && 2 * modular == static_cast<int>(reps.size());
    });
  }
}

void suite_super_modular(const VerifyOptions&, Recorder& r) {
  for (const char* name : {"z4", "q8"}) {
    r.check(std::string(name) + ": (2-generator)^2 gives super-modular for every pair", [&](std::string& detail) {
      const auto g = named_group(name);
      const auto a = involution_subgroup(g);
      Cochain gen;
      for (const auto& w : h3_representatives(g))
        if (two_generator_test(g, w) && class_order(w) == g->order()) {
          gen = w;
          break;
        }
      TwistedContext ctx(g, gen * 2);
      const auto pairs = admissible_pairs(ctx, a);
      int super = 0;
      for (const auto& p : pairs)
        if (classify(p).kind == BKind::SuperModular) ++super;
      detail = std::to_string(super) + " of " + std::to_string(pairs.size()) + " pairs super-modular";
      return !pairs.empty() && super == static_cast<int>(pairs.size());
    });
  }
  r.check("z6: eta^2 with A = Sylow-2 is super-modular for some but not all pairs", [&](std::string& detail) {
    const auto g = named_group("z6");
    TwistedContext ctx(g, cyclic_cocycle(g, 2));
    const auto pairs = admissible_pairs(ctx, Subgroup(g, {0, 3}));
    int super = 0;
    for (const auto& p : pairs)
      if (classify(p).kind == BKind::SuperModular) ++super;
    detail = std::to_string(super) + " of " + std::to_string(pairs.size()) + " pairs super-modular";
    return super >= 1 && super < static_cast<int>(pairs.size());
  });
  r.check("z2, omega = 0: the two pairs are Tannakian and super-modular", [&](std::string& detail) {
    const auto g = named_group("z2");
    TwistedContext ctx(g, Cochain(g, 3));
    const auto pairs = admissible_pairs(ctx, Subgroup::whole(g));
    if (pairs.size() != 2) return false;
    std::multiset<BKind> kinds{classify(pairs[0]).kind, classify(pairs[1]).kind};
    detail = to_string(classify(pairs[0]).kind) + ", " + to_string(classify(pairs[1]).kind);
    return kinds == std::multiset<BKind>{BKind::TannakianCenter, BKind::SuperModular};
  });
}

void suite_type_a(const VerifyOptions&, Recorder& r) {
  for (int k = 1; k <= 4; ++k)
    for (int m : {1, 3}) {
      const std::string tag = "k=" + std::to_string(k) + ", m=" + std::to_string(m);
      const auto g = named_group("z" + std::to_string(2 * k));
      const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
      r.check(tag + ": pointed form is the lattice form", [&](std::string& detail) {
        TwistedContext ctx(g, cyclic_cocycle(g, m2));
        const auto p = type_a_pair(g, k, m);
        if (!is_admissible_pair(ctx, p)) {
          detail = "explicit pair is not admissible";
          return false;
        }
        const auto g0 = gamma0_pointed(ctx, p);
        const bool eq = form_equivalent(g0.complement_form, lattice_form(k)).has_value();
        const std::int64_t ord = class_order(ctx.omega());
        detail = "class order " + std::to_string(ord) + ", complement order " + std::to_string(g0.complement_form.size());
        if (!eq && gcd64(m, 2 * k) != 1)
          detail += "; m is not coprime to 2k, twist orders divide " + std::to_string(ord * 2 * k) + " < " +
                    std::to_string(4 * k * k);
        return eq;
      });
      if (k % 2 == 1)
        r.check(tag + ": alternate pair gives an inequivalent form", [&](std::string& detail) {
          TwistedContext ctx(g, cyclic_cocycle(g, m2));
          const auto p = type_a_pair(g, k, m, true);
          if (!is_admissible_pair(ctx, p)) {
            detail = "alternate pair is not admissible";
            return false;
          }
          const auto g0 = gamma0_pointed(ctx, p);
          const bool eq = form_equivalent(g0.complement_form, lattice_form(k)).has_value();
          detail = eq ? "equivalent" : "not equivalent";
          return !eq;
        });
    }
  r.check("solver pairs coincide with the explicit pairs (k <= 4, m = 1)", [&](std::string& detail) {
    bool ok = true;
    for (int k = 1; k <= 4; ++k) {
      const auto g = named_group("z" + std::to_string(2 * k));
      TwistedContext ctx(g, cyclic_cocycle(g, 1));
      const auto solved = admissible_pairs(ctx, Subgroup(g, {0, k}));
      std::set<std::vector<UnitScalar>> a, b;
      for (const auto& p : solved) {
        std::vector<UnitScalar> cur;
        for (Element x = 0; x < g->order(); ++x) cur.push_back(p.tau[1](x) - p.nu[1](x));
        a.insert(cur);
      }
      for (bool alt : {false, true}) {
        const auto p = type_a_pair(g, k, 1, alt);
        std::vector<UnitScalar> cur;
        for (Element x = 0; x < g->order(); ++x) cur.push_back(p.tau[1](x) - p.nu[1](x));
        b.insert(cur);
      }
      ok = ok && a == b;
    }
    detail = ok ? "currents agree" : "current characters differ";
    return ok;
  });
  r.check("mdata restriction agrees with the pointed form (k <= 4, m = 1)", [&](std::string& detail) {
    bool ok = true;
    for (int k = 1; k <= 4; ++k) {
      const auto g = named_group("z" + std::to_string(2 * k));
      TwistedContext ctx(g, cyclic_cocycle(g, 1));
      const auto dd = compute_double(ctx);
      const auto p = type_a_pair(g, k, 1);
      const auto rd = restrict_to_pair(dd, p);
      ok = ok && modular_data_equivalent(rd.md, pointed_modular_data(lattice_form(k))).has_value();
    }
    detail = ok ? "equivalent for all k" : "mismatch";
    return ok;
  });
}

struct Sl23Solution {
  int candidate = -1;
  int pair = -1;
  std::vector<Omega0Match> matches;
};

Sl23Solution solve_sl2_3(std::uint64_t seed) {
  const auto& cls = sl2_3_classes();
  const auto golden = load_golden_modular_data("sl2_3.json");
  const auto center = center_and_involutions(cls.group()).center;
  Sl23Solution s;
  s.matches = search_omega0(cls.group(), cls.all(), center, golden.twists, seed);
  if (s.matches.size() == 1) {
    s.candidate = s.matches[0].candidate;
    s.pair = s.matches[0].pair;
  }
  return s;
}

void suite_sl2_3_golden(const VerifyOptions& opt, Recorder& r) {
  Sl23Solution sol;
  r.check("search finds exactly one class", [&](std::string& detail) {
    sol = solve_sl2_3(opt.seed);
    detail = std::to_string(sol.matches.size()) + " match(es)";
    if (sol.candidate >= 0)
      detail += ": cor(x8)^" + std::to_string(sol.candidate / 3) + " cor(x3)^" + std::to_string(sol.candidate % 3);
    return sol.matches.size() == 1;
  });
  if (sol.candidate < 0) {
    r.skip("S~ matches the golden table", "no unique class");
    return;
  }
  const auto& md = sol.matches[0].data.md;
  const auto golden = load_golden_modular_data("sl2_3.json");
  r.check("S~ matches the golden table exactly", [&](std::string& detail) {
    const auto p = modular_data_equivalent(md, golden);
    detail = p ? "bijection found" : "no (d, theta)-preserving bijection";
    return p.has_value();
  });
  r.check("S~ matches the golden table within 1e-8", [&](std::string& detail) {
    auto numeric = golden;
    numeric.s_exact.clear();
    const auto p = modular_data_equivalent(md, numeric, 1e-8);
    detail = p ? "bijection found" : "no bijection";
    return p.has_value();
  });
  r.check("restricted dims and global dimension", [&](std::string& detail) {
    detail = "rank " + std::to_string(md.rank()) + ", sum d^2 = " + std::to_string(md.global_dimension());
    return md.rank() == 21 && std::abs(md.global_dimension() - 288.0) < 1e-9;
  });
}

void suite_q8_golden(const VerifyOptions& opt, Recorder& r) {
  const auto sol = solve_sl2_3(opt.seed);
  if (sol.candidate < 0) {
    r.check("SL2(3) class available", [&](std::string& detail) {
      detail = "no unique SL2(3) class";
      return false;
    });
    return;
  }
  const auto& cls = sl2_3_classes();
  TwistedContext ctx(cls.group(), cls.all()[sol.candidate]);
  const auto center = center_and_involutions(cls.group()).center;
  const auto pair = admissible_pairs(ctx, center)[sol.pair];
  const auto ind = induce_pair(ctx, pair, cls.q8());
  const auto golden = load_golden_modular_data("q8.json");
  const auto dd = compute_double(ind.ctx, opt.seed);
  const auto rd = restrict_to_pair(dd, ind.pair);
  r.check("induced pair reproduces the golden data", [&](std::string& detail) {
    auto numeric = golden;
    numeric.s_exact.clear();
    const bool exact = modular_data_equivalent(rd.md, golden).has_value();
    const bool approx = modular_data_equivalent(rd.md, numeric, 1e-8).has_value();
    detail = std::string("exact ") + (exact ? "yes" : "no") + ", within 1e-8 " + (approx ? "yes" : "no");
    return exact && approx;
  });
  r.check("only the induced pair among the admissible pairs matches the golden T~", [&](std::string& detail) {
    const auto pairs = admissible_pairs(ind.ctx, ind.pair.a);
    int hits = 0;
    bool induced_hit = false;
    for (const auto& p : pairs) {
      const auto x = restrict_to_pair(dd, p);
      if (sorted_twists(x.md) == sorted_twists(golden)) {
        ++hits;
        induced_hit = induced_hit || x.currents == rd.currents;
      }
    }
    detail = std::to_string(pairs.size()) + " pairs, " + std::to_string(hits) + " match";
    return pairs.size() == 4 && hits == 1 && induced_hit;
  });
}

void suite_axioms(const VerifyOptions& opt, Recorder& r) {
  for (const auto& name : groups_or(opt, {"z2", "z3", "z4", "z6", "z8", "v4", "q8", "q12", "q16", "sl2_3"})) {
    const auto g = named_group(name);
    r.check(name + ": every class, full and restricted data", [&](std::string& detail) {
      const double n2 = static_cast<double>(g->order()) * g->order();
      int datasets = 0;
      std::string first;
      const auto invs = central_involutions(g);
      for (const auto& w : h3_representatives(g)) {
        TwistedContext ctx(g, w);
        const auto dd = compute_double(ctx, opt.seed);
        const std::int64_t bound = fs_exponent_bound(ctx);
        auto note = [&](const ValidationReport& rep, const std::string& what) {
          ++datasets;
          if (const auto* f = rep.first_failure(); f && first.empty()) first = what + ": " + f->name + " " + f->detail;
        };
        note(axiom_report(dd.md, dd.fusion, {1e-6, bound, n2}), "full");
        for (Element a : invs) {
          const Subgroup sub(g, {0, a});
          std::vector<AdmissiblePair> pairs;
          try {
            pairs = admissible_pairs(ctx, sub);
          } catch (const NotInZOmega&) {
            continue;
          } catch (const ExtensionDoesNotSplit&) {
            continue;
          }
          for (const auto& p : pairs) {
            const auto rd = restrict_to_pair(dd, p);
            note(axiom_report(rd.md, rd.fusion, {1e-6, bound, n2 / 2}), "restricted");
          }
        }
      }
      detail = std::to_string(datasets) + " datasets" + (first.empty() ? "" : "; " + first);
      return first.empty();
    });
  }
}

void suite_lemmas(const VerifyOptions& opt, Recorder& r) {
  std::mt19937_64 rng(opt.seed);
  const auto names = groups_or(opt, {"z2", "z3", "z4", "z6", "z8", "v4", "q8", "q12", "q16", "sl2_3"});
  r.check("ord[theta_g] divides ord(g)", [&](std::string& detail) {
    std::int64_t cases = 0, bad = 0;
    for (const auto& name : names) {
      const auto g = named_group(name);
      for (const auto& w : h3_representatives(g)) {
        TwistedContext ctx(g, w);
        for (Element x = 0; x < g->order(); ++x) {
          ++cases;
          if (g->element_order(x) % theta_class_order(ctx, x) != 0) ++bad;
        }
      }
    }
    detail = std::to_string(cases) + " (class, g) cases, " + std::to_string(bad) + " violations";
    return bad == 0;
  });
  r.check("gcd(|B|, |H^2(G)|) = 1 implies B in Z_omega", [&](std::string& detail) {
    std::int64_t cases = 0, bad = 0;
    for (const auto& name : names) {
      const auto g = named_group(name);
      const std::int64_t h2 = cohomology(g, 2).order();
      const auto subs = subgroups_of(center_and_involutions(g).center);
      for (const auto& w : h3_representatives(g)) {
        const auto z = z_omega(TwistedContext(g, w));
        for (const auto& b : subs) {
          if (gcd64(b.order(), h2) != 1) continue;
          ++cases;
          if (!b.is_subgroup_of(z)) ++bad;
        }
      }
    }
    detail = std::to_string(cases) + " (G, omega, B) cases, " + std::to_string(bad) + " violations";
    return bad == 0 && cases > 0;
  });
  r.check("classification is invariant under coboundary shifts", [&](std::string& detail) {
    std::int64_t cases = 0, bad = 0;
    for (const auto& name : names) {
      const auto g = named_group(name);
      for (Element a : central_involutions(g)) {
        const Subgroup sub(g, {0, a});
        for (const auto& w : h3_representatives(g)) {
          std::multiset<std::string> base;
          try {
            base = outcome_signature(TwistedContext(g, w), sub);
          } catch (const NotInZOmega&) {
            continue;
          } catch (const ExtensionDoesNotSplit&) {
            continue;
          }
          for (int t = 0; t < opt.coboundary_shifts; ++t) {
            ++cases;
            const TwistedContext shifted(g, w + coboundary(random_cochain(g, 2, rng)));
            if (outcome_signature(shifted, sub) != base) ++bad;
          }
        }
      }
    }
    detail = std::to_string(cases) + " shifts, " + std::to_string(bad) + " changes";
    return bad == 0;
  });
  r.check("induced pairs keep the classification", [&](std::string& detail) {
    std::int64_t cases = 0, bad = 0;
    for (const auto& name : names) {
      const auto g = named_group(name);
      const auto subs = small_subgroups(g);
      for (Element a : central_involutions(g)) {
        const Subgroup sub(g, {0, a});
        for (const auto& w : h3_representatives(g)) {
          TwistedContext ctx(g, w);
          std::vector<AdmissiblePair> pairs;
          try {
            pairs = admissible_pairs(ctx, sub);
          } catch (const NotInZOmega&) {
            continue;
          } catch (const ExtensionDoesNotSplit&) {
            continue;
          }
          for (const auto& p : pairs) {
            const auto c = classify(p);
            for (const auto& h : subs) {
              if (!sub.is_subgroup_of(h)) continue;
              ++cases;
              const auto ind = induce_pair(ctx, p, h);
              const auto ci = classify(ind.pair);
              if (!is_admissible_pair(ind.ctx, ind.pair) || ci.kind != c.kind || ci.q_values != c.q_values) ++bad;
            }
          }
        }
      }
    }
    detail = std::to_string(cases) + " (pair, H) cases, " + std::to_string(bad) + " disagreements";
    return bad == 0;
  });
  r.check("transfer after restriction is multiplication by the index", [&](std::string& detail) {
    std::int64_t cases = 0, bad = 0;
    for (const auto& name : names) {
      const auto g = named_group(name);
      std::vector<Cochain> classes;
      for (int n = 1; n <= 2; ++n) {
        const auto h = cohomology(g, n);
        classes.insert(classes.end(), h.generators().begin(), h.generators().end());
      }
      const auto reps = h3_representatives(g);
      if (reps.size() > 1) classes.push_back(reps[1]);
      for (const auto& h : small_subgroups(g)) {
        const std::int64_t index = g->order() / h.order();
        for (const auto& c : classes) {
          ++cases;
          const Cochain diff = transfer(restrict(c, h), h) - c * index;
          if (!find_coboundary_witness(diff)) ++bad;
        }
      }
    }
    detail = std::to_string(cases) + " (subgroup, class) cases, " + std::to_string(bad) + " violations";
    return bad == 0;
  });
}

// D(Z2) by hand: simples (g, chi), T = chi(g), S~ = conj(chi(h) psi(g)).
ModularData toric_code_by_enumeration() {
  const auto g = named_group("z2");
  const auto chars = character_group(g);
  ModularData md;
  std::vector<std::pair<Element, int>> simple;
  for (Element x = 0; x < 2; ++x)
    for (int c = 0; c < 2; ++c) {
      simple.emplace_back(x, c);
      md.labels.push_back("(" + std::to_string(x) + "," + std::to_string(c) + ")");
      md.dims_exact.push_back(Cyclotomic::integer(1));
      md.twists.push_back(chars[c](x));
    }
  md.s_exact.assign(4, std::vector<Cyclotomic>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto [x, c] = simple[i];
      const auto [y, d] = simple[j];
      md.s_exact[i][j] = Cyclotomic::root_of_unity(-(chars[c](y) + chars[d](x)));
    }
  md.refresh_numeric();
  return md;
}

void suite_toric_code(const VerifyOptions& opt, Recorder& r) {
  const auto g = named_group("z2");
  const auto dd = compute_double(TwistedContext(g, Cochain(g, 3)), opt.seed);
  const auto brute = toric_code_by_enumeration();
  const auto golden = load_golden_modular_data("toric_code.json");
  r.check("D(Z2) equals the enumerated toric code", [&](std::string& detail) {
    const auto p = modular_data_equivalent(dd.md, brute);
    detail = p ? "exact bijection" : "no bijection";
    return p.has_value() && dd.md.has_exact();
  });
  r.check("the enumeration equals the shipped fixture", [&](std::string& detail) {
    const auto p = modular_data_equivalent(brute, golden);
    detail = p ? "exact bijection" : "no bijection";
    return p.has_value();
  });
}

using SuiteFn = void (*)(const VerifyOptions&, Recorder&);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> m{
      {"identities", suite_identities},     {"cohomology", suite_cohomology},
      {"admissibility", suite_admissibility}, {"main-theorem", suite_main_theorem},
      {"super-modular", suite_super_modular}, {"type-a", suite_type_a},
      {"sl2_3-golden", suite_sl2_3_golden}, {"q8-golden", suite_q8_golden},
      {"axioms", suite_axioms},             {"lemma-suite", suite_lemmas},
      {"toric-code", suite_toric_code},
  };
  return m;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skip:
      return "skip";
  }
  return "?";
}

}  // namespace

bool VerificationReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j{{"suite", suite}, {"seed", seed}, {"ok", ok()}, {"seconds", seconds}};
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"status", status_name(c.status)},
                           {"residual", c.residual},
                           {"seconds", c.seconds},
                           {"detail", c.detail}});
  return j;
}

std::string VerificationReport::markdown() const {
  std::ostringstream os;
  os << "## " << suite << " (" << (ok() ? "pass" : "FAIL") << ", seed " << seed << ")\n\n";
  os << "| check | status | detail | s |\n|---|---|---|---|\n";
  for (const auto& c : checks)
    os << "| " << c.name << " | " << status_name(c.status) << " | " << c.detail << " | " << c.seconds << " |\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : suites()) v.push_back(k);
    return v;
  }();
  return names;
}

VerificationReport run_suite(const std::string& name, const VerifyOptions& opt) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw InvalidParameter("unknown suite '" + name + "'");
  VerificationReport rep;
  rep.suite = name;
  rep.seed = opt.seed;
  const auto t0 = Clock::now();
  Recorder r(rep);
  it->second(opt, r);
  rep.seconds = since(t0);
  return rep;
}

}  // namespace twistlab
