#include "twistlab/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>

#include "twistlab/errors.hpp"

namespace twistlab {

GroupPtr named_group(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, GroupPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  GroupPtr g;
  auto number = [&](std::size_t from) {
    const std::string digits = name.substr(from);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4)
      throw InvalidParameter("unknown group '" + name + "'");
    return std::stoi(digits);
  };
  if (name == "sl2_3") {
    g = sl2_3();
  } else if (name == "trivial") {
    g = trivial_group();
  } else if (name == "v4") {
    g = direct_product(cyclic(2), cyclic(2));
  } else if (!name.empty() && name[0] == 'z') {
    g = cyclic(number(1));
  } else if (!name.empty() && name[0] == 'q') {
    g = generalized_quaternion(number(1));
  } else {
    throw InvalidParameter("unknown group '" + name + "'");
  }
  cache.emplace(name, g);
  return g;
}

std::vector<Fixture> fixture_groups() {
  std::vector<Fixture> out;
  for (const char* n : {"z2", "z3", "z4", "z6", "z8", "v4", "q8", "q12", "q16", "sl2_3"})
    out.push_back({n, named_group(n)});
  return out;
}

Sl2_3Classes::Sl2_3Classes(GroupPtr g)
    : group_(std::move(g)), q8_(commutator_subgroup(group_)), p3_(Subgroup::trivial(group_)) {
  if (group_->order() != 24 || q8_.order() != 8) throw InvalidParameter("expected SL2(3)");
  Element y = 1;
  while (group_->element_order(y) != 3) ++y;
  p3_ = Subgroup::generated_by(group_, {y});
  // P3 -> Z3 sending y to 1
  std::vector<Element> proj(3);
  for (int k = 0; k < 3; ++k) proj[p3_.position(group_->pow(y, k))] = k;
  auto z3 = cyclic(3);
  const Cochain on_p3 = inflate(cyclic_cocycle(z3, 1), p3_.as_group(), proj);
  x3_ = transfer(on_p3, p3_);
  x8_ = transfer(cohomology(q8_.as_group(), 3).generators().at(0), q8_);
}

Cochain Sl2_3Classes::cocycle(int i, int j) const { return x8_ * mod64(i, 8) + x3_ * mod64(j, 3); }

std::vector<Cochain> Sl2_3Classes::all() const {
  std::vector<Cochain> out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 3; ++j) out.push_back(cocycle(i, j));
  return out;
}

const Sl2_3Classes& sl2_3_classes() {
  static const Sl2_3Classes c(named_group("sl2_3"));
  return c;
}

std::vector<Cochain> h3_representatives(const GroupPtr& g) {
  if (g->order() == 24 && g->name() == "SL2(3)") {
    if (g == sl2_3_classes().group()) return sl2_3_classes().all();
    return Sl2_3Classes(g).all();
  }
  const auto h = cohomology(g, 3);
  std::vector<Cochain> out;
  std::vector<std::int64_t> e(h.invariants().size(), 0);
  while (true) {
    out.push_back(h.element(e));
    std::size_t i = 0;
    while (i < e.size() && ++e[i] == h.invariants()[i]) e[i++] = 0;
    if (i == e.size()) break;
  }
  return out;
}

AdmissiblePair type_a_pair(const GroupPtr& g, int k, int m, bool alternate) {
  if (k < 1 || g->order() != 2 * k || !g->is_abelian() || g->exponent() != 2 * k)
    throw InvalidParameter("type_a_pair needs the cyclic group of order 2k");
  const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
  const std::int64_t kk4 = 4LL * k * k;
  Subgroup a(g, {0, k});
  AdmissiblePair p{a, {}, {}, alternate ? "type-a-alternate" : "type-a"};
  for (Element x : a.elements()) {
    p.tau.push_back(Cochain::from_function(g, 1, [&](std::span<const Element> t) { return UnitScalar(m2 * x * t[0], kk4); }));
    LinearCharacter chi{g, {}};
    for (int y = 0; y < 2 * k; ++y) {
      UnitScalar v = x == 0 ? UnitScalar() : UnitScalar(m2 * y, 2 * k);
      if (alternate && x != 0) v = v - UnitScalar(y, 2);
      chi.values.push_back(v);
    }
    p.nu.push_back(chi);
  }
  return p;
}

std::string golden_dir() {
  if (const char* env = std::getenv("TWISTLAB_DATA_DIR"); env && *env) return std::string(env) + "/golden";
  return std::string(TWISTLAB_DATA_DIR) + "/golden";
}

ModularData load_golden_modular_data(const std::string& file) {
  const std::string path = golden_dir() + "/" + file;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return modular_data_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace twistlab
