#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "twistlab/modular_data.hpp"
#include "twistlab/scalars.hpp"

namespace twistlab {

// Finite abelian group Z/n_1 x ... x Z/n_r with a Q/Z-valued function q.
// Elements are indexed in lexicographic (mixed radix) order of coordinates.
class MetricGroup {
 public:
  MetricGroup() : MetricGroup(std::vector<std::int64_t>{}, {UnitScalar()}) {}
  MetricGroup(std::vector<std::int64_t> invariants, std::vector<UnitScalar> q);
  // Abelian group on 0..n-1 (0 the identity) given by op; q indexed the same way.
  // The element of the result with index i corresponds to original element
  // original_index()[i].
  static MetricGroup from_operation(int n, const std::function<int(int, int)>& op, const std::vector<UnitScalar>& q);
  // Z/n with q(x) = x^2 q(1).
  static MetricGroup cyclic(std::int64_t n, const UnitScalar& q_generator);

  int size() const { return static_cast<int>(q_.size()); }
  const std::vector<std::int64_t>& invariants() const { return invariants_; }
  const std::vector<int>& original_index() const { return original_; }
  std::vector<std::int64_t> coords(int x) const;
  int index(const std::vector<std::int64_t>& coords) const;
  int add(int x, int y) const;
  int neg(int x) const;
  int mul(int x, std::int64_t k) const;
  int element_order(int x) const;

  const UnitScalar& q(int x) const { return q_[x]; }
  const std::vector<UnitScalar>& q_values() const { return q_; }
  UnitScalar b(int x, int y) const { return q_[add(x, y)] - q_[x] - q_[y]; }

  // q(0) = 0, q(-x) = q(x), q(kx) = k^2 q(x) and b bi-additive.
  bool is_quadratic() const;
  std::vector<int> radical() const;
  bool is_nondegenerate() const { return radical().size() == 1; }
  Cyclotomic gauss_sum() const;

 private:
  std::vector<std::int64_t> invariants_;
  std::vector<UnitScalar> q_;
  std::vector<int> original_;
};

// Discriminant form of the rank-one lattice L_{2k^2}: (Z/2k^2, q(1) = e(1/4k^2)).
MetricGroup lattice_form(int k);

// Group isomorphism phi (as an index map m1 -> m2) with q2(phi(x)) = q1(x).
std::optional<std::vector<int>> form_equivalent(const MetricGroup& m1, const MetricGroup& m2);

// T~_x = q(x), S~_xy = e(-b(x,y)), the pointed case of the balancing equation.
// Throws Degenerate when b has a radical.
ModularData pointed_modular_data(const MetricGroup& m);

nlohmann::json metric_group_to_json(const MetricGroup& m);
MetricGroup metric_group_from_json(const nlohmann::json& j);

}  // namespace twistlab
