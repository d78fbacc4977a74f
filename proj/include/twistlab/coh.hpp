#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

#include "twistlab/grp.hpp"
#include "twistlab/scalars.hpp"
#include "twistlab/zlin.hpp"

namespace twistlab {

// Normalized cochain G^n -> Q/Z. Only tuples without the identity are stored,
// in lexicographic order of (g_1 - 1, ..., g_n - 1); this is also the column
// order of coboundary_matrix.
class Cochain {
 public:
  Cochain() = default;
  Cochain(GroupPtr g, int arity);
  // f is only consulted on tuples without the identity.
  static Cochain from_function(GroupPtr g, int arity, const std::function<UnitScalar(std::span<const Element>)>& f);
  static Cochain from_stored(GroupPtr g, int arity, std::vector<UnitScalar> values);

  const GroupPtr& group() const { return group_; }
  int arity() const { return arity_; }

  UnitScalar at(std::span<const Element> args) const;
  UnitScalar operator()(Element a) const { return at(std::array<Element, 1>{a}); }
  UnitScalar operator()(Element a, Element b) const { return at(std::array<Element, 2>{a, b}); }
  UnitScalar operator()(Element a, Element b, Element c) const { return at(std::array<Element, 3>{a, b, c}); }
  void set(std::span<const Element> args, const UnitScalar& v);

  const std::vector<UnitScalar>& stored_values() const { return values_; }
  // -1 when some argument is the identity
  std::int64_t storage_index(std::span<const Element> args) const;
  std::int64_t denominator() const;
  bool is_zero() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain operator*(std::int64_t k) const;
  Cochain& operator+=(const Cochain& o) { return *this = *this + o; }
  bool operator==(const Cochain& o) const;
  bool operator!=(const Cochain& o) const { return !(*this == o); }

 private:
  void check_compatible(const Cochain& o) const;
  GroupPtr group_;
  int arity_ = 0;
  std::vector<UnitScalar> values_;
};

// Inhomogeneous bar differential with trivial action.
IntMatrix coboundary_matrix(const GroupPtr& g, int n);
std::shared_ptr<const SnfDecomposition> coboundary_snf(const GroupPtr& g, int n);

Cochain coboundary(const Cochain& c);
bool is_cocycle(const Cochain& c);
// nullopt when z is not a coboundary.
std::optional<Cochain> find_coboundary_witness(const Cochain& z);
// Throws NotCoboundary.
Cochain coboundary_witness(const Cochain& z);
// Least n >= 1 with n z a coboundary; n divides |G|. Throws NotACocycle.
std::int64_t class_order(const Cochain& z);

class CohomologyGroup {
 public:
  CohomologyGroup(GroupPtr g, int degree, std::shared_ptr<const SnfDecomposition> snf);

  const GroupPtr& group() const { return group_; }
  int degree() const { return degree_; }
  const std::vector<std::int64_t>& invariants() const { return invariants_; }
  const std::vector<Cochain>& generators() const { return generators_; }
  std::int64_t order() const;
  // Exponents of z in terms of generators(); throws NotACocycle.
  std::vector<std::int64_t> decompose(const Cochain& z) const;
  Cochain element(const std::vector<std::int64_t>& exponents) const;
  bool same_class(const Cochain& a, const Cochain& b) const { return decompose(a) == decompose(b); }

 private:
  GroupPtr group_;
  int degree_;
  std::shared_ptr<const SnfDecomposition> snf_;
  std::vector<std::int64_t> invariants_;
  std::vector<SnfPivot> torsion_pivots_;
  std::vector<Cochain> generators_;
};

// Cap on |G| for degree 3 (the degree-3 matrix has (|G|-1)^4 rows).
inline constexpr int kDefaultH3MaxOrder = 16;
CohomologyGroup cohomology(const GroupPtr& g, int n, int h3_max_order = kDefaultH3MaxOrder);

Cochain restrict(const Cochain& c, const Subgroup& h);
// Corestriction from H to G; c must live on h.as_group().
Cochain transfer(const Cochain& c, const Subgroup& h);
// Pullback along a homomorphism G -> Q given as an index map.
Cochain inflate(const Cochain& c, const GroupPtr& g, const std::vector<Element>& projection);

// omega_s(z^a, z^b, z^c) = e(s a (b + c - overline(b + c)) / n^2)
Cochain cyclic_cocycle(int n, std::int64_t s);
Cochain cyclic_cocycle(const GroupPtr& cyclic_group, std::int64_t s);

// omega(a, a, a) = 1/2 for the unique involution a; throws PreconditionError.
bool two_generator_test(const GroupPtr& g, const Cochain& omega);

Cochain random_cochain(const GroupPtr& g, int arity, std::mt19937_64& rng, int max_denominator = 12);

nlohmann::json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const nlohmann::json& j, const GroupPtr& g);

}  // namespace twistlab
