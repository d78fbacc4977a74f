#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistlab/scalars.hpp"

namespace twistlab {

using Element = int;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Multiplication-table group. Element 0 is the identity. Immutable.
class FiniteGroup {
 public:
  static GroupPtr from_multiplication_table(const std::vector<std::vector<int>>& table, std::string name = "");

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  // g^x = x^{-1} g x
  Element conj(Element g, Element x) const { return mul(mul(inv_[x], g), x); }
  Element pow(Element g, std::int64_t k) const;
  int element_order(Element g) const { return ord_[g]; }
  bool commute(Element a, Element b) const { return mul(a, b) == mul(b, a); }
  bool is_abelian() const { return abelian_; }
  int exponent() const { return exponent_; }

  struct ConjugacyClass {
    Element representative;  // minimal index in the class
    std::vector<Element> elements;
  };
  const std::vector<ConjugacyClass>& conjugacy_classes() const { return classes_; }
  int class_index(Element g) const { return class_of_[g]; }

  std::vector<std::vector<int>> table() const;

 private:
  FiniteGroup() = default;
  int n_ = 0;
  std::string name_;
  std::vector<int> mul_, inv_, ord_;
  bool abelian_ = true;
  int exponent_ = 1;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> class_of_;
};

class Subgroup {
 public:
  // Validates closure; elements may be given in any order.
  Subgroup(GroupPtr parent, std::vector<Element> elements);
  static Subgroup generated_by(const GroupPtr& parent, const std::vector<Element>& generators);
  static Subgroup whole(const GroupPtr& parent);
  static Subgroup trivial(const GroupPtr& parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(Element g) const { return position_[g] >= 0; }
  // Position of a parent element inside elements(), or -1.
  int position(Element g) const { return position_[g]; }
  bool is_subgroup_of(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const { return parent_ == o.parent_ && elements_ == o.elements_; }

  // The subgroup as a group in its own right; element i is elements()[i].
  const GroupPtr& as_group() const { return group_; }

 private:
  GroupPtr parent_;
  std::vector<Element> elements_;
  std::vector<int> position_;
  GroupPtr group_;
};

struct LinearCharacter {
  GroupPtr group;
  std::vector<UnitScalar> values;

  UnitScalar operator()(Element g) const { return values[g]; }
  LinearCharacter operator+(const LinearCharacter& o) const;
  LinearCharacter operator-() const;
  bool operator==(const LinearCharacter& o) const { return values == o.values; }
  bool is_trivial() const;
  bool is_multiplicative() const;
};

// Structure of a finite abelian group given by an operation on 0..n-1 with 0
// the identity: invariant factors d_1 | d_2 | ... (all > 1), an element for
// each basis vector and the coordinates of every element.
struct AbelianDecomposition {
  std::vector<std::int64_t> invariants;
  std::vector<int> generators;
  std::vector<std::vector<std::int64_t>> coords;

  int size() const { return static_cast<int>(coords.size()); }
  int element_with(const std::vector<std::int64_t>& c) const;  // -1 if absent
};

AbelianDecomposition decompose_abelian(int n, const std::function<int(int, int)>& op);

// G^ = Hom(G, Q/Z) with coordinates relative to the abelian invariants of G/G'.
class CharacterGroup {
 public:
  explicit CharacterGroup(GroupPtr g);

  const GroupPtr& group() const { return group_; }
  const std::vector<std::int64_t>& invariants() const { return invariants_; }
  int size() const;
  LinearCharacter character(const std::vector<std::int64_t>& coords) const;
  // Throws NotACharacter if values are not a homomorphism.
  std::vector<std::int64_t> coordinates(const LinearCharacter& chi) const;
  // Lexicographic order of coordinate vectors; index 0 is the trivial character.
  std::vector<LinearCharacter> all() const;
  std::vector<std::vector<std::int64_t>> all_coordinates() const;

 private:
  GroupPtr group_;
  std::vector<std::int64_t> invariants_;
  std::vector<Element> generators_;  // element of G mapping to basis vector j of G/G'
  std::vector<std::vector<std::int64_t>> element_coords_;
};

// Named groups.
GroupPtr cyclic(int n);
GroupPtr generalized_quaternion(int order);  // order = 4n, n >= 1
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h);
GroupPtr from_permutation_generators(const std::vector<std::vector<int>>& perms, std::string name = "");
GroupPtr sl2_3();
GroupPtr trivial_group();

std::vector<FiniteGroup::ConjugacyClass> conjugacy_classes(const GroupPtr& g);
Subgroup centralizer(const GroupPtr& g, Element x);
Subgroup commutator_subgroup(const GroupPtr& g);

struct CenterInfo {
  Subgroup center;
  std::vector<Element> involutions;
  bool unique_involution;
};
CenterInfo center_and_involutions(const GroupPtr& g);

std::vector<LinearCharacter> character_group(const GroupPtr& g);

// Right coset representatives of H in G (minimal index per coset H g), and
// for every element of G the representative of its coset.
struct RightTransversal {
  std::vector<Element> representatives;
  std::vector<Element> rep_of;
};
RightTransversal right_transversal(const Subgroup& h);

// Table of the homomorphism g -> h sending gens_g to gens_h, or an empty
// vector when that assignment does not extend to a homomorphism.
std::vector<Element> extend_homomorphism(const GroupPtr& g, const std::vector<Element>& gens_g, const GroupPtr& h,
                                         const std::vector<Element>& gens_h);

nlohmann::json group_to_json(const FiniteGroup& g);
GroupPtr group_from_json(const nlohmann::json& j);

}  // namespace twistlab
