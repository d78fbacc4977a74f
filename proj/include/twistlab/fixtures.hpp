#pragma once

#include <string>
#include <vector>

#include "twistlab/coh.hpp"
#include "twistlab/grp.hpp"
#include "twistlab/modular_data.hpp"
#include "twistlab/tqd.hpp"

namespace twistlab {

// z<n>, q<4n>, sl2_3, v4, trivial; throws InvalidParameter for other names.
// Instances are cached, so repeated lookups share one group (and its SNF cache).
GroupPtr named_group(const std::string& name);

struct Fixture {
  std::string name;
  GroupPtr group;
};
// Z2, Z3, Z4, Z6, Z8, V4, Q8, Q12, Q16, SL2(3)
std::vector<Fixture> fixture_groups();

// SL2(3) classes as cor(x8)^i cor(x3)^j: x8 generates H^3(Q8) on the
// commutator subgroup, x3 is the cyclic generator on a Sylow 3-subgroup.
class Sl2_3Classes {
 public:
  explicit Sl2_3Classes(GroupPtr g);
  const GroupPtr& group() const { return group_; }
  const Subgroup& q8() const { return q8_; }
  const Subgroup& sylow3() const { return p3_; }
  // i mod 8, j mod 3
  Cochain cocycle(int i, int j) const;
  // All 24 candidates in order (i, j) with j fastest.
  std::vector<Cochain> all() const;

 private:
  GroupPtr group_;
  Subgroup q8_;
  Subgroup p3_;
  Cochain x8_, x3_;
};
const Sl2_3Classes& sl2_3_classes();

// One cocycle per H^3 class: all elements of the cohomology group for
// |G| <= 16, the transfer products for SL2(3).
std::vector<Cochain> h3_representatives(const GroupPtr& g);

// Explicit pair on Z_2k for omega = cyclic_cocycle(2k, m^2) and A = <z^k>:
// tau_{z^a}(z^b) = m^2 a b / 4k^2, nu(z^k)(z^a) = m^2 a / 2k. The alternate
// pair shifts nu(z^k) by the order-2 character a/2. g must be named_group("z<2k>").
AdmissiblePair type_a_pair(const GroupPtr& g, int k, int m, bool alternate = false);

// Golden fixture directory: $TWISTLAB_DATA_DIR/golden when set, else the
// directory shipped with the sources.
std::string golden_dir();
ModularData load_golden_modular_data(const std::string& file);

}  // namespace twistlab
