#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/modular_data.hpp"
#include "twistlab/tqd.hpp"

namespace twistlab {

// An irreducible projective character of a group C with
// pi(x) pi(y) = e(theta(x,y)) pi(xy), indexed like the elements of C.
struct TwistedCharacter {
  int degree = 0;
  std::vector<ComplexApprox> values;
};

// Complete list of irreducible theta-twisted characters of the group on
// which theta lives, ordered by (degree, values). Splits the twisted regular
// representation with a random central Hermitian element; throws
// NumericalFailure when no seed among a few retries gives a clean split.
std::vector<TwistedCharacter> twisted_characters(const Cochain& theta, std::uint64_t seed = 0);

// (1/|C|) sum_x chi(x) conj(psi(x))
ComplexApprox twisted_inner_product(const TwistedCharacter& chi, const TwistedCharacter& psi);

struct SimpleObject {
  Element a = 0;                // class representative
  int class_index = 0;
  int char_index = 0;           // index into twisted_characters of theta_a on C(a)
  Subgroup centralizer;
  TwistedCharacter chi;         // on C(a)
  std::int64_t dim = 1;         // [G : C(a)] chi(1)
  UnitScalar twist;             // chi(a) / chi(1)
  std::string label;
};

// Character of the simple on e_g x for x in C(g), zero elsewhere.
// Stored per (g, position of x in C(g)).
struct DoubleCharacterTable {
  GroupPtr group;
  std::vector<Subgroup> centralizers;                 // C(g) for each g
  std::vector<std::vector<std::vector<ComplexApprox>>> values;  // [simple][g][x position]
};

struct DoubleData {
  TwistedContext ctx;
  std::uint64_t seed = 0;
  std::vector<SimpleObject> simples;   // unit first, then (dim, twist, class rep, char index)
  DoubleCharacterTable characters;
  FusionTensor fusion;
  ModularData md;                      // S~ exact from fusion and balancing
};

// Simples of Rep(D^omega(G)): one per (class, twisted irreducible of C(a)).
// Throws NotAScalar if chi(a) is not a scalar multiple of the degree.
std::vector<SimpleObject> simples(const TwistedContext& ctx, std::uint64_t seed = 0);

DoubleCharacterTable double_characters(const TwistedContext& ctx, const std::vector<SimpleObject>& s);

// N_ij^k from characters of tensor products; throws NotIntegral.
FusionTensor fusion_from_characters(const TwistedContext& ctx, const DoubleCharacterTable& chars);

// Full pipeline for Rep(D^omega(G)).
DoubleData compute_double(const TwistedContext& ctx, std::uint64_t seed = 0);

// Label of the simple current for each element of p.a (in a.elements() order);
// throws NotFound.
std::vector<int> identify_simple_currents(const DoubleData& dd, const AdmissiblePair& p);

struct RestrictedData {
  std::vector<int> kept;     // indices into the full data
  std::vector<int> currents; // indices into the full data
  ModularData md;
  FusionTensor fusion;       // the full fusion rules on the kept labels
};
// Keeps the simples j with S~_{a^, j} = d_j for every current; throws
// DimensionMismatch if the kept dimensions do not sum to |G|^2/|A|.
RestrictedData mueger_restrict(const DoubleData& dd, const std::vector<int>& currents);
RestrictedData restrict_to_pair(const DoubleData& dd, const AdmissiblePair& p);

std::vector<UnitScalar> sorted_twists(const ModularData& md);

// Fusion rules on a subset of labels closed under fusion; throws
// DimensionMismatch when some product leaves the subset.
FusionTensor restrict_fusion(const FusionTensor& n, const std::vector<int>& keep);

// Axioms that make sense with or without a nondegenerate S~: symmetry, the
// dims row, unit twist, nonnegative integral fusion with unit N_0j^k,
// balancing against the given fusion rules, twist orders and sum d^2.
// Verlinde agreement and the modular relation are added when S~ is
// invertible.
ValidationReport axiom_report(const ModularData& md, const FusionTensor& n, const ValidationOptions& opt);

struct Omega0Match {
  int candidate = 0;   // index into the candidate list
  int pair = 0;        // index into admissible_pairs(ctx, A)
  RestrictedData data;
};
// Every (candidate, pair) whose restricted T~ multiset equals target.
// Candidates without an admissible pair are skipped.
std::vector<Omega0Match> search_omega0(const GroupPtr& g, const std::vector<Cochain>& candidates, const Subgroup& a,
                                       const std::vector<UnitScalar>& target, std::uint64_t seed = 0);

// ord([omega]) |G|, the bound on twist orders.
std::int64_t fs_exponent_bound(const TwistedContext& ctx, std::optional<std::int64_t> class_order = std::nullopt);

}  // namespace twistlab
