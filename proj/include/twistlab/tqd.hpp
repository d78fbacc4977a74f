#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistlab/coh.hpp"
#include "twistlab/grp.hpp"
#include "twistlab/pointed.hpp"

namespace twistlab {

// A group with a validated 3-cocycle. theta_g(x,y) and gamma_g(x,y) are read
// directly from omega; the arity-2 cochains are memoized per g.
class TwistedContext {
 public:
  // Throws NotACocycle.
  TwistedContext(GroupPtr g, Cochain omega);

  const GroupPtr& group() const { return group_; }
  const Cochain& omega() const { return omega_; }

  // omega(g,x,y) + omega(x,y,g^{xy}) - omega(x,g^x,y)
  UnitScalar theta(Element g, Element x, Element y) const;
  // omega(x,y,g) + omega(g,x^g,y^g) - omega(x,g,y^g)
  UnitScalar gamma(Element g, Element x, Element y) const;

  const Cochain& theta_cochain(Element g) const;  // on all of G
  const Cochain& gamma_cochain(Element g) const;
  // theta_g restricted to C(g), a 2-cocycle there.
  Cochain theta_on_centralizer(Element g, const Subgroup& centralizer) const;

 private:
  struct Memo {
    std::mutex mu;
    std::vector<std::unique_ptr<Cochain>> theta, gamma;
  };
  GroupPtr group_;
  Cochain omega_;
  std::shared_ptr<Memo> memo_;  // shared by copies
};

// Z_omega(G) = { g in Z(G) : gamma_g is a coboundary }
Subgroup z_omega(const TwistedContext& ctx);

struct AdmissiblePair {
  Subgroup a;
  std::vector<Cochain> tau;          // tau[i] for a.elements()[i], arity 1 on G
  std::vector<LinearCharacter> nu;   // nu[i] for a.elements()[i]
  std::string provenance = "solved";
};

// beta[i][j] = beta_tau(a_i, a_j) as a function on G; throws NotACharacter
// when some value is not a linear character.
std::vector<std::vector<LinearCharacter>> beta_tau(const TwistedContext& ctx, const Subgroup& a,
                                                   const std::vector<Cochain>& tau);

// All |Hom(A, G^)| pairs (tau, nu + f) for one solved tau, sorted by the
// coordinates of nu. Throws NotInZOmega, ExtensionDoesNotSplit, PreconditionError.
std::vector<AdmissiblePair> admissible_pairs(const TwistedContext& ctx, const Subgroup& a);

// delta tau_a = theta_a and delta nu = beta_tau.
bool is_admissible_pair(const TwistedContext& ctx, const AdmissiblePair& p);

struct InducedPair {
  TwistedContext ctx;
  AdmissiblePair pair;
};
// Restriction of the pair and of omega to a subgroup H with A <= H <= G.
InducedPair induce_pair(const TwistedContext& ctx, const AdmissiblePair& p, const Subgroup& h);

struct BraidingScalars {
  // d[i][j] = tau_{a_j}(a_i) - nu(a_j)(a_i), indices into a.elements()
  std::vector<std::vector<UnitScalar>> d;
  MetricGroup q;  // q(a) = d(a,a) on A; original_index() maps to a.elements() positions
  std::vector<std::vector<UnitScalar>> b;  // delta q, indexed like d
};
BraidingScalars braiding_scalars(const AdmissiblePair& p);

enum class BKind { Modular, SuperModular, TannakianCenter, PartiallyDegenerate };
std::string to_string(BKind k);

struct BClassification {
  BKind kind;
  std::vector<UnitScalar> q_values;  // q at a.elements()
};
BClassification classify(const AdmissiblePair& p);

// Least n >= 1 with n theta_g a coboundary on C(g).
int theta_class_order(const TwistedContext& ctx, Element g);

// Central group-likes of D^omega(G) for cyclic G: pairs (x, rho) with
// delta rho = theta_x, multiplied by (x, rho)(y, rho') = (xy, rho + rho' + theta_.(x,y)).
struct Gamma0 {
  std::vector<Element> base;                 // x of each element
  std::vector<std::vector<UnitScalar>> rho;  // rho of each element, indexed by G
  std::vector<std::vector<int>> table;
  MetricGroup form;               // q(x, rho) = rho(x) on all of Gamma0
  std::vector<int> currents;      // (a, tau_a - nu(a)) for a in A
  std::vector<int> complement;    // orthogonal complement of the currents
  MetricGroup complement_form;    // q restricted to the complement

  int size() const { return static_cast<int>(base.size()); }
  // Index of (x, rho); throws NotFound.
  int index_of(Element x, const std::vector<UnitScalar>& rho) const;
  int power(int u, std::int64_t k) const;
};
// Throws PreconditionError for non-cyclic G.
Gamma0 gamma0_pointed(const TwistedContext& ctx, const AdmissiblePair& p);

nlohmann::json admissible_pair_to_json(const AdmissiblePair& p);
AdmissiblePair admissible_pair_from_json(const nlohmann::json& j, const GroupPtr& g);

}  // namespace twistlab
