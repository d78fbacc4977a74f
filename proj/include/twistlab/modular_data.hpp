#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistlab/scalars.hpp"

namespace twistlab {

// Unnormalized modular data: T~ as unit scalars, S~ with S~_{0j} = d_j.
// s_exact is empty when only the numeric matrix is known.
struct ModularData {
  std::vector<std::string> labels;
  std::vector<Cyclotomic> dims_exact;
  std::vector<UnitScalar> twists;
  std::vector<std::vector<ComplexApprox>> s;
  std::vector<std::vector<Cyclotomic>> s_exact;

  int rank() const { return static_cast<int>(twists.size()); }
  bool has_exact() const { return !s_exact.empty(); }
  std::vector<double> dims() const;
  double global_dimension() const;  // sum of d^2
  // Keeps the listed labels in the given order.
  ModularData sub(const std::vector<int>& keep) const;
  // Fills s from s_exact.
  void refresh_numeric();
};

struct FusionTensor {
  int rank = 0;
  std::vector<std::int64_t> n;  // n[(i * rank + j) * rank + k] = N_ij^k
  std::int64_t operator()(int i, int j, int k) const {
    return n[(static_cast<std::size_t>(i) * rank + j) * rank + k];
  }
  std::int64_t& at(int i, int j, int k) { return n[(static_cast<std::size_t>(i) * rank + j) * rank + k]; }
};

struct ValidationCheck {
  std::string name;
  enum class Status { Pass, Fail, Skip } status;
  double residual = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  const ValidationCheck* first_failure() const;
};

struct ValidationOptions {
  double tol = 1e-6;
  // Twist orders must divide this when positive.
  std::int64_t twist_order_bound = 0;
  // Expected sum of d^2 when positive.
  double expected_global_dimension = 0.0;
};

// Numeric checks: symmetry, dims row, unit twist, S S* = D^2 C with C a
// permutation of order <= 2, Verlinde integrality, the balancing equation,
// the modular relation (S T)^3 = p+ S^2 and the twist order bound.
ValidationReport validate(const ModularData& md, const ValidationOptions& opt = {});
// Throws ValidationFailure naming the first failed check.
void require_valid(const ModularData& md, const ValidationOptions& opt = {});

// Throws NotIntegral when a coefficient is not within 1e-6 of a nonnegative integer.
FusionTensor verlinde(const ModularData& md, double tol = 1e-6);

// Largest residual of S~_ij = sum_k N_ij^k d_k e(w_i + w_j - w_k).
double balancing_residual(const ModularData& md, const FusionTensor& n);
// S~ from fusion, dims and twists through the balancing equation (exact).
std::vector<std::vector<Cyclotomic>> s_from_balancing(const FusionTensor& n, const std::vector<Cyclotomic>& dims,
                                                      const std::vector<UnitScalar>& twists);

// Label bijection p with md2 label p[i] matching md1 label i in d, T~ and S~.
// Exact comparison when both carry exact S~, otherwise within tol.
std::optional<std::vector<int>> modular_data_equivalent(const ModularData& md1, const ModularData& md2,
                                                        double tol = 1e-8);

nlohmann::json modular_data_to_json(const ModularData& md);
ModularData modular_data_from_json(const nlohmann::json& j);

// Markdown tables of T~ and S~ in label order.
std::string modular_data_markdown(const ModularData& md);

}  // namespace twistlab
