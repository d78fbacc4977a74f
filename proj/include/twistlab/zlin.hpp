#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/scalars.hpp"

namespace twistlab {

struct Triplet {
  int row;
  int col;
  std::int64_t value;
};

// Sparse integer matrix; duplicate coordinates are summed and zeros dropped on
// construction, so entries() is sorted by (row, col) and deduplicated.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, std::vector<Triplet> entries);
  static IntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  std::vector<std::vector<std::int64_t>> to_dense() const;
  // Multiplies by a Q/Z vector given as numerators over a common denominator.
  std::vector<std::int64_t> apply_mod(const std::vector<std::int64_t>& x, std::int64_t m) const;
  // "rows cols nnz" header, then one "r c v" line per entry.
  std::string to_triplet_text() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Triplet> entries_;
};

struct ResourceBudget {
  std::size_t max_bytes;
  double max_seconds;
  // 4 GiB / 10 minutes, overridden by TWISTLAB_RESOURCE_MB.
  static ResourceBudget defaults();
};

struct SnfPivot {
  int row;
  int col;
  std::int64_t d;
};

// U * D * V = S with U, V unimodular. U and V are kept as logs of elementary
// operations, so they are only ever applied to vectors.
class SnfDecomposition {
 public:
  enum class OpKind : std::uint8_t { AddMul, Negate, Combine };
  struct Op {
    OpKind kind;
    int i;  // target (AddMul) or first index
    int j;  // source (AddMul) or second index
    std::int64_t a, b, c, d;  // AddMul uses a as the factor
  };

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  // Sorted so that the d values form a divisibility chain.
  const std::vector<SnfPivot>& pivots() const { return pivots_; }
  std::vector<std::int64_t> diagonal() const;

  // All vector arithmetic is modulo m, entries in [0, m).
  void apply_u_mod(std::vector<std::int64_t>& b, std::int64_t m) const;
  void apply_v_mod(std::vector<std::int64_t>& y, std::int64_t m) const;
  void apply_v_inverse_mod(std::vector<std::int64_t>& y, std::int64_t m) const;
  // Row q of V^{-1}, i.e. e_q^T V^{-1}.
  std::vector<std::int64_t> v_inverse_row_mod(int q, std::int64_t m) const;

  // Replays the logs on D and checks that the result is exactly diagonal.
  bool verify(const IntMatrix& d) const;

  std::size_t row_op_count() const { return row_ops_.size(); }
  std::size_t col_op_count() const { return col_ops_.size(); }

 private:
  friend SnfDecomposition smith_normal_form(const IntMatrix&, const ResourceBudget&);
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SnfPivot> pivots_;
  std::vector<Op> row_ops_;
  std::vector<Op> col_ops_;
};

SnfDecomposition smith_normal_form(const IntMatrix& d, const ResourceBudget& budget = ResourceBudget::defaults());

// A vector in (Q/Z)^n as integer numerators over one denominator.
struct QZVector {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;

  static QZVector from_units(const std::vector<UnitScalar>& v);
  std::vector<UnitScalar> to_units() const;
};

struct SolveResult {
  std::optional<std::vector<UnitScalar>> witness;
  int obstruction = -1;  // first row of U*b that is nonzero outside the image
  explicit operator bool() const { return witness.has_value(); }
};

// Solves D x = b over Q/Z.
SolveResult solve_divisible(const SnfDecomposition& snf, const std::vector<UnitScalar>& b);
SolveResult solve_divisible(const IntMatrix& d, const std::vector<UnitScalar>& b);

// Solves D x = b over Z/m; nullopt when there is no solution.
std::optional<std::vector<std::int64_t>> solve_mod(const SnfDecomposition& snf, const std::vector<std::int64_t>& b,
                                                   std::int64_t m);

struct CokernelStructure {
  // coker(D) = Z^rows / D Z^cols
  std::vector<std::int64_t> torsion;  // invariant factors > 1
  int free_rank = 0;
  // ker(D) on (Q/Z)^cols: finite part plus a divisible part of the given rank
  std::vector<std::int64_t> kernel_torsion;
  std::vector<std::vector<UnitScalar>> kernel_generators;
  int kernel_divisible_rank = 0;
};

CokernelStructure cokernel_structure(const SnfDecomposition& snf);
CokernelStructure cokernel_structure(const IntMatrix& d);

}  // namespace twistlab
