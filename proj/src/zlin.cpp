#include "twistlab/zlin.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab {

namespace {

using Entry = std::pair<int, std::int64_t>;
using SparseRow = std::vector<Entry>;
using Op = SnfDecomposition::Op;
using OpKind = SnfDecomposition::OpKind;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimit("integer entry overflow during Smith normal form");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceLimit("integer entry overflow during Smith normal form");
  return r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

std::int64_t addmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = (static_cast<__int128>(a) + b) % m;
  return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

// s*a + t*b = g with g = gcd(a, b) > 0
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

// out = x + f*y on sorted sparse rows
void axpy(const SparseRow& x, std::int64_t f, const SparseRow& y, SparseRow& out) {
  out.clear();
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      if (x[i].second != 0) out.push_back(x[i]);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      std::int64_t v = checked_mul(f, y[j].second);
      if (v != 0) out.emplace_back(y[j].first, v);
      ++j;
    } else {
      std::int64_t v = checked_add(x[i].second, checked_mul(f, y[j].second));
      if (v != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
}

void combine_rows(SparseRow& x, SparseRow& y, const Op& op) {
  // x' = a x + b y ; y' = c x + d y
  SparseRow nx, ny;
  SparseRow sx;
  for (auto [k, v] : x) sx.emplace_back(k, checked_mul(op.a, v));
  axpy(sx, op.b, y, nx);
  sx.clear();
  for (auto [k, v] : x) sx.emplace_back(k, checked_mul(op.c, v));
  axpy(sx, op.d, y, ny);
  x.swap(nx);
  y.swap(ny);
}

void apply_op_to_rows(std::vector<SparseRow>& rows, const Op& op) {
  SparseRow tmp;
  switch (op.kind) {
    case OpKind::AddMul:
      axpy(rows[op.i], op.a, rows[op.j], tmp);
      rows[op.i].swap(tmp);
      break;
    case OpKind::Negate:
      for (auto& e : rows[op.i]) e.second = -e.second;
      break;
    case OpKind::Combine:
      combine_rows(rows[op.i], rows[op.j], op);
      break;
  }
}

class Clock {
 public:
  explicit Clock(const ResourceBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}
  void check(std::size_t bytes) const {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (s > budget_.max_seconds) throw ResourceLimit("Smith normal form exceeded the time budget");
    if (bytes > budget_.max_bytes) throw ResourceLimit("Smith normal form exceeded the memory budget");
  }

 private:
  ResourceBudget budget_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(int rows, int cols, std::vector<Triplet> entries) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidParameter("matrix dimensions must be nonnegative");
  for (const auto& t : entries)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) throw InvalidParameter("matrix entry out of range");
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  for (const auto& t : entries) {
    if (!entries_.empty() && entries_.back().row == t.row && entries_.back().col == t.col)
      entries_.back().value = checked_add(entries_.back().value, t.value);
    else
      entries_.push_back(t);
  }
  std::erase_if(entries_, [](const Triplet& t) { return t.value == 0; });
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  int r = static_cast<int>(dense.size());
  int c = r == 0 ? 0 : static_cast<int>(dense[0].size());
  std::vector<Triplet> e;
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(dense[i].size()) != c) throw InvalidParameter("ragged dense matrix");
    for (int j = 0; j < c; ++j)
      if (dense[i][j] != 0) e.push_back({i, j, dense[i][j]});
  }
  return IntMatrix(r, c, std::move(e));
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
  for (const auto& t : entries_) d[t.row][t.col] = t.value;
  return d;
}

std::vector<std::int64_t> IntMatrix::apply_mod(const std::vector<std::int64_t>& x, std::int64_t m) const {
  if (static_cast<int>(x.size()) != cols_) throw InvalidParameter("vector length does not match matrix columns");
  std::vector<std::int64_t> out(rows_, 0);
  for (const auto& t : entries_) out[t.row] = addmod(out[t.row], mulmod(mod64(t.value, m), x[t.col], m), m);
  return out;
}

std::string IntMatrix::to_triplet_text() const {
  std::ostringstream out;
  out << rows_ << ' ' << cols_ << ' ' << entries_.size() << '\n';
  for (const auto& t : entries_) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
  return out.str();
}

ResourceBudget ResourceBudget::defaults() {
  ResourceBudget b{std::size_t{4} << 30, 600.0};
  if (const char* env = std::getenv("TWISTLAB_RESOURCE_MB")) {
    char* end = nullptr;
    unsigned long long mb = std::strtoull(env, &end, 10);
    if (end != env && mb > 0) b.max_bytes = static_cast<std::size_t>(mb) << 20;
  }
  return b;
}

// ---------------------------------------------------------------- SNF

std::vector<std::int64_t> SnfDecomposition::diagonal() const {
  std::vector<std::int64_t> d;
  for (const auto& p : pivots_) d.push_back(p.d);
  return d;
}

void SnfDecomposition::apply_u_mod(std::vector<std::int64_t>& b, std::int64_t m) const {
  for (const auto& op : row_ops_) {
    switch (op.kind) {
      case OpKind::AddMul:
        b[op.i] = addmod(b[op.i], mulmod(op.a, b[op.j], m), m);
        break;
      case OpKind::Negate:
        b[op.i] = mod64(-b[op.i], m);
        break;
      case OpKind::Combine: {
        std::int64_t x = b[op.i], y = b[op.j];
        b[op.i] = addmod(mulmod(op.a, x, m), mulmod(op.b, y, m), m);
        b[op.j] = addmod(mulmod(op.c, x, m), mulmod(op.d, y, m), m);
        break;
      }
    }
  }
}

void SnfDecomposition::apply_v_mod(std::vector<std::int64_t>& y, std::int64_t m) const {
  for (auto it = col_ops_.rbegin(); it != col_ops_.rend(); ++it) {
    const Op& op = *it;
    switch (op.kind) {
      case OpKind::AddMul:
        y[op.j] = addmod(y[op.j], mulmod(op.a, y[op.i], m), m);
        break;
      case OpKind::Negate:
        y[op.i] = mod64(-y[op.i], m);
        break;
      case OpKind::Combine: {
        std::int64_t x = y[op.i], z = y[op.j];
        y[op.i] = addmod(mulmod(op.a, x, m), mulmod(op.c, z, m), m);
        y[op.j] = addmod(mulmod(op.b, x, m), mulmod(op.d, z, m), m);
        break;
      }
    }
  }
}

void SnfDecomposition::apply_v_inverse_mod(std::vector<std::int64_t>& y, std::int64_t m) const {
  for (const Op& op : col_ops_) {
    switch (op.kind) {
      case OpKind::AddMul:
        y[op.j] = addmod(y[op.j], mulmod(-op.a, y[op.i], m), m);
        break;
      case OpKind::Negate:
        y[op.i] = mod64(-y[op.i], m);
        break;
      case OpKind::Combine: {
        std::int64_t det = op.a * op.d - op.b * op.c;  // +-1
        std::int64_t x = y[op.i], z = y[op.j];
        y[op.i] = mulmod(det, addmod(mulmod(op.d, x, m), mulmod(-op.c, z, m), m), m);
        y[op.j] = mulmod(det, addmod(mulmod(-op.b, x, m), mulmod(op.a, z, m), m), m);
        break;
      }
    }
  }
}

std::vector<std::int64_t> SnfDecomposition::v_inverse_row_mod(int q, std::int64_t m) const {
  std::vector<std::int64_t> h(cols_, 0);
  h[q] = 1 % m;
  for (auto it = col_ops_.rbegin(); it != col_ops_.rend(); ++it) {
    const Op& op = *it;
    switch (op.kind) {
      case OpKind::AddMul:
        h[op.i] = addmod(h[op.i], mulmod(-op.a, h[op.j], m), m);
        break;
      case OpKind::Negate:
        h[op.i] = mod64(-h[op.i], m);
        break;
      case OpKind::Combine: {
        std::int64_t det = op.a * op.d - op.b * op.c;
        std::int64_t x = h[op.i], z = h[op.j];
        h[op.i] = mulmod(det, addmod(mulmod(op.d, x, m), mulmod(-op.b, z, m), m), m);
        h[op.j] = mulmod(det, addmod(mulmod(-op.c, x, m), mulmod(op.a, z, m), m), m);
        break;
      }
    }
  }
  return h;
}

bool SnfDecomposition::verify(const IntMatrix& d) const {
  if (d.rows() != rows_ || d.cols() != cols_) return false;
  std::vector<SparseRow> rows(rows_);
  for (const auto& t : d.entries()) rows[t.row].emplace_back(t.col, t.value);
  for (const auto& op : row_ops_) apply_op_to_rows(rows, op);
  std::vector<SparseRow> cols(cols_);
  for (int r = 0; r < rows_; ++r)
    for (auto [c, v] : rows[r]) cols[c].emplace_back(r, v);
  rows.clear();
  for (const auto& op : col_ops_) apply_op_to_rows(cols, op);
  std::vector<int> pivot_row(cols_, -1);
  std::vector<std::int64_t> pivot_d(cols_, 0);
  for (const auto& p : pivots_) {
    pivot_row[p.col] = p.row;
    pivot_d[p.col] = p.d;
  }
  for (int c = 0; c < cols_; ++c) {
    if (pivot_row[c] < 0) {
      if (!cols[c].empty()) return false;
    } else if (cols[c].size() != 1 || cols[c][0].first != pivot_row[c] || cols[c][0].second != pivot_d[c]) {
      return false;
    }
  }
  for (std::size_t k = 0; k + 1 < pivots_.size(); ++k)
    if (pivots_[k].d <= 0 || pivots_[k + 1].d % pivots_[k].d != 0) return false;
  return true;
}

SnfDecomposition smith_normal_form(const IntMatrix& dmat, const ResourceBudget& budget) {
  Clock clock(budget);
  SnfDecomposition out;
  const int nr = dmat.rows(), nc = dmat.cols();
  out.rows_ = nr;
  out.cols_ = nc;

  std::vector<SparseRow> rows(nr);
  std::vector<std::vector<int>> col_rows(nc);
  std::vector<int> col_count(nc, 0);
  for (const auto& t : dmat.entries()) {
    rows[t.row].emplace_back(t.col, t.value);
    col_rows[t.col].push_back(t.row);
    ++col_count[t.col];
  }
  std::vector<char> row_active(nr, 1), col_active(nc, 1);
  std::size_t live_entries = dmat.entries().size();
  auto bytes_in_use = [&]() {
    return live_entries * sizeof(Entry) * 2 + (out.row_ops_.size() + out.col_ops_.size()) * sizeof(Op);
  };

  auto entry_at = [&](int r, int c) -> std::int64_t {
    const auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int k) { return e.first < k; });
    return (it != row.end() && it->first == c) ? it->second : 0;
  };

  // Phase 1: eliminate with unit pivots, sparsest column first.
  std::vector<int> stamp(nr, -1);
  std::vector<std::pair<int, int>> order;
  SparseRow scratch;
  for (int step = 0;; ++step) {
    if ((step & 63) == 0) clock.check(bytes_in_use());
    order.clear();
    for (int c = 0; c < nc; ++c) {
      if (!col_active[c]) continue;
      if (col_count[c] == 0) {
        col_active[c] = 0;
        continue;
      }
      order.emplace_back(col_count[c], c);
    }
    std::sort(order.begin(), order.end());
    int pc = -1, pr = -1;
    for (auto [cnt, c] : order) {
      auto& lst = col_rows[c];
      std::vector<int> clean;
      clean.reserve(lst.size());
      for (int r : lst) {
        if (!row_active[r] || stamp[r] == c) continue;
        if (entry_at(r, c) == 0) continue;
        stamp[r] = c;
        clean.push_back(r);
      }
      for (int r : clean) stamp[r] = -1;
      lst.swap(clean);
      std::size_t best = SIZE_MAX;
      for (int r : lst) {
        std::int64_t v = entry_at(r, c);
        if ((v == 1 || v == -1) && rows[r].size() < best) {
          best = rows[r].size();
          pr = r;
        }
      }
      if (pr >= 0) {
        pc = c;
        break;
      }
    }
    if (pc < 0) break;

    const std::int64_t u = entry_at(pr, pc);
    const SparseRow prow = rows[pr];
    for (int r : col_rows[pc]) {
      if (r == pr) continue;
      std::int64_t f = checked_mul(-entry_at(r, pc), u);
      axpy(rows[r], f, prow, scratch);
      // bookkeeping of column counts along the pivot row support
      auto& old = rows[r];
      std::size_t i = 0, j = 0;
      while (j < prow.size()) {
        int col = prow[j].first;
        while (i < old.size() && old[i].first < col) ++i;
        bool had = i < old.size() && old[i].first == col;
        bool has = std::binary_search(scratch.begin(), scratch.end(), Entry{col, 0},
                                      [](const Entry& a, const Entry& b) { return a.first < b.first; });
        if (had && !has) {
          --col_count[col];
          --live_entries;
        } else if (!had && has) {
          ++col_count[col];
          ++live_entries;
          col_rows[col].push_back(r);
        }
        ++j;
      }
      old.swap(scratch);
      out.row_ops_.push_back({OpKind::AddMul, r, pr, f, 0, 0, 0});
    }
    for (auto [c, v] : prow) {
      --col_count[c];
      --live_entries;
      if (c == pc) continue;
      out.col_ops_.push_back({OpKind::AddMul, c, pc, checked_mul(-v, u), 0, 0, 0});
    }
    if (u == -1) out.row_ops_.push_back({OpKind::Negate, pr, 0, 0, 0, 0, 0});
    out.pivots_.push_back({pr, pc, 1});
    row_active[pr] = 0;
    col_active[pc] = 0;
    rows[pr].clear();
    rows[pr].shrink_to_fit();
    col_rows[pc].clear();
    col_rows[pc].shrink_to_fit();
  }

  // Phase 2: dense Smith form on whatever is left.
  std::vector<int> rmap, cmap;
  for (int r = 0; r < nr; ++r)
    if (row_active[r] && !rows[r].empty()) rmap.push_back(r);
  for (int c = 0; c < nc; ++c)
    if (col_active[c] && col_count[c] > 0) cmap.push_back(c);
  const int dr = static_cast<int>(rmap.size()), dc = static_cast<int>(cmap.size());
  clock.check(bytes_in_use() + static_cast<std::size_t>(dr) * dc * sizeof(std::int64_t));
  std::vector<int> cpos(nc, -1);
  for (int k = 0; k < dc; ++k) cpos[cmap[k]] = k;
  std::vector<std::vector<std::int64_t>> b(dr, std::vector<std::int64_t>(dc, 0));
  for (int k = 0; k < dr; ++k)
    for (auto [c, v] : rows[rmap[k]]) b[k][cpos[c]] = v;
  rows.clear();
  col_rows.clear();

  auto row_combine = [&](int t, int i, std::int64_t a, std::int64_t bb, std::int64_t c, std::int64_t d) {
    for (int j = 0; j < dc; ++j) {
      std::int64_t x = b[t][j], y = b[i][j];
      b[t][j] = checked_add(checked_mul(a, x), checked_mul(bb, y));
      b[i][j] = checked_add(checked_mul(c, x), checked_mul(d, y));
    }
    out.row_ops_.push_back({OpKind::Combine, rmap[t], rmap[i], a, bb, c, d});
  };
  auto col_combine = [&](int t, int j, std::int64_t a, std::int64_t bb, std::int64_t c, std::int64_t d) {
    for (int i = 0; i < dr; ++i) {
      std::int64_t x = b[i][t], y = b[i][j];
      b[i][t] = checked_add(checked_mul(a, x), checked_mul(bb, y));
      b[i][j] = checked_add(checked_mul(c, x), checked_mul(d, y));
    }
    out.col_ops_.push_back({OpKind::Combine, cmap[t], cmap[j], a, bb, c, d});
  };
  auto row_addmul = [&](int i, int t, std::int64_t f) {
    for (int j = 0; j < dc; ++j) b[i][j] = checked_add(b[i][j], checked_mul(f, b[t][j]));
    out.row_ops_.push_back({OpKind::AddMul, rmap[i], rmap[t], f, 0, 0, 0});
  };
  auto col_addmul = [&](int j, int t, std::int64_t f) {
    for (int i = 0; i < dr; ++i) b[i][j] = checked_add(b[i][j], checked_mul(f, b[i][t]));
    out.col_ops_.push_back({OpKind::AddMul, cmap[j], cmap[t], f, 0, 0, 0});
  };

  const int lim = std::min(dr, dc);
  for (int t = 0; t < lim; ++t) {
    clock.check(bytes_in_use() + static_cast<std::size_t>(dr) * dc * sizeof(std::int64_t));
    int bi = -1, bj = -1;
    std::int64_t bv = 0;
    for (int i = t; i < dr; ++i)
      for (int j = t; j < dc; ++j)
        if (b[i][j] != 0 && (bi < 0 || std::abs(b[i][j]) < bv)) {
          bi = i;
          bj = j;
          bv = std::abs(b[i][j]);
        }
    if (bi < 0) break;
    if (bi != t) row_combine(t, bi, 0, 1, 1, 0);
    if (bj != t) col_combine(t, bj, 0, 1, 1, 0);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < dr; ++i) {
        if (b[i][t] == 0) continue;
        std::int64_t p = b[t][t], q = b[i][t];
        if (q % p == 0) {
          row_addmul(i, t, -(q / p));
        } else {
          std::int64_t g, s, x;
          ext_gcd(p, q, g, s, x);
          row_combine(t, i, s, x, -(q / g), p / g);
        }
      }
      for (int j = t + 1; j < dc; ++j) {
        if (b[t][j] == 0) continue;
        std::int64_t p = b[t][t], q = b[t][j];
        if (q % p == 0) {
          col_addmul(j, t, -(q / p));
        } else {
          std::int64_t g, s, x;
          ext_gcd(p, q, g, s, x);
          col_combine(t, j, s, x, -(q / g), p / g);
          clean = false;  // column t may have refilled
        }
      }
      for (int i = t + 1; i < dr && clean; ++i)
        if (b[i][t] != 0) clean = false;
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < dr && bad < 0; ++i)
        for (int j = t + 1; j < dc; ++j)
          if (b[i][j] % b[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_addmul(t, bad, 1);
    }
    if (b[t][t] < 0) {
      for (int j = 0; j < dc; ++j) b[t][j] = -b[t][j];
      out.row_ops_.push_back({OpKind::Negate, rmap[t], 0, 0, 0, 0, 0});
    }
    out.pivots_.push_back({rmap[t], cmap[t], b[t][t]});
  }
  return out;
}

// ---------------------------------------------------------------- solving

QZVector QZVector::from_units(const std::vector<UnitScalar>& v) {
  QZVector out;
  for (const auto& u : v) out.denominator = lcm64(out.denominator, u.den());
  out.numerators.reserve(v.size());
  for (const auto& u : v) out.numerators.push_back(u.num() * (out.denominator / u.den()));
  return out;
}

std::vector<UnitScalar> QZVector::to_units() const {
  std::vector<UnitScalar> out;
  out.reserve(numerators.size());
  for (auto n : numerators) out.emplace_back(n, denominator);
  return out;
}

SolveResult solve_divisible(const SnfDecomposition& snf, const std::vector<UnitScalar>& b) {
  if (static_cast<int>(b.size()) != snf.rows()) throw InvalidParameter("right-hand side length does not match rows");
  QZVector v = QZVector::from_units(b);
  const std::int64_t m = v.denominator;
  std::vector<std::int64_t> c = v.numerators;
  snf.apply_u_mod(c, m);
  std::vector<char> is_pivot_row(snf.rows(), 0);
  std::int64_t dl = 1;
  for (const auto& p : snf.pivots()) {
    is_pivot_row[p.row] = 1;
    dl = lcm64(dl, p.d);
  }
  SolveResult res;
  for (int r = 0; r < snf.rows(); ++r)
    if (!is_pivot_row[r] && c[r] != 0) {
      res.obstruction = r;
      return res;
    }
  const std::int64_t mm = lcm64(m, 1) * dl;
  if (mm / dl != m) throw ResourceLimit("witness denominator overflow");
  std::vector<std::int64_t> y(snf.cols(), 0);
  for (const auto& p : snf.pivots()) y[p.col] = mulmod(c[p.row], dl / p.d, mm);
  snf.apply_v_mod(y, mm);
  QZVector w{mm, std::move(y)};
  res.witness = w.to_units();
  return res;
}

SolveResult solve_divisible(const IntMatrix& d, const std::vector<UnitScalar>& b) {
  return solve_divisible(smith_normal_form(d), b);
}

std::optional<std::vector<std::int64_t>> solve_mod(const SnfDecomposition& snf, const std::vector<std::int64_t>& b,
                                                   std::int64_t m) {
  if (static_cast<int>(b.size()) != snf.rows()) throw InvalidParameter("right-hand side length does not match rows");
  if (m < 1) throw InvalidParameter("modulus must be positive");
  std::vector<std::int64_t> c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = mod64(b[i], m);
  snf.apply_u_mod(c, m);
  std::vector<char> is_pivot_row(snf.rows(), 0);
  for (const auto& p : snf.pivots()) is_pivot_row[p.row] = 1;
  for (int r = 0; r < snf.rows(); ++r)
    if (!is_pivot_row[r] && c[r] != 0) return std::nullopt;
  std::vector<std::int64_t> y(snf.cols(), 0);
  for (const auto& p : snf.pivots()) {
    std::int64_t dm = mod64(p.d, m);
    std::int64_t g = gcd64(dm, m);
    if (g == 0) g = m;
    if (c[p.row] % g != 0) return std::nullopt;
    std::int64_t mg = m / g;
    if (mg == 1) continue;
    std::int64_t gg, s, t;
    ext_gcd(dm / g, mg, gg, s, t);
    y[p.col] = mulmod(mod64(c[p.row] / g, mg), mod64(s, mg), mg);
  }
  snf.apply_v_mod(y, m);
  return y;
}

CokernelStructure cokernel_structure(const SnfDecomposition& snf) {
  CokernelStructure out;
  out.free_rank = snf.rows() - snf.rank();
  out.kernel_divisible_rank = snf.cols() - snf.rank();
  for (const auto& p : snf.pivots()) {
    if (p.d == 1) continue;
    out.torsion.push_back(p.d);
    out.kernel_torsion.push_back(p.d);
    std::vector<std::int64_t> y(snf.cols(), 0);
    y[p.col] = 1;
    snf.apply_v_mod(y, p.d);
    out.kernel_generators.push_back(QZVector{p.d, std::move(y)}.to_units());
  }
  return out;
}

CokernelStructure cokernel_structure(const IntMatrix& d) { return cokernel_structure(smith_normal_form(d)); }

}  // namespace twistlab
