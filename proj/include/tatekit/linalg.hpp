#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tatekit {

// Dense matrix over Z/p (p prime, p < 2^16). Row operations go through the
// dispatched row kernels.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  std::uint32_t get(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t v) { data_[i * cols_ + j] = v % p_; }
  // Adds an integer (possibly negative) to an entry.
  void add(std::size_t i, std::size_t j, std::int64_t v);
  std::uint32_t* row(std::size_t i) { return data_.data() + i * cols_; }
  const std::uint32_t* row(std::size_t i) const { return data_.data() + i * cols_; }

  // In-place reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Basis of {x : M x = 0}.
  std::vector<std::vector<std::uint32_t>> nullspace() const;
  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& x) const;

 private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

// Nullspace of a dense matrix over an exact field, by Gauss-Jordan elimination.
// F must provide ==, +, -, * and /.
template <class F>
std::vector<std::vector<F>> exact_nullspace(std::vector<std::vector<F>> m, std::size_t cols, const F& zero,
                                            const F& one) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c] == zero) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const F inv = one / m[r][c];
    for (auto& v : m[r]) v = v * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == zero) continue;
      const F factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<F>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(cols, zero);
    v[free] = one;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = zero - m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace tatekit
