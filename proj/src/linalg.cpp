#include "tatekit/linalg.hpp"

#include "tatekit/error.hpp"
#include "tatekit/kernels/fp.hpp"
#include "tatekit/mpoly.hpp"

#include <algorithm>

namespace tatekit {

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (p < 2 || p >= kernels::kMaxModulus) throw PreconditionFailed("matrix modulus out of range");
}

void FpMatrix::add(std::size_t i, std::size_t j, std::int64_t v) {
  const auto p = static_cast<std::int64_t>(p_);
  auto& slot = data_[i * cols_ + j];
  slot = static_cast<std::uint32_t>(((slot + v) % p + p) % p);
}

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t sel = r;
    while (sel < rows_ && get(sel, c) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != r) std::swap_ranges(row(sel), row(sel) + cols_, row(r));
    kernels::scale_mod(row(r), inv_mod(get(r, c), p_), p_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || get(i, c) == 0) continue;
      kernels::axpy_mod(row(i), row(r), p_ - get(i, c), p_, cols_);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<std::uint32_t>> FpMatrix::nullspace() const {
  FpMatrix m = *this;
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols_, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p_ - m.get(i, free)) % p_;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::uint32_t> FpMatrix::apply(const std::vector<std::uint32_t>& x) const {
  std::vector<std::uint32_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = (acc + static_cast<std::uint64_t>(get(i, j)) * x[j]) % p_;
    out[i] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

}  // namespace tatekit
