#include "tatekit/kernels/fp.hpp"

namespace tatekit::kernels::scalar {

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<std::uint32_t>((y[i] + static_cast<std::uint64_t>(a) * x[i]) % p);
  }
}

void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * y[i] % p);
}

}  // namespace tatekit::kernels::scalar
