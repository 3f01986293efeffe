#pragma once

// Row kernels over Z/p for p < 2^16. Inputs must already be reduced mod p.

#include <cstddef>
#include <cstdint>

namespace tatekit::kernels {

enum class Backend { Scalar, Avx2 };

// y[i] = (y[i] + a * x[i]) mod p
using AxpyFn = void (*)(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p, std::size_t n);
// y[i] = (a * y[i]) mod p
using ScaleFn = void (*)(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n);

namespace scalar {
void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p, std::size_t n);
void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p, std::size_t n);
void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n);
}  // namespace avx2

// Picked once: AVX2 when the CPU has it, unless TATEKIT_FORCE_SCALAR is set.
Backend active_backend();
const char* backend_name(Backend b);

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p, std::size_t n);
void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n);

constexpr std::uint32_t kMaxModulus = 1u << 16;

}  // namespace tatekit::kernels
