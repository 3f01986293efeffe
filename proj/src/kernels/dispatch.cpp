#include "tatekit/kernels/fp.hpp"

#include <cstdlib>

namespace tatekit::kernels {

namespace {

struct Table {
  Backend backend;
  AxpyFn axpy;
  ScaleFn scale;
};

Table pick() {
  const char* force = std::getenv("TATEKIT_FORCE_SCALAR");
  if ((force == nullptr || *force == '\0' || *force == '0') && avx2::available()) {
    return {Backend::Avx2, &avx2::axpy_mod, &avx2::scale_mod};
  }
  return {Backend::Scalar, &scalar::axpy_mod, &scalar::scale_mod};
}

const Table& table() {
  static const Table t = pick();
  return t;
}

}  // namespace

Backend active_backend() { return table().backend; }

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p, std::size_t n) {
  table().axpy(y, x, a, p, n);
}

void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n) { table().scale(y, a, p, n); }

}  // namespace tatekit::kernels
