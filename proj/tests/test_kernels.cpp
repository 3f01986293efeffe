#include <doctest.h>

#include "tatekit/kernels/fp.hpp"
#include "tatekit/linalg.hpp"
#include "tatekit/rational.hpp"

#include <random>

using namespace tatekit;

namespace {

std::vector<std::uint32_t> random_row(std::mt19937& rng, std::size_t n, std::uint32_t p) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = rng() % p;
  return v;
}

}  // namespace

TEST_CASE("avx2 row kernels agree with the scalar reference") {
  if (!kernels::avx2::available()) {
    MESSAGE("avx2 not available on this host; comparing scalar with itself");
  }
  std::mt19937 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u, 251u, 257u, 32749u, 65521u, 65519u}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 101u}) {
      for (int rep = 0; rep < 20; ++rep) {
        const auto x = random_row(rng, n, p);
        auto y1 = random_row(rng, n, p);
        auto y2 = y1;
        const std::uint32_t a = rep == 0 ? p - 1 : rng() % p;
        kernels::scalar::axpy_mod(y1.data(), x.data(), a, p, n);
        kernels::avx2::axpy_mod(y2.data(), x.data(), a, p, n);
        CHECK(y1 == y2);
        kernels::scalar::scale_mod(y1.data(), a, p, n);
        kernels::avx2::scale_mod(y2.data(), a, p, n);
        CHECK(y1 == y2);
        for (auto v : y1) CHECK(v < p);
      }
    }
  }
}

TEST_CASE("extreme operands") {
  const std::uint32_t p = 65521;
  std::vector<std::uint32_t> x(16, p - 1), y1(16, p - 1), y2(16, p - 1);
  kernels::scalar::axpy_mod(y1.data(), x.data(), p - 1, p, 16);
  kernels::avx2::axpy_mod(y2.data(), x.data(), p - 1, p, 16);
  CHECK(y1 == y2);
  CHECK(y1[0] == 0);  // (p-1) + (p-1)^2 = p(p-1)
}

TEST_CASE("dispatch reports a backend") {
  const auto b = kernels::active_backend();
  CHECK((b == kernels::Backend::Scalar || b == kernels::Backend::Avx2));
  CHECK(std::string(kernels::backend_name(b)).size() > 0);
}

namespace {

std::size_t rational_rank(std::vector<std::vector<Rational>> m, std::size_t cols) {
  return cols - exact_nullspace(std::move(m), cols, Rational(0), Rational(1)).size();
}

}  // namespace

TEST_CASE("modular rank matches exact rank for small-entry matrices") {
  std::mt19937 rng(9);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    FpMatrix fp(rows, cols, 65521);
    std::vector<std::vector<Rational>> q(rows, std::vector<Rational>(cols));
    // Planted dependencies: row 0 repeated as a combination when rows > 2.
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const int v = static_cast<int>(rng() % 5) - 2;
        q[i][j] = i + 1 == rows && rows > 2 ? q[0][j] * 2 - q[1][j] : Rational(v);
      }
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) fp.add(i, j, q[i][j].get_num().get_si());
    CHECK(fp.rank() == rational_rank(q, cols));
    for (const auto& v : fp.nullspace()) {
      for (auto e : fp.apply(v)) CHECK(e == 0);
    }
  }
}

TEST_CASE("exact nullspace vectors annihilate the matrix") {
  std::vector<std::vector<Rational>> m = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  const auto basis = exact_nullspace(m, 3, Rational(0), Rational(1));
  REQUIRE(basis.size() == 1);
  for (const auto& row : m) {
    Rational acc = 0;
    for (std::size_t j = 0; j < 3; ++j) acc += row[j] * basis[0][j];
    CHECK(acc == 0);
  }
}
