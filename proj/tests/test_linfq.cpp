#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "qlat/linfq.hpp"

using namespace qlat;

namespace {

// Independent order oracle: plain repeated multiplication.
std::uint64_t order_oracle(const FqMatrix& a) {
  FqMatrix m = a;
  FqMatrix id = FqMatrix::identity(a.modulus(), a.rows());
  for (std::uint64_t k = 1;; ++k) {
    if (m == id) return k;
    m = m.mul(a);
    REQUIRE(k < 100000);
  }
}

FqMatrix random_matrix(int p, int n, std::mt19937_64& rng) {
  FqMatrix m(p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, static_cast<int>(rng() % p));
  return m;
}

FqMatrix random_invertible(int p, int n, std::mt19937_64& rng) {
  for (;;) {
    FqMatrix m = random_matrix(p, n, rng);
    if (m.rank() == n) return m;
  }
}

// Brute irreducibility oracle: trial division by every monic polynomial of
// degree 1..deg/2 (independent of the library's sieve).
bool irreducible_oracle(const F2Poly& f) {
  int d = f.degree();
  if (d < 1) return false;
  for (int e = 1; 2 * e <= d; ++e)
    for (std::uint64_t low = 0; low < (1ULL << e); ++low) {
      F2Poly g = F2Poly::from_bits(low | (1ULL << e));
      if (f.divisible_by(g)) return false;
    }
  return true;
}

int count_fixed_vectors(const FqMatrix& a) {
  // Brute count of solutions of Av = v, for cross-checking fix_space.
  int p = a.modulus(), n = a.rows();
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  int cnt = 0;
  std::vector<int> v(n);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) { v[i] = static_cast<int>(c % p); c /= p; }
    if (a.mul_vec(v) == v) ++cnt;
  }
  return cnt;
}

}  // namespace

TEST_CASE("matrix multiply and inverse round-trip") {
  std::mt19937_64 rng(12345);
  for (int p : {2, 3, 5, 7, 13}) {
    for (int n : {1, 2, 3, 4, 6}) {
      for (int rep = 0; rep < 20; ++rep) {
        FqMatrix a = random_invertible(p, n, rng);
        CHECK(a.mul(a.inv()) == FqMatrix::identity(p, n));
        CHECK(a.inv().mul(a) == FqMatrix::identity(p, n));
      }
    }
  }
}

TEST_CASE("singular inversion reports the rank") {
  FqMatrix a = FqMatrix::from_rows(5, {{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
  CHECK(a.rank() == 2);
  try {
    a.inv();
    FAIL("expected singular_matrix_error");
  } catch (const singular_matrix_error& e) {
    CHECK(e.rank == 2);
  }
}

TEST_CASE("orders of small rotation matrices") {
  FqMatrix rot = FqMatrix::from_rows(7, {{0, -1}, {1, 0}});
  CHECK(rot.order() == 4);
  CHECK(order_oracle(rot) == 4);
  CHECK(FqMatrix::identity(7, 2).order() == 1);
  FqMatrix minus_id = FqMatrix::identity(7, 2).neg();
  CHECK(minus_id.order() == 2);

  std::mt19937_64 rng(777);
  for (int p : {3, 5, 7}) {
    for (int rep = 0; rep < 10; ++rep) {
      FqMatrix a = random_invertible(p, 3, rng);
      CHECK(a.order() == order_oracle(a));
    }
  }
}

TEST_CASE("kernel and fix_space against brute enumeration") {
  std::mt19937_64 rng(99);
  for (int p : {2, 3, 5}) {
    for (int rep = 0; rep < 25; ++rep) {
      FqMatrix a = random_matrix(p, 3, rng);
      FqMatrix ker = a.kernel();
      // Every basis row really lies in the kernel.
      for (int i = 0; i < ker.rows(); ++i) {
        std::vector<int> v(3);
        for (int j = 0; j < 3; ++j) v[j] = ker.at(i, j);
        std::vector<int> zero(3, 0);
        CHECK(a.mul_vec(v) == zero);
      }
      CHECK(ker.rank() == ker.rows());            // independent rows
      CHECK(a.rank() + ker.rows() == 3);          // rank-nullity
      // fix_space dimension matches a brute fixed-vector count.
      FqMatrix fs = fix_space(a);
      int fixed = count_fixed_vectors(a);
      long long expect = 1;
      for (int i = 0; i < fs.rows(); ++i) expect *= p;
      CHECK(fixed == expect);
    }
  }
}

TEST_CASE("factor x^p - 1 for the working primes") {
  auto f3 = factor_x_pow_p_minus_1(3);
  REQUIRE(f3.size() == 2);
  CHECK(f3[0] == F2Poly::from_bits(0b11));      // x + 1
  CHECK(f3[1] == F2Poly::from_bits(0b111));     // x^2 + x + 1

  auto f7 = factor_x_pow_p_minus_1(7);
  REQUIRE(f7.size() == 3);
  CHECK(f7[0] == F2Poly::from_bits(0b11));      // x + 1
  CHECK(f7[1] == F2Poly::from_bits(0b1011));    // x^3 + x + 1
  CHECK(f7[2] == F2Poly::from_bits(0b1101));    // x^3 + x^2 + 1

  auto f5 = factor_x_pow_p_minus_1(5);
  REQUIRE(f5.size() == 2);
  CHECK(f5[1] == F2Poly::from_bits(0b11111));   // x^4 + x^3 + x^2 + x + 1

  for (int p : {3, 5, 7, 11, 13, 17, 31, 127}) {
    auto fs = factor_x_pow_p_minus_1(p);
    // Product reconstructs x^p + 1.
    F2Poly prod = F2Poly::one();
    for (const auto& g : fs) prod = prod.mul(g);
    CHECK(prod == F2Poly::x_pow_p_plus_1(p));
    // Distinct irreducible factors; non-linear ones share degree ord_p(2).
    int d = 0;
    for (size_t i = 1; i < fs.size(); ++i) {
      CHECK(fs[i - 1] < fs[i]);
      if (fs[i].degree() <= 8) CHECK(irreducible_oracle(fs[i]));
      if (d == 0) d = fs[i].degree();
      CHECK(fs[i].degree() == d);
    }
    int ord = 1, pow2 = 2 % p;
    while (pow2 != 1) { pow2 = pow2 * 2 % p; ++ord; }
    CHECK(d == ord);
    CHECK(static_cast<int>(fs.size()) == 1 + (p - 1) / d);
  }
}

TEST_CASE("factorization argument and capacity errors") {
  CHECK_THROWS_AS(factor_x_pow_p_minus_1(2), std::invalid_argument);
  CHECK_THROWS_AS(factor_x_pow_p_minus_1(9), std::invalid_argument);
  CHECK_THROWS_AS(factor_x_pow_p_minus_1(23), capacity_error);
}

TEST_CASE("companion matrices and block sums") {
  F2Poly g = F2Poly::from_bits(0b111);  // x^2 + x + 1
  FqMatrix c = companion(g);
  CHECK(c == FqMatrix::from_rows(2, {{0, 1}, {1, 1}}));
  CHECK(c.order() == 3);
  CHECK(g.eval(c).is_zero());  // Cayley-Hamilton for the companion

  for (int p : {3, 5, 7, 17, 31, 127}) {
    auto fs = factor_x_pow_p_minus_1(p);
    FqMatrix comp = companion(fs.back());
    CHECK(comp.order() == static_cast<std::uint64_t>(p));
    CHECK(fs.back().eval(comp).is_zero());
    CHECK(fix_space(comp).rows() == 0);  // no eigenvalue 1

    FqMatrix two = block_diag({comp, comp});
    CHECK(two.order() == static_cast<std::uint64_t>(p));
    CHECK(fix_space(two).rows() == 0);
  }
}

TEST_CASE("involutions over odd fields split into +/- eigenspaces") {
  // Exhaustive for n = 2, p in {3,5,7} and n = 3, p = 3; the full sweep runs
  // in the acceptance suite.
  auto check_involutions = [](int p, int n) {
    long long total = 1;
    for (int i = 0; i < n * n; ++i) total *= p;
    int seen = 0;
    for (long long code = 0; code < total; ++code) {
      FqMatrix a(p, n, n);
      long long c = code;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) { a.set(i, j, static_cast<int>(c % p)); c /= p; }
      if (!(a.mul(a) == FqMatrix::identity(p, n))) continue;
      ++seen;
      int dplus = fix_space(a).rows();
      int dminus = fix_space(a.neg()).rows();
      REQUIRE(dplus + dminus == n);
    }
    CHECK(seen > 0);
  };
  check_involutions(3, 2);
  check_involutions(5, 2);
  check_involutions(7, 2);
  check_involutions(3, 3);

  // Random n = 4 instances: conjugates of +/-1 diagonals must pass the test.
  std::mt19937_64 rng(4242);
  for (int p : {3, 5, 7}) {
    for (int rep = 0; rep < 20; ++rep) {
      FqMatrix d(p, 4, 4);
      for (int i = 0; i < 4; ++i) d.set(i, i, (rng() & 1) ? 1 : p - 1);
      FqMatrix t = random_invertible(p, 4, rng);
      FqMatrix a = t.mul(d).mul(t.inv());
      REQUIRE(a.mul(a) == FqMatrix::identity(p, 4));
      CHECK(fix_space(a).rows() + fix_space(a.neg()).rows() == 4);
    }
  }
}

TEST_CASE("F_2 fast paths agree with generic entries") {
  std::mt19937_64 rng(31337);
  for (int rep = 0; rep < 50; ++rep) {
    FqMatrix a = random_matrix(2, 6, rng), b = random_matrix(2, 6, rng);
    FqMatrix c = a.mul(b);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        int acc = 0;
        for (int k = 0; k < 6; ++k) acc ^= a.at(i, k) & b.at(k, j);
        CHECK(c.at(i, j) == acc);
      }
    std::uint64_t v = rng() & 0x3f;
    std::uint64_t w = a.mul_bits(v);
    for (int i = 0; i < 6; ++i) {
      int acc = 0;
      for (int k = 0; k < 6; ++k) acc ^= a.at(i, k) & static_cast<int>((v >> k) & 1);
      CHECK(static_cast<int>((w >> i) & 1) == acc);
    }
  }
}
