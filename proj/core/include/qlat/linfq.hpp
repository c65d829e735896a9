#pragma once

// Exact linear algebra over prime fields F_p, plus polynomial arithmetic
// over F_2.  Matrices over F_2 keep one 64-bit word per row; everything else
// stores residues directly.  All operations are exact; inverting a singular
// matrix throws singular_matrix_error carrying the rank.

#include <cstdint>
#include <string>
#include <vector>

#include "qlat/common.hpp"

namespace qlat {

class FqMatrix {
 public:
  FqMatrix() : p_(2), rows_(0), cols_(0) {}
  FqMatrix(int p, int rows, int cols);
  static FqMatrix identity(int p, int n);
  static FqMatrix from_rows(int p, const std::vector<std::vector<int>>& rows);

  int modulus() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  int at(int i, int j) const;
  void set(int i, int j, int v);

  // p == 2 only: the packed row, bit j = entry (i, j).
  std::uint64_t row_bits(int i) const;
  void set_row_bits(int i, std::uint64_t bits);

  FqMatrix add(const FqMatrix& o) const;
  FqMatrix sub(const FqMatrix& o) const;
  FqMatrix neg() const;
  FqMatrix mul(const FqMatrix& o) const;
  std::vector<int> mul_vec(const std::vector<int>& v) const;
  std::uint64_t mul_bits(std::uint64_t v) const;  // p == 2 only
  FqMatrix pow(std::uint64_t e) const;

  FqMatrix inv() const;  // throws singular_matrix_error
  int rank() const;
  FqMatrix kernel() const;      // rows form a basis of { v : A v = 0 }
  FqMatrix row_space() const;   // reduced row-echelon basis of the row space
  bool is_identity() const;
  bool is_zero() const;
  // Multiplicative order; throws capacity_error beyond the cap.
  std::uint64_t order(std::uint64_t cap = 1u << 20) const;

  bool operator==(const FqMatrix& o) const;
  bool operator!=(const FqMatrix& o) const { return !(*this == o); }
  std::uint64_t hash_key() const;
  std::string str() const;

 private:
  int p_, rows_, cols_;
  std::vector<int> a_;             // p > 2, row-major
  std::vector<std::uint64_t> b_;   // p == 2, one word per row
  void check_compatible(const FqMatrix& o) const;
};

// Eigenspace of A for eigenvalue 1, i.e. ker(A - I); rows form a basis.
FqMatrix fix_space(const FqMatrix& a);

// Direct sum of square blocks (all over the same field).
FqMatrix block_diag(const std::vector<FqMatrix>& blocks);

// Polynomials over F_2, little-endian bit-packed coefficients.
class F2Poly {
 public:
  F2Poly() = default;  // zero polynomial
  static F2Poly one();
  static F2Poly monomial(int d);
  // Coefficient bitmask, bit i = coefficient of x^i (degree <= 63).
  static F2Poly from_bits(std::uint64_t bits);
  static F2Poly x_pow_p_plus_1(int p);  // x^p + 1  (== x^p - 1 over F_2)

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return degree() < 0; }
  bool is_one() const { return degree() == 0; }
  bool coeff(int i) const;
  void set_coeff(int i, bool v);

  F2Poly add(const F2Poly& o) const;
  F2Poly mul(const F2Poly& o) const;
  // Quotient and remainder; divisor must be nonzero.
  std::pair<F2Poly, F2Poly> divmod(const F2Poly& d) const;
  bool divisible_by(const F2Poly& d) const;

  // Evaluate at a square F_2 matrix (Horner).
  FqMatrix eval(const FqMatrix& m) const;

  bool operator==(const F2Poly& o) const { return w_ == o.w_; }
  bool operator!=(const F2Poly& o) const { return !(*this == o); }
  bool operator<(const F2Poly& o) const;  // by degree, then lexicographic
  std::string str() const;

 private:
  std::vector<std::uint64_t> w_;
  void trim();
};

// All monic irreducibles over F_2 of degree 1..max_deg, by trial division.
std::vector<F2Poly> irreducible_sieve(int max_deg);

// Distinct irreducible factors of x^p - 1 over F_2, sorted; p an odd prime.
// Factors of degree d are only certified when d/2 lies within the sieve
// range (degree 8); beyond that a capacity_error is thrown.
std::vector<F2Poly> factor_x_pow_p_minus_1(int p);

// Companion matrix over F_2 of a monic polynomial.
FqMatrix companion(const F2Poly& f);

}  // namespace qlat
