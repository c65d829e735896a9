#include "qlat/linfq.hpp"

#include <algorithm>
#include <sstream>

namespace qlat {

namespace {

int mod_pow(int b, int e, int p) {
  long long r = 1, x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

int mod_inv(int a, int p) { return mod_pow(((a % p) + p) % p, p - 2, p); }

}  // namespace

FqMatrix::FqMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("FqMatrix: modulus must be prime");
  if (rows < 0 || cols < 0) throw std::invalid_argument("FqMatrix: negative shape");
  if (p == 2) {
    if (cols > 64) throw std::invalid_argument("FqMatrix: F_2 rows are single words (cols <= 64)");
    b_.assign(rows, 0);
  } else {
    a_.assign(static_cast<size_t>(rows) * cols, 0);
  }
}

FqMatrix FqMatrix::identity(int p, int n) {
  FqMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FqMatrix FqMatrix::from_rows(int p, const std::vector<std::vector<int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  FqMatrix m(p, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw std::invalid_argument("FqMatrix: ragged rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

int FqMatrix::at(int i, int j) const {
  if (p_ == 2) return static_cast<int>((b_[i] >> j) & 1u);
  return a_[static_cast<size_t>(i) * cols_ + j];
}

void FqMatrix::set(int i, int j, int v) {
  v %= p_;
  if (v < 0) v += p_;
  if (p_ == 2) {
    if (v)
      b_[i] |= (1ULL << j);
    else
      b_[i] &= ~(1ULL << j);
  } else {
    a_[static_cast<size_t>(i) * cols_ + j] = v;
  }
}

std::uint64_t FqMatrix::row_bits(int i) const {
  if (p_ != 2) throw std::logic_error("row_bits: F_2 only");
  return b_[i];
}

void FqMatrix::set_row_bits(int i, std::uint64_t bits) {
  if (p_ != 2) throw std::logic_error("set_row_bits: F_2 only");
  if (cols_ < 64) bits &= (1ULL << cols_) - 1;
  b_[i] = bits;
}

void FqMatrix::check_compatible(const FqMatrix& o) const {
  if (p_ != o.p_) throw std::invalid_argument("FqMatrix: modulus mismatch");
}

FqMatrix FqMatrix::add(const FqMatrix& o) const {
  check_compatible(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("FqMatrix: shape mismatch");
  FqMatrix r(p_, rows_, cols_);
  if (p_ == 2) {
    for (int i = 0; i < rows_; ++i) r.b_[i] = b_[i] ^ o.b_[i];
  } else {
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
  }
  return r;
}

FqMatrix FqMatrix::sub(const FqMatrix& o) const { return add(o.neg()); }

FqMatrix FqMatrix::neg() const {
  FqMatrix r = *this;
  if (p_ != 2)
    for (auto& v : r.a_) v = (p_ - v) % p_;
  return r;
}

FqMatrix FqMatrix::mul(const FqMatrix& o) const {
  check_compatible(o);
  if (cols_ != o.rows_) throw std::invalid_argument("FqMatrix: inner dimension mismatch");
  FqMatrix r(p_, rows_, o.cols_);
  if (p_ == 2) {
    for (int i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0, row = b_[i];
      while (row) {
        int k = __builtin_ctzll(row);
        row &= row - 1;
        acc ^= o.b_[k];
      }
      r.b_[i] = acc;
    }
  } else {
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        int aik = at(i, k);
        if (!aik) continue;
        for (int j = 0; j < o.cols_; ++j) {
          auto& dst = r.a_[static_cast<size_t>(i) * o.cols_ + j];
          dst = static_cast<int>((dst + static_cast<long long>(aik) * o.at(k, j)) % p_);
        }
      }
  }
  return r;
}

std::vector<int> FqMatrix::mul_vec(const std::vector<int>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("mul_vec: size mismatch");
  std::vector<int> r(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    long long acc = 0;
    for (int j = 0; j < cols_; ++j) acc += static_cast<long long>(at(i, j)) * v[j];
    r[i] = static_cast<int>(acc % p_);
  }
  return r;
}

std::uint64_t FqMatrix::mul_bits(std::uint64_t v) const {
  if (p_ != 2) throw std::logic_error("mul_bits: F_2 only");
  std::uint64_t r = 0;
  for (int i = 0; i < rows_; ++i)
    if (__builtin_parityll(b_[i] & v)) r |= 1ULL << i;
  return r;
}

FqMatrix FqMatrix::pow(std::uint64_t e) const {
  if (!square()) throw std::invalid_argument("pow: square matrices only");
  FqMatrix base = *this, r = identity(p_, rows_);
  while (e) {
    if (e & 1) r = r.mul(base);
    base = base.mul(base);
    e >>= 1;
  }
  return r;
}

FqMatrix FqMatrix::inv() const {
  if (!square()) throw std::invalid_argument("inv: square matrices only");
  int n = rows_;
  if (p_ == 2) {
    std::vector<std::uint64_t> a(b_), id(n);
    for (int i = 0; i < n; ++i) id[i] = 1ULL << i;
    int rank = 0;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int i = rank; i < n; ++i)
        if ((a[i] >> col) & 1u) { piv = i; break; }
      if (piv < 0) continue;
      std::swap(a[piv], a[rank]);
      std::swap(id[piv], id[rank]);
      for (int i = 0; i < n; ++i)
        if (i != rank && ((a[i] >> col) & 1u)) { a[i] ^= a[rank]; id[i] ^= id[rank]; }
      ++rank;
    }
    if (rank < n) throw singular_matrix_error(rank);
    FqMatrix r(2, n, n);
    r.b_ = id;
    return r;
  }
  std::vector<std::vector<int>> a(n, std::vector<int>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = at(i, j);
    a[i][n + i] = 1;
  }
  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = rank; i < n; ++i)
      if (a[i][col]) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    int s = mod_inv(a[rank][col], p_);
    for (int j = 0; j < 2 * n; ++j) a[rank][j] = static_cast<int>(static_cast<long long>(a[rank][j]) * s % p_);
    for (int i = 0; i < n; ++i) {
      if (i == rank || !a[i][col]) continue;
      int f = a[i][col];
      for (int j = 0; j < 2 * n; ++j)
        a[i][j] = static_cast<int>(((a[i][j] - static_cast<long long>(f) * a[rank][j]) % p_ + p_) % p_);
    }
    ++rank;
  }
  if (rank < n) throw singular_matrix_error(rank);
  FqMatrix r(p_, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.set(i, j, a[i][n + j]);
  return r;
}

int FqMatrix::rank() const {
  if (p_ == 2) {
    std::vector<std::uint64_t> a(b_);
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
      int piv = -1;
      for (int i = rank; i < rows_; ++i)
        if ((a[i] >> col) & 1u) { piv = i; break; }
      if (piv < 0) continue;
      std::swap(a[piv], a[rank]);
      for (int i = rank + 1; i < rows_; ++i)
        if ((a[i] >> col) & 1u) a[i] ^= a[rank];
      ++rank;
    }
    return rank;
  }
  std::vector<std::vector<int>> a(rows_, std::vector<int>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) a[i][j] = at(i, j);
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int piv = -1;
    for (int i = rank; i < rows_; ++i)
      if (a[i][col]) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    int s = mod_inv(a[rank][col], p_);
    for (int j = col; j < cols_; ++j) a[rank][j] = static_cast<int>(static_cast<long long>(a[rank][j]) * s % p_);
    for (int i = rank + 1; i < rows_; ++i) {
      if (!a[i][col]) continue;
      int f = a[i][col];
      for (int j = col; j < cols_; ++j)
        a[i][j] = static_cast<int>(((a[i][j] - static_cast<long long>(f) * a[rank][j]) % p_ + p_) % p_);
    }
    ++rank;
  }
  return rank;
}

FqMatrix FqMatrix::kernel() const {
  // Solve A v = 0 by reducing A to RREF and reading off free columns.
  int n = cols_, m = rows_;
  if (p_ == 2) {
    std::vector<std::uint64_t> a(b_);
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
      int piv = -1;
      for (int i = rank; i < m; ++i)
        if ((a[i] >> col) & 1u) { piv = i; break; }
      if (piv < 0) continue;
      std::swap(a[piv], a[rank]);
      for (int i = 0; i < m; ++i)
        if (i != rank && ((a[i] >> col) & 1u)) a[i] ^= a[rank];
      pivot_col.push_back(col);
      ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    FqMatrix ker(2, n - rank, n);
    int r = 0;
    for (int col = 0; col < n; ++col) {
      if (is_pivot[col]) continue;
      std::uint64_t v = 1ULL << col;
      for (int i = 0; i < rank; ++i)
        if ((a[i] >> col) & 1u) v |= 1ULL << pivot_col[i];
      ker.b_[r++] = v;
    }
    return ker;
  }
  std::vector<std::vector<int>> a(m, std::vector<int>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = at(i, j);
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (a[i][col]) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    int s = mod_inv(a[rank][col], p_);
    for (int j = 0; j < n; ++j) a[rank][j] = static_cast<int>(static_cast<long long>(a[rank][j]) * s % p_);
    for (int i = 0; i < m; ++i) {
      if (i == rank || !a[i][col]) continue;
      int f = a[i][col];
      for (int j = 0; j < n; ++j)
        a[i][j] = static_cast<int>(((a[i][j] - static_cast<long long>(f) * a[rank][j]) % p_ + p_) % p_);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  FqMatrix ker(p_, n - rank, n);
  int r = 0;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    ker.set(r, col, 1);
    for (int i = 0; i < rank; ++i)
      if (a[i][col]) ker.set(r, pivot_col[i], (p_ - a[i][col]) % p_);
    ++r;
  }
  return ker;
}

FqMatrix FqMatrix::row_space() const {
  // RREF of the row span, zero rows dropped.
  FqMatrix copy = *this;
  int m = rows_, n = cols_;
  if (p_ == 2) {
    std::vector<std::uint64_t> a(copy.b_);
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
      int piv = -1;
      for (int i = rank; i < m; ++i)
        if ((a[i] >> col) & 1u) { piv = i; break; }
      if (piv < 0) continue;
      std::swap(a[piv], a[rank]);
      for (int i = 0; i < m; ++i)
        if (i != rank && ((a[i] >> col) & 1u)) a[i] ^= a[rank];
      ++rank;
    }
    FqMatrix r(2, rank, n);
    for (int i = 0; i < rank; ++i) r.b_[i] = a[i];
    return r;
  }
  throw std::logic_error("row_space: implemented for F_2 only");
}

bool FqMatrix::is_identity() const {
  if (!square()) return false;
  return *this == identity(p_, rows_);
}

bool FqMatrix::is_zero() const {
  if (p_ == 2) {
    for (auto w : b_)
      if (w) return false;
    return true;
  }
  for (auto v : a_)
    if (v) return false;
  return true;
}

std::uint64_t FqMatrix::order(std::uint64_t cap) const {
  if (!square()) throw std::invalid_argument("order: square matrices only");
  FqMatrix id = identity(p_, rows_);
  FqMatrix m = *this;
  // Non-invertible matrices have no order.
  (void)inv();
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (m == id) return k;
    m = m.mul(*this);
  }
  throw capacity_error("matrix order exceeds cap");
}

bool FqMatrix::operator==(const FqMatrix& o) const {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && b_ == o.b_;
}

std::uint64_t FqMatrix::hash_key() const {
  std::uint64_t h = 1469598103934665603ULL;
  hash_mix(h, p_);
  hash_mix(h, rows_);
  hash_mix(h, cols_);
  for (auto v : a_) hash_mix(h, v);
  for (auto v : b_) hash_mix(h, v);
  return h;
}

std::string FqMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << "] mod " << p_;
  return os.str();
}

FqMatrix fix_space(const FqMatrix& a) {
  if (!a.square()) throw std::invalid_argument("fix_space: square matrices only");
  return a.sub(FqMatrix::identity(a.modulus(), a.rows())).kernel();
}

FqMatrix block_diag(const std::vector<FqMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag: empty block list");
  int p = blocks[0].modulus(), n = 0;
  for (const auto& b : blocks) {
    if (!b.square()) throw std::invalid_argument("block_diag: blocks must be square");
    if (b.modulus() != p) throw std::invalid_argument("block_diag: modulus mismatch");
    n += b.rows();
  }
  FqMatrix r(p, n, n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.set(off + i, off + j, b.at(i, j));
    off += b.rows();
  }
  return r;
}

// ---------------------------------------------------------------------------
// F2Poly

void F2Poly::trim() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

F2Poly F2Poly::one() { return from_bits(1); }

F2Poly F2Poly::monomial(int d) {
  F2Poly f;
  f.set_coeff(d, true);
  return f;
}

F2Poly F2Poly::from_bits(std::uint64_t bits) {
  F2Poly f;
  if (bits) f.w_.push_back(bits);
  return f;
}

F2Poly F2Poly::x_pow_p_plus_1(int p) {
  F2Poly f = monomial(p);
  f.set_coeff(0, true);
  return f;
}

int F2Poly::degree() const {
  if (w_.empty()) return -1;
  return static_cast<int>(w_.size() - 1) * 64 + (63 - __builtin_clzll(w_.back()));
}

bool F2Poly::coeff(int i) const {
  size_t word = i / 64;
  if (word >= w_.size()) return false;
  return (w_[word] >> (i % 64)) & 1u;
}

void F2Poly::set_coeff(int i, bool v) {
  size_t word = i / 64;
  if (word >= w_.size()) {
    if (!v) return;
    w_.resize(word + 1, 0);
  }
  if (v)
    w_[word] |= 1ULL << (i % 64);
  else
    w_[word] &= ~(1ULL << (i % 64));
  trim();
}

F2Poly F2Poly::add(const F2Poly& o) const {
  F2Poly r;
  r.w_.resize(std::max(w_.size(), o.w_.size()), 0);
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] ^= w_[i];
  for (size_t i = 0; i < o.w_.size(); ++i) r.w_[i] ^= o.w_[i];
  r.trim();
  return r;
}

F2Poly F2Poly::mul(const F2Poly& o) const {
  if (is_zero() || o.is_zero()) return F2Poly();
  F2Poly r;
  int da = degree(), db = o.degree();
  r.w_.assign((da + db) / 64 + 1, 0);
  for (int i = 0; i <= da; ++i) {
    if (!coeff(i)) continue;
    // r ^= o << i
    int ws = i / 64, bs = i % 64;
    for (size_t k = 0; k < o.w_.size(); ++k) {
      r.w_[k + ws] ^= o.w_[k] << bs;
      if (bs && k + ws + 1 < r.w_.size()) r.w_[k + ws + 1] ^= o.w_[k] >> (64 - bs);
    }
  }
  r.trim();
  return r;
}

std::pair<F2Poly, F2Poly> F2Poly::divmod(const F2Poly& d) const {
  if (d.is_zero()) throw std::invalid_argument("F2Poly: division by zero");
  F2Poly rem = *this, quot;
  int dd = d.degree();
  while (!rem.is_zero() && rem.degree() >= dd) {
    int shift = rem.degree() - dd;
    quot.set_coeff(shift, true);
    // rem ^= d << shift
    F2Poly shifted = d.mul(monomial(shift));
    rem = rem.add(shifted);
  }
  return {quot, rem};
}

bool F2Poly::divisible_by(const F2Poly& d) const { return divmod(d).second.is_zero(); }

FqMatrix F2Poly::eval(const FqMatrix& m) const {
  if (!m.square() || m.modulus() != 2) throw std::invalid_argument("F2Poly::eval: square F_2 matrix");
  int n = m.rows();
  FqMatrix acc(2, n, n);
  for (int i = degree(); i >= 0; --i) {
    acc = acc.mul(m);
    if (coeff(i)) acc = acc.add(FqMatrix::identity(2, n));
  }
  return acc;
}

bool F2Poly::operator<(const F2Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (size_t i = std::max(w_.size(), o.w_.size()); i-- > 0;) {
    std::uint64_t a = i < w_.size() ? w_[i] : 0;
    std::uint64_t b = i < o.w_.size() ? o.w_[i] : 0;
    if (a != b) return a < b;
  }
  return false;
}

std::string F2Poly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(i)) continue;
    if (!s.empty()) s += "+";
    if (i == 0)
      s += "1";
    else if (i == 1)
      s += "x";
    else
      s += "x^" + std::to_string(i);
  }
  return s;
}

std::vector<F2Poly> irreducible_sieve(int max_deg) {
  std::vector<F2Poly> irr;
  for (int d = 1; d <= max_deg; ++d) {
    // Monic degree-d candidates: x^d + lower bits.
    for (std::uint64_t low = 0; low < (1ULL << d); ++low) {
      F2Poly f = F2Poly::from_bits(low | (1ULL << d));
      if (!f.coeff(0) && d > 1) continue;  // divisible by x
      bool ok = true;
      for (const auto& g : irr) {
        if (2 * g.degree() > d) break;
        if (f.divisible_by(g)) { ok = false; break; }
      }
      if (ok) irr.push_back(f);
    }
  }
  std::sort(irr.begin(), irr.end());
  return irr;
}

std::vector<F2Poly> factor_x_pow_p_minus_1(int p) {
  if (p == 2 || !is_prime(p))
    throw std::invalid_argument("factor_x_pow_p_minus_1: p must be an odd prime");
  static const std::vector<F2Poly> sieve = irreducible_sieve(8);
  F2Poly f = F2Poly::x_pow_p_plus_1(p);
  std::vector<F2Poly> factors;
  for (const auto& g : sieve) {
    while (!f.is_one() && f.divisible_by(g)) {
      factors.push_back(g);
      f = f.divmod(g).first;
    }
  }
  if (!f.is_one()) {
    // No divisor of degree <= 8 remains.  That certifies irreducibility only
    // when every potential proper divisor degree (<= deg/2) was covered.
    if (f.degree() / 2 <= 8)
      factors.push_back(f);
    else
      throw capacity_error("factor_x_pow_p_minus_1: remaining factor degree beyond sieve range");
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

FqMatrix companion(const F2Poly& f) {
  int d = f.degree();
  if (d < 1) throw std::invalid_argument("companion: degree must be >= 1");
  FqMatrix c(2, d, d);
  for (int i = 1; i < d; ++i) c.set(i, i - 1, 1);
  for (int i = 0; i < d; ++i)
    if (f.coeff(i)) c.set(i, d - 1, 1);
  return c;
}

}  // namespace qlat
