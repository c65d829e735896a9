#include "qlat/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "qlat/quiso.hpp"

namespace qlat {
namespace {

// ---------------------------------------------------------------------------
// Small arithmetic helpers

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

int ord2_mod(int p) {
  int ord = 1;
  long long v = 2 % p;
  while (v != 1) {
    v = v * 2 % p;
    ++ord;
  }
  return ord;
}

// ---------------------------------------------------------------------------
// Word-packed F_2 matrices (n <= 8): one 64-bit word per row, bit j of row i
// is the (i, j) entry.  The hot search loops run on these; results that
// survive the filters are rebuilt through FqMatrix / GroupMap and verified
// there, so the two implementations check each other.

using Rows = std::vector<std::uint64_t>;

Rows rows_of(const FqMatrix& m) {
  Rows r(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) r[static_cast<std::size_t>(i)] = m.row_bits(i);
  return r;
}

FqMatrix matrix_of(const Rows& r, int n) {
  FqMatrix m(2, n, n);
  for (int i = 0; i < n; ++i) m.set_row_bits(i, r[static_cast<std::size_t>(i)]);
  return m;
}

Rows rows_identity(int n) {
  Rows r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = 1ull << i;
  return r;
}

Rows rows_add(const Rows& a, const Rows& b) {
  Rows c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] ^= b[i];
  return c;
}

bool rows_is_zero(const Rows& a) {
  for (std::uint64_t w : a)
    if (w) return false;
  return true;
}

std::uint64_t rows_apply(const Rows& m, int n, std::uint64_t v) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i)
    out |= static_cast<std::uint64_t>(
               __builtin_parityll(m[static_cast<std::size_t>(i)] & v))
           << i;
  return out;
}

Rows rows_mul(const Rows& a, const Rows& b, int n) {
  // (AB) row i = sum over j with A[i][j] = 1 of B row j.
  Rows c(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    std::uint64_t ai = a[static_cast<std::size_t>(i)];
    while (ai) {
      int j = __builtin_ctzll(ai);
      ai &= ai - 1;
      acc ^= b[static_cast<std::size_t>(j)];
    }
    c[static_cast<std::size_t>(i)] = acc;
  }
  return c;
}

int rows_rank(Rows m, int n) {
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int piv = -1;
    for (int i = rank; i < n; ++i)
      if ((m[static_cast<std::size_t>(i)] >> c) & 1) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(piv)]);
    for (int i = 0; i < n; ++i)
      if (i != rank && ((m[static_cast<std::size_t>(i)] >> c) & 1))
        m[static_cast<std::size_t>(i)] ^= m[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

std::vector<std::uint64_t> rows_kernel(Rows m, int n) {
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = rank; i < n; ++i)
      if ((m[static_cast<std::size_t>(i)] >> c) & 1) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(piv)]);
    for (int i = 0; i < n; ++i)
      if (i != rank && ((m[static_cast<std::size_t>(i)] >> c) & 1))
        m[static_cast<std::size_t>(i)] ^= m[static_cast<std::size_t>(rank)];
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<std::uint64_t> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    std::uint64_t v = 1ull << c;
    for (int i = 0; i < rank; ++i)
      if ((m[static_cast<std::size_t>(i)] >> c) & 1)
        v |= 1ull << pivot_col[static_cast<std::size_t>(i)];
    basis.push_back(v);
  }
  return basis;
}

// A subspace of F_2^n kept as a normalized pivot basis: each pivot coordinate
// occurs in exactly one basis vector, so canon() maps every vector to the
// unique coset representative supported on the free coordinates.
struct BitSpace {
  int n = 0;
  int rank = 0;
  std::array<std::uint64_t, 8> piv{};

  void insert(std::uint64_t v) {
    for (int h = n - 1; h >= 0; --h) {
      if (!((v >> h) & 1)) continue;
      if (piv[static_cast<std::size_t>(h)]) {
        v ^= piv[static_cast<std::size_t>(h)];
        continue;
      }
      piv[static_cast<std::size_t>(h)] = v;
      ++rank;
      return;
    }
  }
  void normalize() {
    for (int h = 0; h < n; ++h) {
      if (!piv[static_cast<std::size_t>(h)]) continue;
      for (int g = 0; g < n; ++g)
        if (g != h && piv[static_cast<std::size_t>(g)] &&
            ((piv[static_cast<std::size_t>(g)] >> h) & 1))
          piv[static_cast<std::size_t>(g)] ^= piv[static_cast<std::size_t>(h)];
    }
  }
  std::uint64_t canon(std::uint64_t v) const {
    for (int h = n - 1; h >= 0; --h)
      if (((v >> h) & 1) && piv[static_cast<std::size_t>(h)])
        v ^= piv[static_cast<std::size_t>(h)];
    return v;
  }
  bool contains(std::uint64_t v) const { return canon(v) == 0; }
  std::vector<int> free_coords() const {
    std::vector<int> out;
    for (int h = 0; h < n; ++h)
      if (!piv[static_cast<std::size_t>(h)]) out.push_back(h);
    return out;
  }
};

BitSpace space_of_vectors(const std::vector<std::uint64_t>& vs, int n) {
  BitSpace s;
  s.n = n;
  for (std::uint64_t v : vs) s.insert(v);
  s.normalize();
  return s;
}

BitSpace column_space(const Rows& m, int n) {
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((m[static_cast<std::size_t>(i)] >> j) & 1)
        cols[static_cast<std::size_t>(j)] |= 1ull << i;
  return space_of_vectors(cols, n);
}

// Coset representatives of F_2^n modulo the (normalized) subspace: every
// pattern on the free coordinates, zero on the pivots.
std::vector<std::uint64_t> coset_reps(const BitSpace& s) {
  std::vector<int> fc = s.free_coords();
  std::vector<std::uint64_t> out(1ull << fc.size());
  for (std::uint64_t mask = 0; mask < out.size(); ++mask) {
    std::uint64_t w = 0;
    for (std::size_t b = 0; b < fc.size(); ++b)
      if ((mask >> b) & 1) w |= 1ull << fc[b];
    out[mask] = w;
  }
  return out;
}

// F_2 basis of { X : X rho = rho_s X } as word-row matrices.
std::vector<Rows> intertwiner_basis(const FqMatrix& rho, const FqMatrix& rho_s) {
  int n = rho.rows();
  int nn = n * n;
  FqMatrix sys(2, nn, nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int e = i * n + j;
      for (int k = 0; k < n; ++k) {
        if (rho.at(k, j)) sys.set(e, i * n + k, sys.at(e, i * n + k) ^ 1);
        if (rho_s.at(i, k)) sys.set(e, k * n + j, sys.at(e, k * n + j) ^ 1);
      }
    }
  FqMatrix ker = sys.kernel();
  std::vector<Rows> out;
  out.reserve(static_cast<std::size_t>(ker.rows()));
  for (int b = 0; b < ker.rows(); ++b) {
    Rows m(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (ker.at(b, i * n + j)) m[static_cast<std::size_t>(i)] |= 1ull << j;
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fast three-element-chain test for latin quandles.  In a latin quandle a
// congruence is determined by the block of any one element, so the proper
// congruences are exactly the distinct proper principal congruences based at
// 0: the lattice is a chain 0 < alpha < 1 iff exactly one distinct proper
// one shows up.  Survivors are re-confirmed against the full lattice.

bool is_three_chain_latin(const QuandleTable& q) {
  std::optional<Congruence> proper;
  for (int b = 1; b < q.size(); ++b) {
    Congruence c = principal_congruence(q, 0, b);
    if (c.is_coarsest()) continue;
    if (!proper)
      proper.emplace(std::move(c));
    else if (!(c == *proper))
      return false;
  }
  return proper.has_value();
}

// ---------------------------------------------------------------------------
// GF(4) machinery for the canonical-representative route.  The untwisted
// intertwiner algebra at p = 3 is a full matrix algebra over GF(4) (the
// action is scalar multiplication by omega on a GF(4) vector space), so
// invertible intertwiners up to the conjugation that relabels the search are
// exactly the rational canonical forms: one representative per multiset of
// elementary divisors.

constexpr int kF4Mul[4][4] = {
    {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};

using F4Poly = std::vector<int>;  // little-endian coefficients in {0..3}

F4Poly f4p_trim(F4Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int f4p_deg(const F4Poly& a) { return static_cast<int>(a.size()) - 1; }

F4Poly f4p_mul(const F4Poly& a, const F4Poly& b) {
  if (a.empty() || b.empty()) return {};
  F4Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] ^= kF4Mul[a[i]][b[j]];  // addition in GF(4) is xor of codes
  return f4p_trim(std::move(c));
}

// Remainder modulo a monic divisor.
F4Poly f4p_mod(F4Poly a, const F4Poly& m) {
  a = f4p_trim(std::move(a));
  while (f4p_deg(a) >= f4p_deg(m)) {
    int shift = f4p_deg(a) - f4p_deg(m);
    int lead = a.back();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[static_cast<std::size_t>(shift) + i] ^= kF4Mul[lead][m[i]];
    a = f4p_trim(std::move(a));
  }
  return a;
}

std::vector<F4Poly> f4_monic_irreducibles(int max_deg) {
  std::vector<F4Poly> irr;
  for (int d = 1; d <= max_deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= 4;
    for (std::uint64_t code = 0; code < count; ++code) {
      F4Poly f(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        f[static_cast<std::size_t>(i)] = static_cast<int>(c % 4);
        c /= 4;
      }
      f[static_cast<std::size_t>(d)] = 1;
      bool reducible = false;
      for (const F4Poly& g : irr) {
        if (2 * f4p_deg(g) > d) break;  // sorted by degree
        if (f4p_mod(f, g).empty()) {
          reducible = true;
          break;
        }
      }
      if (!reducible) irr.push_back(std::move(f));
    }
  }
  return irr;
}

// Blow a GF(4) matrix up to F_2 rows: entry a + b*omega becomes the 2x2
// block a I + b C with C the multiplication-by-omega matrix [[0,1],[1,1]],
// the same block the module action is built from, so the blow-up commutes
// with the action by construction.
Rows f4_blowup(const std::vector<std::vector<int>>& m4) {
  int m = static_cast<int>(m4.size());
  Rows r(static_cast<std::size_t>(2 * m), 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = m4[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      int a = v & 1, b = (v >> 1) & 1;
      if (a) {
        r[static_cast<std::size_t>(2 * i)] |= 1ull << (2 * j);
        r[static_cast<std::size_t>(2 * i + 1)] |= 1ull << (2 * j + 1);
      }
      if (b) {
        r[static_cast<std::size_t>(2 * i)] |= 1ull << (2 * j + 1);
        r[static_cast<std::size_t>(2 * i + 1)] |= 1ull << (2 * j);
        r[static_cast<std::size_t>(2 * i + 1)] ^= 1ull << (2 * j + 1);
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// The per-class automorphism search.
//
// Aut(Z_2^n x| Z_p) in triple form: f(v, t^i) = (A v + N_i w, t^{s i}) with
// A rho = rho^s A invertible, N_i = sum_{j<i} rho^{s j}, w in Z_2^n.  Inner
// conjugation by translations moves w by the image of M = A + (I + rho +
// ... + rho^{s-1}), so w runs over coset representatives of im(M).  The
// |Fix(f)| = 2^{n-4} filter is nullity(A + I) = n - 4, plus (s = 1 only)
// the requirement that no exponent i != 0 contributes fixed points, i.e.
// N_i w is outside im(A + I) for 0 < i < p.

constexpr int kSpanBudgetBits = 20;
constexpr std::uint64_t kRandomSamples = 2000000;

struct ClassSearch {
  const ChainCandidate& cls;
  SearchCoverage& cov;
  std::vector<QuandleTable>& out;

  int p, n, k;
  std::vector<Rows> rp;       // rho^0 .. rho^{p-1}
  std::vector<Rows> sum_rho;  // sum_rho[i] = I + rho + ... + rho^{i-1}
  std::set<std::string> methods;

  // per-s state
  int s = 1;
  std::vector<Rows> nmat;            // N_i for the current s
  bool verified_first_map = false;   // group-route check done for this s

  ClassSearch(const ChainCandidate& c, SearchCoverage& coverage,
              std::vector<QuandleTable>& sink)
      : cls(c), cov(coverage), out(sink), p(c.p), n(c.n), k(c.n - 4) {
    rp.resize(static_cast<std::size_t>(p));
    Rows rho = rows_of(c.rho);
    rp[0] = rows_identity(n);
    for (int i = 1; i < p; ++i) rp[static_cast<std::size_t>(i)] =
        rows_mul(rho, rp[static_cast<std::size_t>(i - 1)], n);
    sum_rho.resize(static_cast<std::size_t>(p) + 1,
                   Rows(static_cast<std::size_t>(n), 0));
    for (int i = 1; i <= p; ++i)
      sum_rho[static_cast<std::size_t>(i)] =
          rows_add(sum_rho[static_cast<std::size_t>(i - 1)],
                   rp[static_cast<std::size_t>(i - 1)]);
    // A fixed-point-free action sums to zero over a full period.
    if (!rows_is_zero(sum_rho[static_cast<std::size_t>(p)]))
      throw std::logic_error("full-period power sum of the action is not zero");
  }

  void set_twist(int twist) {
    s = twist;
    verified_first_map = false;
    nmat.assign(static_cast<std::size_t>(p), Rows(static_cast<std::size_t>(n), 0));
    for (int i = 1; i < p; ++i)
      nmat[static_cast<std::size_t>(i)] =
          rows_add(nmat[static_cast<std::size_t>(i - 1)],
                   rp[static_cast<std::size_t>((s * (i - 1)) % p)]);
  }

  // Full verification through the group layer; returns the group-route
  // table.  Only reached by candidates that survive all cheap filters.
  QuandleTable group_route(const Rows& arows, std::uint64_t w,
                           const QuandleTable& bit_table,
                           const std::vector<std::pair<int, std::uint64_t>>& reps) {
    const FiniteGroup& g = *cls.group;
    int gsize = g.size();
    std::vector<std::uint64_t> niw(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i)
      niw[static_cast<std::size_t>(i)] =
          rows_apply(nmat[static_cast<std::size_t>(i)], n, w);
    std::vector<int> images(static_cast<std::size_t>(gsize));
    for (int vi = 0; vi < (1 << n); ++vi) {
      std::uint64_t av = rows_apply(arows, n, static_cast<std::uint64_t>(vi));
      for (int i = 0; i < p; ++i)
        images[static_cast<std::size_t>(vi * p + i)] =
            static_cast<int>(av ^ niw[static_cast<std::size_t>(i)]) * p +
            (s * i) % p;
    }
    GroupMap f(cls.group, cls.group, images);
    if (!f.verify_homomorphism() || !f.is_bijective())
      throw std::logic_error("search emitted a non-automorphism");
    std::vector<int> fixed = f.fixed_elements();
    if (static_cast<int>(fixed.size()) != (1 << k))
      throw std::logic_error("fixed subgroup has unexpected order");
    CosetQuandle cq = coset_quandle(g, f, fixed);
    // Identify the two numberings and require the tables to agree exactly.
    std::vector<int> relabel(reps.size());
    for (std::size_t a = 0; a < reps.size(); ++a)
      relabel[a] = cq.coset_of[static_cast<std::size_t>(
          static_cast<int>(reps[a].second) * p + reps[a].first)];
    int m = bit_table.size();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (cq.q.op(relabel[static_cast<std::size_t>(a)],
                    relabel[static_cast<std::size_t>(b)]) !=
            relabel[static_cast<std::size_t>(bit_table.op(a, b))])
          throw std::logic_error("bit-level and group-level tables disagree");
    return cq.q;
  }

  // One invertible intertwiner candidate.
  void process_a(const Rows& arows) {
    if (rows_rank(arows, n) != n) return;
    Rows a_plus_i = rows_add(arows, rp[0]);
    int nullity = n - rows_rank(a_plus_i, n);
    if (nullity != k) return;

    std::vector<std::uint64_t> kbasis = rows_kernel(a_plus_i, n);
    BitSpace im_ai = column_space(a_plus_i, n);
    Rows m_orbit = rows_add(arows, sum_rho[static_cast<std::size_t>(s)]);
    BitSpace im_m = column_space(m_orbit, n);

    // H = ker(A+I) x {t^0}; its right cosets are indexed by the exponent i
    // and the class of the vector part modulo rho^i ker(A+I).
    std::vector<BitSpace> hsp(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
      std::vector<std::uint64_t> moved(kbasis.size());
      for (std::size_t t = 0; t < kbasis.size(); ++t)
        moved[t] = rows_apply(rp[static_cast<std::size_t>(i)], n, kbasis[t]);
      hsp[static_cast<std::size_t>(i)] = space_of_vectors(moved, n);
    }

    for (std::uint64_t w : coset_reps(im_m)) {
      ++cov.automorphism_candidates;
      std::vector<std::uint64_t> niw(static_cast<std::size_t>(p));
      for (int i = 0; i < p; ++i)
        niw[static_cast<std::size_t>(i)] =
            rows_apply(nmat[static_cast<std::size_t>(i)], n, w);
      if (s == 1) {
        // Any exponent i with N_i w in im(A+I) would contribute extra fixed
        // points (a full p-fold of them, by translating within the kernel).
        bool extra = false;
        for (int i = 1; i < p && !extra; ++i)
          if (im_ai.contains(niw[static_cast<std::size_t>(i)])) extra = true;
        if (extra) continue;
      }
      ++cov.quandles_built;

      // Coset representatives, bijectivity of x -> x f(x)^-1 on them, and
      // the operation table, all in word arithmetic.
      std::vector<std::pair<int, std::uint64_t>> reps;
      reps.reserve(static_cast<std::size_t>(16 * p));
      for (int i = 0; i < p; ++i)
        for (std::uint64_t v : coset_reps(hsp[static_cast<std::size_t>(i)]))
          reps.emplace_back(i, v);
      const int qn = static_cast<int>(reps.size());
      if (qn != 16 * p) throw std::logic_error("coset count mismatch");

      auto key_of = [&](int i, std::uint64_t v) {
        return (static_cast<std::uint64_t>(i) << n) |
               hsp[static_cast<std::size_t>(i)].canon(v);
      };

      // phi(v, t^i) = (v + rho^{i-si}(A v + N_i w), t^{i-si}) must hit every
      // coset once; this is the column of the base coset and a cheap
      // necessary condition for the table to be latin.
      std::vector<int> phi_i(static_cast<std::size_t>(qn));
      std::vector<std::uint64_t> phi_v(static_cast<std::size_t>(qn));
      std::vector<int> f_i(static_cast<std::size_t>(qn));
      std::vector<std::uint64_t> f_v(static_cast<std::size_t>(qn));
      {
        std::set<std::uint64_t> seen;
        bool ok = true;
        for (int a = 0; a < qn && ok; ++a) {
          auto [i, v] = reps[static_cast<std::size_t>(a)];
          std::uint64_t fv =
              rows_apply(arows, n, v) ^ niw[static_cast<std::size_t>(i)];
          int fi = (s * i) % p;
          int e = ((i - fi) % p + p) % p;
          std::uint64_t pv =
              v ^ rows_apply(rp[static_cast<std::size_t>(e)], n, fv);
          f_i[static_cast<std::size_t>(a)] = fi;
          f_v[static_cast<std::size_t>(a)] = fv;
          phi_i[static_cast<std::size_t>(a)] = e;
          phi_v[static_cast<std::size_t>(a)] = pv;
          ok = seen.insert(key_of(e, pv)).second;
        }
        if (!ok) continue;  // not latin
      }

      std::vector<int> key_to_id(static_cast<std::size_t>(p) << n, -1);
      for (int a = 0; a < qn; ++a)
        key_to_id[key_of(reps[static_cast<std::size_t>(a)].first,
                         reps[static_cast<std::size_t>(a)].second)] = a;

      std::vector<std::vector<int>> table(
          static_cast<std::size_t>(qn), std::vector<int>(static_cast<std::size_t>(qn)));
      for (int a = 0; a < qn; ++a) {
        const Rows& rot = rp[static_cast<std::size_t>(phi_i[static_cast<std::size_t>(a)])];
        for (int b = 0; b < qn; ++b) {
          std::uint64_t vv =
              phi_v[static_cast<std::size_t>(a)] ^
              rows_apply(rot, n, f_v[static_cast<std::size_t>(b)]);
          int ii = (phi_i[static_cast<std::size_t>(a)] +
                    f_i[static_cast<std::size_t>(b)]) % p;
          table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
              key_to_id[key_of(ii, vv)];
        }
      }
      QuandleTable q(std::move(table), /*distributivity_check_limit=*/0);
      bool first_for_twist = !verified_first_map;
      if (!q.is_latin()) {
        if (first_for_twist) {
          // Verify the parametrization against the group layer once per
          // twist even when the candidate is uninteresting.
          (void)group_route(arows, w, q, reps);
          verified_first_map = true;
        }
        continue;
      }
      ++cov.latin_found;
      if (!is_three_chain_latin(q)) {
        if (first_for_twist) {
          (void)group_route(arows, w, q, reps);
          verified_first_map = true;
        }
        continue;
      }
      // Survivor: full verification on both routes.
      if (!q.is_left_distributive() || !q.is_connected())
        throw std::logic_error("chain survivor failed basic axioms");
      CongruenceLattice lat = congruence_lattice(q);
      if (lat.shape_tag() != "chain-3")
        throw std::logic_error("fast chain filter disagrees with the lattice");
      out.push_back(group_route(arows, w, q, reps));
      verified_first_map = true;
    }
  }

  void run_twist(int twist) {
    set_twist(twist);
    FqMatrix rho_s = cls.rho.pow(s);
    std::vector<Rows> basis = intertwiner_basis(cls.rho, rho_s);
    if (basis.empty()) return;  // no invertible intertwiner can exist

    if (static_cast<int>(basis.size()) <= kSpanBudgetBits) {
      methods.insert("exhaustive");
      Rows cur(static_cast<std::size_t>(n), 0);
      const std::uint64_t total = 1ull << basis.size();
      for (std::uint64_t c = 1; c < total; ++c) {
        const Rows& b = basis[static_cast<std::size_t>(__builtin_ctzll(c))];
        for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] ^= b[static_cast<std::size_t>(i)];
        process_a(cur);
      }
      return;
    }
    if (p == 3 && s == 1) {
      // The untwisted intertwiner algebra is M_{n/2}(GF(4)); conjugation by
      // its units relabels the search, so rational canonical forms cover
      // every quandle isomorphism class.
      methods.insert("canonical");
      for (const FqMatrix& a : chain_canonical_reps(n)) {
        Rows ar = rows_of(a);
        Rows rho = rp[1];
        if (!(rows_mul(ar, rho, n) == rows_mul(rho, ar, n)))
          throw std::logic_error("canonical representative does not intertwine");
        process_a(ar);
      }
      return;
    }
    // Too large to span and no canonical theory: fixed-seed sampling.
    methods.insert("randomized");
    cov.exhaustive = false;
    std::mt19937_64 rng(0x5EED2026ull + static_cast<std::uint64_t>(s));
    const std::uint64_t mask =
        basis.size() >= 64 ? ~0ull : ((1ull << basis.size()) - 1);
    Rows cur(static_cast<std::size_t>(n));
    for (std::uint64_t t = 0; t < kRandomSamples; ++t) {
      std::uint64_t sel = rng() & mask;
      if (!sel) continue;
      std::fill(cur.begin(), cur.end(), 0);
      std::uint64_t bits = sel;
      while (bits) {
        const Rows& b = basis[static_cast<std::size_t>(__builtin_ctzll(bits))];
        bits &= bits - 1;
        for (int i = 0; i < n; ++i)
          cur[static_cast<std::size_t>(i)] ^= b[static_cast<std::size_t>(i)];
      }
      process_a(cur);
    }
  }

  void run() {
    for (int twist = 1; twist < p; ++twist) run_twist(twist);
  }
};

std::string join_methods(const std::set<std::string>& m) {
  // Stable order: exhaustive, canonical, randomized.
  static const std::vector<std::string> order = {"exhaustive", "canonical",
                                                 "randomized"};
  std::string out;
  for (const std::string& name : order)
    if (m.count(name)) {
      if (!out.empty()) out += "+";
      out += name;
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Module classes

const std::vector<int>& chain_allowed_primes() {
  static const std::vector<int> primes = [] {
    std::vector<int> out;
    for (int p = 3; p < 260; p += 2)
      if (is_odd_prime(p) && ord2_mod(p) <= 8) out.push_back(p);
    return out;
  }();
  return primes;
}

std::vector<int> chain_admissible_dims(int p, int tier) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (tier < 1 || tier > 3) throw std::invalid_argument("tier must be 1, 2, or 3");
  int cap = tier == 1 ? 4 : tier == 2 ? 6 : 8;
  int d = ord2_mod(p);
  std::vector<int> dims;
  for (int n = 4; n <= cap; ++n)
    if (n % d == 0) dims.push_back(n);
  return dims;
}

std::vector<std::vector<int>> module_multiplicity_vectors(int p, int n) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  std::vector<F2Poly> factors = factor_x_pow_p_minus_1(p);
  F2Poly xp1 = F2Poly::from_bits(0b11);
  std::vector<F2Poly> nontrivial;
  for (const F2Poly& f : factors)
    if (f < xp1 || xp1 < f) nontrivial.push_back(f);
  if (nontrivial.empty()) throw std::logic_error("no nontrivial factors");
  int d = nontrivial.front().degree();
  for (const F2Poly& f : nontrivial)
    if (f.degree() != d)
      throw std::logic_error("factors of x^p - 1 have unequal degrees");
  std::vector<std::vector<int>> out;
  if (n % d != 0) return out;
  int t = n / d;
  int r = static_cast<int>(nontrivial.size());
  std::vector<int> cur(static_cast<std::size_t>(r), 0);
  // All compositions of t into r nonnegative parts.
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == r - 1) {
      cur[static_cast<std::size_t>(idx)] = left;
      out.push_back(cur);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      cur[static_cast<std::size_t>(idx)] = m;
      rec(idx + 1, left - m);
    }
  };
  rec(0, t);
  return out;
}

std::vector<ChainCandidate> module_classes(int p, int n) {
  std::vector<std::vector<int>> vectors = module_multiplicity_vectors(p, n);
  std::vector<ChainCandidate> out;
  if (vectors.empty()) return out;

  std::vector<F2Poly> factors = factor_x_pow_p_minus_1(p);
  F2Poly xp1 = F2Poly::from_bits(0b11);
  std::vector<F2Poly> q;
  for (const F2Poly& f : factors)
    if (f < xp1 || xp1 < f) q.push_back(f);
  int r = static_cast<int>(q.size());

  // Power twist: t -> t^s replaces the action by its s-th power, permuting
  // the factor multiplicities; q[perm_s[i]] is the factor annihilating the
  // s-th power of the companion of q[i].
  std::vector<std::vector<int>> perm(static_cast<std::size_t>(p));
  for (int s = 1; s < p; ++s) {
    perm[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(r), -1);
    for (int i = 0; i < r; ++i) {
      FqMatrix cs = companion(q[static_cast<std::size_t>(i)]).pow(s);
      int image = -1;
      for (int j = 0; j < r; ++j)
        if (q[static_cast<std::size_t>(j)].eval(cs).is_zero()) {
          if (image >= 0) throw std::logic_error("twist image not unique");
          image = j;
        }
      if (image < 0) throw std::logic_error("twist image not found");
      perm[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] = image;
    }
  }
  auto canonical = [&](const std::vector<int>& m) {
    std::vector<int> best = m;
    std::vector<int> moved(static_cast<std::size_t>(r));
    for (int s = 1; s < p; ++s) {
      for (int i = 0; i < r; ++i)
        moved[static_cast<std::size_t>(
            perm[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)])] =
            m[static_cast<std::size_t>(i)];
      if (moved < best) best = moved;
    }
    return best;
  };

  for (const std::vector<int>& m : vectors) {
    if (!(canonical(m) == m)) continue;
    ChainCandidate c;
    c.p = p;
    c.n = n;
    std::vector<FqMatrix> blocks;
    for (int i = 0; i < r; ++i) {
      if (m[static_cast<std::size_t>(i)] == 0) continue;
      c.module_factors.emplace_back(q[static_cast<std::size_t>(i)],
                                    m[static_cast<std::size_t>(i)]);
      for (int t = 0; t < m[static_cast<std::size_t>(i)]; ++t)
        blocks.push_back(companion(q[static_cast<std::size_t>(i)]));
    }
    c.rho = block_diag(blocks);
    if (c.rho.rows() != n) throw std::logic_error("module dimension mismatch");
    if (c.rho.is_identity() || !c.rho.pow(p).is_identity())
      throw std::logic_error("action does not have order p");
    if (fix_space(c.rho).rows() != 0)
      throw std::logic_error("action has nonzero fixed vectors");
    std::vector<FqMatrix> powers(static_cast<std::size_t>(p));
    powers[0] = FqMatrix(2, n, n);
    for (int i = 0; i < n; ++i) powers[0].set(i, i, 1);
    for (int i = 1; i < p; ++i)
      powers[static_cast<std::size_t>(i)] =
          c.rho.mul(powers[static_cast<std::size_t>(i - 1)]);
    c.group = std::make_shared<SemidirectGroup>(
        2, n, std::make_shared<AbelianGroup>(std::vector<int>{p}), powers);
    // Pin the index layout the bit-level search relies on.
    for (int t = 0; t < n; ++t) {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(t)] = 1;
      if (c.group->make(e, 0) != (1 << t) * p)
        throw std::logic_error("unexpected semidirect index layout");
    }
    std::vector<int> zero(static_cast<std::size_t>(n), 0);
    if (c.group->make(zero, 1) != 1)
      throw std::logic_error("unexpected semidirect index layout");
    {
      // (0, t)(v, 1) = (rho v, t): one multiplication pins the convention.
      std::vector<int> e0(static_cast<std::size_t>(n), 0);
      e0[0] = 1;
      int lhs = c.group->mul(c.group->make(zero, 1), c.group->make(e0, 0));
      std::uint64_t rv = c.rho.mul_bits(1);
      if (lhs != static_cast<int>(rv) * p + 1)
        throw std::logic_error("unexpected semidirect multiplication convention");
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<FqMatrix> chain_canonical_reps(int n) {
  if (n < 2 || n > 8 || n % 2 != 0)
    throw std::invalid_argument("n must be even and between 2 and 8");
  int m4 = n / 2;
  std::vector<F4Poly> irr = f4_monic_irreducibles(m4);
  // Invertibility means the divisor x never occurs.
  std::vector<F4Poly> usable;
  for (const F4Poly& f : irr)
    if (f[0] != 0) usable.push_back(f);

  struct Pair {
    int poly;
    int e;
    int dim;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < static_cast<int>(usable.size()); ++i) {
    int d = f4p_deg(usable[static_cast<std::size_t>(i)]);
    for (int e = 1; d * e <= m4; ++e) pairs.push_back({i, e, d * e});
  }

  std::vector<FqMatrix> reps;
  std::vector<Pair> chosen;
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) {
      // Assemble the block diagonal of GF(4) companion matrices of q^e.
      std::vector<std::vector<int>> m4mat(
          static_cast<std::size_t>(m4),
          std::vector<int>(static_cast<std::size_t>(m4), 0));
      int off = 0;
      for (const Pair& pr : chosen) {
        F4Poly qe = {1};
        for (int t = 0; t < pr.e; ++t)
          qe = f4p_mul(qe, usable[static_cast<std::size_t>(pr.poly)]);
        int m = f4p_deg(qe);
        for (int i = 0; i + 1 < m; ++i)
          m4mat[static_cast<std::size_t>(off + i + 1)]
               [static_cast<std::size_t>(off + i)] = 1;
        for (int i = 0; i < m; ++i)
          m4mat[static_cast<std::size_t>(off + i)]
               [static_cast<std::size_t>(off + m - 1)] ^=
              qe[static_cast<std::size_t>(i)];
        off += m;
      }
      FqMatrix rep = matrix_of(f4_blowup(m4mat), n);
      if (rep.rank() != n)
        throw std::logic_error("canonical representative is singular");
      reps.push_back(std::move(rep));
      return;
    }
    for (int t = start; t < static_cast<int>(pairs.size()); ++t)
      if (pairs[static_cast<std::size_t>(t)].dim <= left) {
        chosen.push_back(pairs[static_cast<std::size_t>(t)]);
        rec(t, left - pairs[static_cast<std::size_t>(t)].dim);
        chosen.pop_back();
      }
  };
  rec(0, m4);
  return reps;
}

ChainSearchResult chain_search(int p, int tier) {
  ChainSearchResult result;
  result.p = p;
  result.tier = tier;
  std::vector<QuandleTable> survivors;
  for (int n : chain_admissible_dims(p, tier)) {
    SearchCoverage cov;
    cov.p = p;
    cov.n = n;
    cov.exhaustive = true;
    std::set<std::string> methods;
    for (ChainCandidate& cls : module_classes(p, n)) {
      ClassSearch search(cls, cov, survivors);
      search.run();
      methods.insert(search.methods.begin(), search.methods.end());
      result.classes.push_back(std::move(cls));
    }
    cov.method = join_methods(methods);
    if (!cov.exhaustive) result.exhaustive = false;
    result.coverage.push_back(std::move(cov));
  }

  for (std::size_t idx : dedupe_up_to_iso(survivors)) {
    QuandleTable& q = survivors[idx];
    if (!q.is_latin() || !q.is_connected() || q.size() != 16 * p)
      throw std::logic_error("deduplicated survivor lost an invariant");
    // Minimality: the displacement group must be one of the searched groups.
    PermGroup dis = q.dis();
    bool matched = false;
    for (const ChainCandidate& cls : result.classes) {
      if (dis.order() != static_cast<std::uint64_t>(cls.group->size())) continue;
      if (cls.group->size() <= 256) {
        auto iso = small_group_iso(table_from_perm_group(dis), cls.group);
        if (!iso) continue;
      }
      matched = true;
      break;
    }
    if (!matched)
      throw std::logic_error("survivor displacement group matches no searched class");
    result.quandles.push_back(std::move(q));
  }
  return result;
}

// ---------------------------------------------------------------------------
// The diamond family

std::vector<FamilyMember> sr_family(int p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  std::vector<FamilyMember> out;
  if (p % 3 != 1) return out;

  SrGroup g = build_sr_group(p);
  std::shared_ptr<TableGroup> q8xk;
  {
    auto dp = std::make_shared<DirectProductGroup>(quaternion_group(), klein_four());
    std::vector<std::vector<int>> t(static_cast<std::size_t>(dp->size()),
                                    std::vector<int>(static_cast<std::size_t>(dp->size())));
    for (int a = 0; a < dp->size(); ++a)
      for (int b = 0; b < dp->size(); ++b)
        t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = dp->mul(a, b);
    q8xk = std::make_shared<TableGroup>(t);
  }

  for (int j = 1; j <= 2; ++j) {
    CosetQuandle cq = build_sr_quandle(g, j, {1, 0});
    const QuandleTable& q = cq.q;
    auto fail = [&](const std::string& what) {
      throw std::logic_error("diamond member j=" + std::to_string(j) +
                             " at p=" + std::to_string(p) + ": " + what);
    };
    if (q.size() != 16 * p) fail("wrong size");
    if (!q.is_latin()) fail("not latin");
    if (!q.is_connected()) fail("not connected");

    CongruenceLattice lat = congruence_lattice(q);
    if (lat.shape_tag() != "diamond") fail("lattice is not the five-element diamond");
    if (lat.is_subdirectly_irreducible()) fail("unexpectedly subdirectly irreducible");

    Congruence gamma = gamma_congruence(q);
    Congruence zeta = zeta_congruence(q);
    if (gamma.num_blocks() != 16) fail("|Q/gamma| != 16");
    if (zeta.num_blocks() != 4 * p) fail("|Q/zeta| != 4p");
    Congruence nu = gamma.join(zeta);
    if (nu.num_blocks() != 4) fail("|Q/nu| != 4");
    if (!gamma.meet(zeta).is_finest()) fail("gamma and zeta do not meet trivially");

    PermGroup dis = q.dis();
    if (dis.order() != 32ull * p * p) fail("|Dis| != 32 p^2");
    PermGroup z = dis.center();
    if (z.order() != 4) fail("|Z(Dis)| != 4");
    for (const Permutation& perm : z.elements())
      if (!(perm.pow(2) == Permutation::identity(perm.degree())))
        fail("Z(Dis) is not elementary abelian");

    std::vector<PermGroup> lcs = dis.lower_central_series();
    if (lcs.size() < 3) fail("lower central series too short");
    if (dis.order() / lcs[2].order() != 32) fail("|Dis / gamma_2| != 32");
    PermGroup quot = dis.coset_action(lcs[2]);
    if (quot.order() != 32) fail("quotient action order != 32");
    if (!small_group_iso(table_from_perm_group(quot), q8xk))
      fail("Dis/gamma_2 is not Q8 x Z2^2");

    if (direct_decomposition(q, lat)) fail("unexpected direct decomposition");

    std::string nm = "sr(" + std::to_string(p) + "," + std::to_string(j) + ")";
    out.push_back(FamilyMember{q, std::move(nm), "sr", false, fingerprint(q).str()});
  }
  if (are_isomorphic(out[0].q, out[1].q))
    throw std::logic_error("the two diamond members are isomorphic");
  return out;
}

// ---------------------------------------------------------------------------
// Directly decomposable members

namespace {

FamilyMember verified_product(const QuandleTable& a, const QuandleTable& b,
                              const std::string& name) {
  QuandleTable q = direct_product(a, b);
  int na = a.size(), nb = b.size();
  std::vector<int> first(static_cast<std::size_t>(q.size()));
  std::vector<int> second(static_cast<std::size_t>(q.size()));
  for (int z = 0; z < q.size(); ++z) {
    first[static_cast<std::size_t>(z)] = z / nb;
    second[static_cast<std::size_t>(z)] = z % nb;
  }
  Congruence ca(first), cb(second);
  if (!ca.meet(cb).is_finest() || !ca.join(cb).is_coarsest())
    throw std::logic_error("projection congruences are not complementary");
  QuandleTable qa = q.quotient(ca.block_vector(), na);
  QuandleTable qb = q.quotient(cb.block_vector(), nb);
  if (!(qa == a) || !(qb == b))
    throw std::logic_error("projection quotients do not equal the factors");
  std::string fp = fingerprint(q).str();
  return FamilyMember{std::move(q), name, "dd", true, std::move(fp)};
}

}  // namespace

std::vector<FamilyMember> dd_assembly(int p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  std::vector<FamilyMember> out;
  std::vector<QuandleTable> l16 = latin_size16_family();
  std::vector<QuandleTable> lp = latin_prime_family(p);
  for (std::size_t i = 0; i < l16.size(); ++i)
    for (std::size_t c = 0; c < lp.size(); ++c)
      out.push_back(verified_product(
          l16[i], lp[c],
          "l16#" + std::to_string(i + 1) + "*aff(" + std::to_string(p) + "," +
              std::to_string(c + 2) + ")"));
  if (p % 3 == 1) {
    GkGroup gk = build_gk(p);
    QuandleTable q4 = build_q4();
    for (int j = 1; j <= 2; ++j) {
      QuandleTable q4p = build_q4p(gk, j).q;
      out.push_back(verified_product(
          q4, q4p, "q4*q(" + std::to_string(p) + "," + std::to_string(j) + ")"));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census

ClassificationReport classify_census(int p, int tier, const std::string& tables_dir,
                            int spot_checks) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  ClassificationReport r;
  r.p = p;
  r.tier = tier;
  using clock = std::chrono::steady_clock;
  auto timed = [&](const std::string& name, auto&& fn) {
    auto t0 = clock::now();
    fn();
    r.timings_ms[name] =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  ChainSearchResult cs;
  std::vector<FamilyMember> sr, dd;
  timed("chain_search", [&] { cs = chain_search(p, tier); });
  timed("sr_family", [&] { sr = sr_family(p); });
  timed("dd_assembly", [&] { dd = dd_assembly(p); });

  std::vector<FamilyMember> members;
  for (std::size_t i = 0; i < cs.quandles.size(); ++i) {
    const QuandleTable& q = cs.quandles[i];
    std::string nm =
        "si(" + std::to_string(16 * p) + ")#" + std::to_string(i + 1);
    members.push_back(FamilyMember{q, std::move(nm), "si", false,
                                   fingerprint(q).str()});
  }
  for (FamilyMember& m : sr) members.push_back(std::move(m));
  for (FamilyMember& m : dd) members.push_back(std::move(m));

  r.si_count = static_cast<int>(cs.quandles.size());
  r.sr_not_dd_count = 0;
  r.dd_count = 0;
  for (const FamilyMember& m : members) {
    if (m.family == "sr") ++r.sr_not_dd_count;
    if (m.family == "dd") ++r.dd_count;
  }
  r.chain_exhaustive = cs.exhaustive;

  timed("distinctness", [&] {
    if (p <= 7) {
      std::vector<QuandleTable> qs;
      qs.reserve(members.size());
      for (const FamilyMember& m : members) qs.push_back(m.q);
      if (dedupe_up_to_iso(qs).size() != qs.size())
        throw std::logic_error("census members are not pairwise distinct");
      r.dedupe_level = "full";
    } else {
      std::map<std::string, std::vector<std::size_t>> buckets;
      for (std::size_t i = 0; i < members.size(); ++i)
        buckets[members[i].fingerprint].push_back(i);
      for (const auto& [fp, idxs] : buckets)
        for (std::size_t a = 0; a < idxs.size(); ++a)
          for (std::size_t b = a + 1; b < idxs.size(); ++b)
            if (are_isomorphic(members[idxs[a]].q, members[idxs[b]].q))
              throw std::logic_error("fingerprint bucket contains isomorphic members");
      std::mt19937 rng(20260816u);
      int done = 0;
      while (done < spot_checks && members.size() >= 2) {
        std::size_t a = rng() % members.size();
        std::size_t b = rng() % members.size();
        if (a == b) continue;
        if (are_isomorphic(members[a].q, members[b].q))
          throw std::logic_error("random spot check found an isomorphic pair");
        ++done;
      }
      r.dedupe_level = "fingerprint+spot(" + std::to_string(spot_checks) + ")";
    }
  });

  // Quotient correspondence: each diamond member maps onto a size-4p member
  // of the same construction circle; record the computed pairing.
  if (!sr.empty()) {
    timed("quotient_correspondence", [&] {
      GkGroup gk = build_gk(p);
      for (const FamilyMember& m : members) {
        if (m.family != "sr") continue;
        Congruence zeta = zeta_congruence(m.q);
        QuandleTable qz = m.q.quotient(zeta.block_vector(), zeta.num_blocks());
        int jprime = 0;
        for (int j2 = 1; j2 <= 2; ++j2)
          if (are_isomorphic(qz, build_q4p(gk, j2).q)) {
            jprime = j2;
            break;
          }
        if (jprime == 0)
          throw std::logic_error("central quotient matches no size-4p member");
        r.notes.push_back(m.name + "/zeta ~ q(" + std::to_string(p) + "," +
                          std::to_string(jprime) + ")");
      }
    });
  }
  if (p == 7) {
    // The construction chose the least nontrivial cube root; the census must
    // not depend on that choice.
    timed("cube_root_independence", [&] {
      SrGroup alt = build_sr_group(7, 4);
      for (int j = 1; j <= 2; ++j) {
        QuandleTable q = build_sr_quandle(alt, j, {1, 0}).q;
        bool matched = false;
        for (const FamilyMember& m : members)
          if (m.family == "sr" && are_isomorphic(q, m.q)) {
            matched = true;
            break;
          }
        if (!matched)
          throw std::logic_error("alternate cube root produced a new quandle");
      }
      r.notes.push_back("diamond family independent of the cube root choice");
    });
  }

  for (const SearchCoverage& cov : cs.coverage)
    r.notes.push_back("chain n=" + std::to_string(cov.n) + ": " + cov.method +
                      ", candidates=" + std::to_string(cov.automorphism_candidates) +
                      ", built=" + std::to_string(cov.quandles_built) +
                      ", latin=" + std::to_string(cov.latin_found));
  r.notes.push_back(
      "subdirectly irreducible members beyond the chain tiers are excluded by "
      "structure checks (counting/appendix/galois suites), not by a group sweep");

  if (!tables_dir.empty()) {
    std::filesystem::create_directories(tables_dir);
    int idx = 0;
    for (const FamilyMember& m : members) {
      std::string file = tables_dir + "/p" + std::to_string(p) + "_" + m.family +
                         "_" + std::to_string(++idx) + ".tbl";
      std::ostringstream os;
      os << "# " << m.name << "\n" << m.q.serialize();
      std::ofstream out(file);
      out << os.str();
      ClassificationReport::Entry e;
      e.family = m.family;
      e.name = m.name;
      e.fingerprint = m.fingerprint;
      e.table_file = file;
      r.families.push_back(std::move(e));
    }
  } else {
    for (const FamilyMember& m : members) {
      ClassificationReport::Entry e;
      e.family = m.family;
      e.name = m.name;
      e.fingerprint = m.fingerprint;
      r.families.push_back(std::move(e));
    }
  }
  r.all_checks_passed = true;
  return r;
}

std::string report_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["counts"] = {{"si", r.si_count},
                 {"dd", r.dd_count},
                 {"sr_not_dd", r.sr_not_dd_count},
                 {"total", r.si_count + r.dd_count + r.sr_not_dd_count}};
  j["families"] = nlohmann::json::array();
  for (const ClassificationReport::Entry& e : r.families)
    j["families"].push_back({{"family", e.family},
                             {"name", e.name},
                             {"fingerprint", e.fingerprint},
                             {"table_file", e.table_file}});
  j["coverage"] = {{"tier", r.tier},
                   {"chain_exhaustive", r.chain_exhaustive},
                   {"dedupe_level", r.dedupe_level},
                   {"all_checks_passed", r.all_checks_passed},
                   {"notes", r.notes}};
  j["timings_ms"] = r.timings_ms;
  return j.dump(2);
}

}  // namespace qlat
