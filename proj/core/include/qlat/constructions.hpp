#pragma once

#include <array>
#include <memory>
#include <vector>

#include "qlat/group.hpp"
#include "qlat/linfq.hpp"
#include "qlat/quandle.hpp"

namespace qlat {

// ---------------------------------------------------------------------------
// Small 2-groups
// ---------------------------------------------------------------------------

// {1, -1, i, -i, j, -j, k, -k}; identity is element 0, the central
// involution -1 is element 1.
std::shared_ptr<TableGroup> quaternion_group();
std::shared_ptr<AbelianGroup> klein_four();
std::shared_ptr<TableGroup> dihedral_eight();

// The central product of the dihedral and quaternion groups of order 8
// (their direct product with the two central involutions glued): an
// extraspecial group of order 32.
std::shared_ptr<TableGroup> central_product_dq();
// Defining relators on four abstract generators a, b, c, d; the central
// involution is b^2.
const std::vector<Word>& central_product_dq_relators();

// ---------------------------------------------------------------------------
// The plane-over-quaternion group Z_p^2 x| Q8 and its twists
// ---------------------------------------------------------------------------

// Least k > 1 with k^3 = 1 mod p.  Requires p prime with p = 1 mod 3.
int least_nontrivial_cube_root(int p);

// Z_p^2 x| Q8 where i, j act by the standard irreducible plane
// representation twisted by a primitive cube root k: the central involution
// acts as -1, so the group is centerless.
struct GkGroup {
  int p = 0, k = 0;
  std::shared_ptr<SemidirectGroup> group;
  int gen_v1 = 0, gen_v2 = 0;  // the two plane translations (e1, 1), (e2, 1)
  int gen_x = 0, gen_y = 0;    // the quaternion sections (0, i), (0, j)
};
GkGroup build_gk(int p);
// Same group with a caller-chosen nontrivial cube root k (the classification
// is independent of this choice; callers verify that by building both).
GkGroup build_gk(int p, int k);

// Order-3 automorphism (v, q) |-> (F_j v, phi(q)) where phi cycles
// i -> j -> ij -> i and F_j intertwines the plane action; j in {1, 2}.
// Its fixed subgroup has order 2p.
GroupMap build_fj(const GkGroup& gk, int j);

// The connected latin quandle of size 4p carried by the cosets of the fixed
// subgroup of build_fj.
CosetQuandle build_q4p(const GkGroup& gk, int j);

// ---------------------------------------------------------------------------
// G = (Z_p^2 x| Q8) x Z2^2 and the size-16p coset quandles
// ---------------------------------------------------------------------------

struct SrGroup {
  GkGroup gk;
  std::shared_ptr<DirectProductGroup> group;  // gk.group x klein_four
};
SrGroup build_sr_group(int p);
SrGroup build_sr_group(int p, int k);

// (g, w) |-> (fj(g), s(g) a + M w): fj as above, M the order-3 map of the
// Klein factor, and s the sign of the quaternion part in its first
// abelianized coordinate.  a = (0,0) gives a directly decomposable quandle;
// any nonzero a gives one that is not.  The fixed subgroup has order 2p
// either way, so the coset quandle has size 16p.
GroupMap build_f_sr(const SrGroup& g, int j, const std::array<int, 2>& a);
CosetQuandle build_sr_quandle(const SrGroup& g, int j,
                              const std::array<int, 2>& a);

// ---------------------------------------------------------------------------
// Affine families
// ---------------------------------------------------------------------------

// The endomorphism v |-> R v of a product of cyclic groups (row i taken
// modulo that coordinate's modulus).  Throws unless it is an automorphism.
GroupMap abelian_matrix_map(const std::shared_ptr<AbelianGroup>& a,
                            const std::vector<std::vector<int>>& rows);

// The connected latin quandle of size 4 (unique up to isomorphism).
QuandleTable build_q4();

// All nine connected latin quandles of size 16, pairwise non-isomorphic:
// five affine over Z2^4 (one per conjugacy class of fixed-point-free
// matrices with fixed-point-free complement) and four affine over Z4^2
// (companions of x^2 + ax + b with a, b odd).
std::vector<QuandleTable> latin_size16_family();

// All p-2 latin quandles of prime size p: x * y = (1-c)x + cy, c = 2..p-1.
std::vector<QuandleTable> latin_prime_family(int p);

// ---------------------------------------------------------------------------
// The two exceptional subdirectly irreducible quandles (sizes 48 and 80)
// ---------------------------------------------------------------------------

struct SiConstruction {
  GroupPtr group;          // Z2^4 x| Z_p, p in {3, 5}; centerless
  std::vector<int> gens;   // realized presentation generators
  GroupMap f;              // automorphism fixing only the identity
  QuandleTable quandle;    // x * y = x f(x^-1 y); size 48 or 80
};
SiConstruction build_si48();
SiConstruction build_si80();

// Their defining relators (3 resp. 2 abstract generators) and the words
// giving the twist's action on those generators.
const std::vector<Word>& si48_relators();
const std::vector<Word>& si48_twist_words();
const std::vector<Word>& si80_relators();
const std::vector<Word>& si80_twist_words();

// ---------------------------------------------------------------------------
// Automorphisms of Z_p^2 x| Q8, parametrized
// ---------------------------------------------------------------------------

// (v, q) |-> (T v + u_q, beta(q)).  T intertwines the plane action with its
// beta-twist, and u is a crossed translation determined by its values on the
// quaternion generators.
struct AutGk {
  FqMatrix t;
  std::array<int, 8> beta;
  std::array<std::array<int, 2>, 8> u;
};

// All of them: exactly 24 p^2 (p-1).
std::vector<AutGk> enumerate_aut_gk(const GkGroup& gk);
GroupMap aut_gk_as_map(const GkGroup& gk, const AutGk& a);

// ---------------------------------------------------------------------------
// Exhaustive matrix searches (odd p throughout)
// ---------------------------------------------------------------------------

// Every involution in GL_n(p) splits the space into its +-1 eigenspaces.
bool involutions_diagonalizable(int n, int p);

// No elementary abelian 2-group of rank n+1 embeds into GL_n(p).
bool no_faithful_elementary_abelian(int n, int p);

// The extraspecial group central_product_dq has no plane representation
// making Z_p^2 x| (D8 o Q8) centerless.
bool central_product_has_no_plane_rep(int p);

// For every plane representation of Q8, the semidirect product Z_p^2 x| Q8
// is centerless exactly when the central involution acts as -1.
bool q8_plane_reps_centerless_iff_z_negates(int p);

}  // namespace qlat
