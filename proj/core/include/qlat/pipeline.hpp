#pragma once

// The classification searches and verification suites.
//
// chain_search enumerates the connected quandles of size 16p whose
// congruence lattice is a three-element chain.  Any such quandle is a coset
// quandle over a group G = Z_2^n x| Z_p (4 <= n <= 8, the action faithful
// and fixed-point-free), taken modulo the fixed subgroup of an automorphism
// f with |Fix(f)| = 2^{n-4}.  The search runs per admissible dimension n:
// it enumerates the isomorphism classes of the module (multiplicity vectors
// of irreducible factors of x^p - 1, deduplicated under the power-twist
// action), then the automorphisms f = (A, w, s) with A rho A^{-1} = rho^s,
// and filters the resulting coset quandles.
//
// The remaining entry points assemble the size-16p census: the two
// "diamond" quandles built over (Z_p^2 x| Q8) x Z_2^2, the directly
// decomposable products, census count reports, and the counting /
// appendix / Galois verification suites.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlat/conglat.hpp"
#include "qlat/constructions.hpp"
#include "qlat/group.hpp"
#include "qlat/linfq.hpp"
#include "qlat/quandle.hpp"

namespace qlat {

// ---------------------------------------------------------------------------
// Chain search

// One (p, n) module class: the action rho on Z_2^n together with its factor
// decomposition and the ambient group Z_2^n x| Z_p.  rho has order exactly p
// and no nonzero fixed vector, so the group is centerless.
struct ChainCandidate {
  int p = 0;
  int n = 0;  // n = 4 + k with 0 <= k <= 4
  // (irreducible factor of x^p - 1, multiplicity), only nonzero entries.
  std::vector<std::pair<F2Poly, int>> module_factors;
  FqMatrix rho;
  std::shared_ptr<SemidirectGroup> group;
};

// How one (p, n) pair was covered by the search.
struct SearchCoverage {
  int p = 0;
  int n = 0;
  // "exhaustive" when every (A, w, s) candidate was visited; "canonical"
  // when A ran over conjugacy-class representatives (still complete up to
  // isomorphism of the resulting quandles); "canonical+randomized" when the
  // twisted branch was only sampled.
  std::string method;
  bool exhaustive = false;
  std::uint64_t automorphism_candidates = 0;  // (A, w, s) triples visited
  std::uint64_t quandles_built = 0;           // survivors of the Fix filter
  std::uint64_t latin_found = 0;              // latin before the chain filter
};

struct ChainSearchResult {
  int p = 0;
  int tier = 0;
  std::vector<QuandleTable> quandles;  // pairwise non-isomorphic survivors
  std::vector<ChainCandidate> classes;
  std::vector<SearchCoverage> coverage;
  bool exhaustive = true;  // false iff any coverage entry is not exhaustive
};

// Primes that can act fixed-point-freely on some Z_2^n with 4 <= n <= 8,
// i.e. the multiplicative order of 2 mod p is at most 8: {3,5,7,17,31,127}.
const std::vector<int>& chain_allowed_primes();

// Admissible dimensions n for the pair (p, tier): multiples of ord_p(2)
// within [4, 8], cut to n = 4 (tier 1), n <= 6 (tier 2), n <= 8 (tier 3).
// Empty when ord_p(2) > 8 (e.g. p = 11, 13).
std::vector<int> chain_admissible_dims(int p, int tier);

// All multiplicity vectors over the nontrivial irreducible factors of
// x^p - 1 with total degree n, before power-twist deduplication.
std::vector<std::vector<int>> module_multiplicity_vectors(int p, int n);

// The vectors above, deduplicated under the power-twist permutation of the
// factors, realized as ChainCandidate instances.
std::vector<ChainCandidate> module_classes(int p, int n);

// The full search.  tier in {1, 2, 3}; see SearchCoverage for the honesty
// accounting of the (p, n) = (3, 8) twisted branch, which is sampled rather
// than exhausted.
ChainSearchResult chain_search(int p, int tier);

// Conjugacy-class representatives of the invertible untwisted intertwiners
// at p = 3 (the endomorphism ring is a full matrix algebra over GF(4)):
// one rational canonical form per elementary-divisor multiset, realized
// over F_2.  n must be even; used when the solution space is too large to
// enumerate, and exposed so tests can cross-check the class count against a
// brute conjugacy partition at small n.
std::vector<FqMatrix> chain_canonical_reps(int n);

// ---------------------------------------------------------------------------
// Size-16p families

struct FamilyMember {
  QuandleTable q;
  std::string name;
  std::string family;  // "si" | "sr" | "dd"
  bool directly_decomposable = false;
  std::string fingerprint;
};

// The two subdirectly reducible, directly indecomposable quandles of size
// 16p built from the order-six twists of (Z_p^2 x| Q8) x Z_2^2; empty unless
// p = 1 (mod 3).  Each member is verified: latin, diamond lattice with
// quotient sizes 16 / 4p / 4, |Dis| = 32p^2, elementary abelian center of
// Dis of order 4, no direct decomposition, and the two members are
// non-isomorphic.  Throws std::logic_error on any structural failure.
std::vector<FamilyMember> sr_family(int p);

// The directly decomposable latin quandles of size 16p: the nine size-16
// quandles times the p-2 affine quandles over Z_p, plus (p = 1 mod 3) the
// two products Q4 x Q(p, j).  Each member carries an explicit decomposition
// witness (the projection congruence pair, verified to meet trivially, join
// totally, and have factor quotients isomorphic to the factors).
std::vector<FamilyMember> dd_assembly(int p);

// ---------------------------------------------------------------------------
// Census report

struct ClassificationReport {
  int p = 0;
  int tier = 0;
  int si_count = 0;
  int dd_count = 0;
  int sr_not_dd_count = 0;
  struct Entry {
    std::string family;  // "si" | "sr" | "dd"
    std::string name;
    std::string fingerprint;
    std::string table_file;  // empty when tables were not written
  };
  std::vector<Entry> families;
  bool chain_exhaustive = true;   // chain search coverage within the tier
  bool all_checks_passed = false;
  // Distinctness verification level actually applied: "full" (pairwise
  // isomorphism), or "fingerprint+spot" with the number of random
  // backtracking confirmations.
  std::string dedupe_level;
  // Records, notably the computed quotient correspondence j -> j' between
  // the diamond quandles and the size-4p family, and the standing caveat
  // that the non-chain subdirectly irreducible branch (centerless groups of
  // order dividing 2^6 p) is covered by property checks, not a group sweep.
  std::vector<std::string> notes;
  std::map<std::string, double> timings_ms;
};

// Assemble the size-16p census for one prime: chain_search (subdirectly
// irreducible members), sr_family, dd_assembly, with a global distinctness
// check.  For p <= 7 distinctness is verified by full pairwise isomorphism
// tests; for p in {11, 13} by fingerprint separation plus `spot_checks`
// random backtracking confirmations (deterministically seeded).
// tables_dir, when nonempty, receives one .tbl file per member.
ClassificationReport classify_census(int p, int tier = 2, const std::string& tables_dir = "",
                            int spot_checks = 50);

// JSON rendering: {p, counts{si,dd,sr_not_dd}, families[{fingerprint,
// table_file}], coverage{tier, exhaustive, ...}, timings_ms}.
std::string report_json(const ClassificationReport& r);

// ---------------------------------------------------------------------------
// Verification suites

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  double ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool all_pass() const;
  std::string summary() const;  // one line per check
};

// Automorphism counting for the groups behind the diamond family, at desk
// scale (p = 7, also accepts 13 for the smaller half of the checks):
//   |Aut(Gk)| = 24 p^2 (p-1) by two independent routes (parametric
//   enumeration and a pruned generator-image search), the order-3 /
//   |Fix| = 2p subset F of size 16p, the parametric automorphism group of
//   G = Gk x Z_2^2 of order 2304 p^2 (p-1) with sampled verification, the
//   subset H (induced map in F, order-3 restriction to the Klein center) of
//   size 2^9 p, and the four conjugacy orbits of the defining twists with
//   sizes {448, 448, 1344, 1344} at p = 7, verified to partition H.
SuiteReport counting_suite(int p);

// Small exhaustive verifications used by the structure theory: order-2
// diagonalizability in GL_n(p), no faithful Z_2^m action on Z_p^n with
// m > n, the non-representability of the order-32 central product on the
// plane over F_7, and the "central involution acts as -I" dichotomy.
SuiteReport appendix_suite();

// Galois-connection and commutator-theory identities over the constructed
// corpus (>= 30 connected latin quandles): the congruence/displacement
// sandwich with equality, join/meet exchange laws, elementary abelian
// minimal congruences, Sylow orbit meets, slimness bounds, cyclic implies
// central, and the gamma-complement criterion.
SuiteReport galois_suite();

// Size-16 and size-p inventory: the nine latin quandles of size 16
// cross-checked against a brute conjugacy census of fixed-point-free
// automorphisms over every abelian group of order 16, and the p-2 affine
// members over Z_p for p <= 13.
SuiteReport inventory_suite();

// The corpus the Galois suite runs over, with names.
std::vector<std::pair<std::string, QuandleTable>> galois_corpus();

}  // namespace qlat
