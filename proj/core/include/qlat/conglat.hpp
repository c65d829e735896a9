#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlat/perm.hpp"
#include "qlat/quandle.hpp"

namespace qlat {

// An equivalence relation on {0..n-1} in canonical form: blocks are numbered
// by first occurrence, so equal partitions have equal block vectors.
class Congruence {
 public:
  explicit Congruence(std::vector<int> block_of);
  static Congruence finest(int n);    // all singletons
  static Congruence coarsest(int n);  // a single block

  int size() const { return static_cast<int>(block_of_.size()); }
  int num_blocks() const { return num_blocks_; }
  int block_of(int x) const { return block_of_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& block_vector() const { return block_of_; }
  std::vector<std::vector<int>> blocks() const;

  bool is_finest() const { return num_blocks_ == size(); }
  bool is_coarsest() const { return num_blocks_ == 1; }
  bool refines(const Congruence& coarser) const;  // this <= coarser
  Congruence join(const Congruence& o) const;     // finest common coarsening
  Congruence meet(const Congruence& o) const;     // coarsest common refinement

  bool operator==(const Congruence& o) const { return block_of_ == o.block_of_; }
  bool operator<(const Congruence& o) const { return block_of_ < o.block_of_; }

 private:
  std::vector<int> block_of_;
  int num_blocks_;
};

// Smallest congruence of q identifying a and b (Mal'cev style closure under
// both translation rules).
Congruence principal_congruence(const QuandleTable& q, int a, int b);

// Every congruence of a connected quandle, obtained by join-closing the
// principal congruences over one base point.  Validates internally that the
// result is meet-closed and that every member really is a congruence; throws
// std::invalid_argument on disconnected input.
std::vector<Congruence> all_congruences(const QuandleTable& q);

// The full lattice with its order, special elements, and a shape tag.
struct CongruenceLattice {
  std::vector<Congruence> elems;
  std::vector<std::vector<bool>> below;  // below[i][j]: elems[i] <= elems[j]
  int bottom = -1, top = -1;

  int index_of(const Congruence& c) const;  // -1 when absent
  std::vector<int> atoms() const;
  std::vector<int> coatoms() const;
  std::vector<std::pair<int, int>> cover_pairs() const;  // (lower, upper)
  int monolith() const;  // unique atom, or -1
  bool is_simple() const { return elems.size() == 2; }
  bool is_subdirectly_irreducible() const { return monolith() != -1; }
  // "chain-k" for a k-element chain, "diamond" for 0 < {a,b} < m < 1 with
  // m = a v b, otherwise "other-k".
  std::string shape_tag() const;
};

CongruenceLattice congruence_lattice(const QuandleTable& q);

// Displacements along a congruence: generated by L_x L_r^{-1} for x running
// over each block with representative r.
PermGroup dis_of_congruence(const QuandleTable& q, const Congruence& a);
// Displacements preserving every block setwise.
PermGroup dis_fixing_congruence(const QuandleTable& q, const Congruence& a,
                                std::size_t cap = 1000000);
// Partition into orbits of a subgroup of the translation group; checked to
// be a congruence.
Congruence orbit_congruence(const QuandleTable& q, const PermGroup& n);
// x ~ y when L_x L_y^{-1} lies in n; checked to be a congruence.
Congruence kernel_congruence(const QuandleTable& q, const PermGroup& n);

// Orbit congruences of the derived subgroup and the center of the
// displacement group.
Congruence gamma_congruence(const QuandleTable& q);
Congruence zeta_congruence(const QuandleTable& q, std::size_t cap = 1000000);
// Partition by equal left translations (always a congruence).
Congruence sigma_congruence(const QuandleTable& q);

bool is_abelian_congruence(const QuandleTable& q, const Congruence& a);
bool is_central_congruence(const QuandleTable& q, const Congruence& a,
                           std::size_t cap = 1000000);

// A pair of lattice indices realizing q as a direct product, if any exists.
std::optional<std::pair<int, int>> direct_decomposition(
    const QuandleTable& q, const CongruenceLattice& lat);

// Graphviz rendering of the lattice with quotient sizes (and blocks when the
// carrier is small).
std::string lattice_dot(const QuandleTable& q, const CongruenceLattice& lat);

}  // namespace qlat
