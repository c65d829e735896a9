#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qlat/common.hpp"

namespace qlat {

// A permutation of {0, ..., n-1}, stored as its image vector.
// Composition follows function application: (a.compose(b))(x) = a(b(x)).
class Permutation {
 public:
  explicit Permutation(int degree);
  static Permutation identity(int degree);
  static Permutation from_images(std::vector<int> images);
  // Cycles over 0-based points; points not mentioned are fixed.
  static Permutation from_cycles(int degree,
                                 const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }

  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  Permutation pow(long long k) const;
  std::uint64_t order() const;
  bool is_identity() const;
  std::vector<int> moved_points() const;
  // Cycle lengths >= 2, sorted descending.
  std::vector<int> cycle_type() const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }
  std::uint64_t hash_key() const;
  std::string str() const;  // disjoint cycle notation, "()" for identity

 private:
  std::vector<std::uint16_t> img_;
};

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    return static_cast<std::size_t>(p.hash_key());
  }
};

namespace detail {
class StabChain;  // deterministic Schreier-Sims stabilizer chain
}

// A permutation group on {0, ..., degree-1} given by generators.  Order and
// membership come from a stabilizer chain built on first use; whole-group
// element listings are breadth-first searches guarded by an element cap.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Permutation> generators);
  static PermGroup trivial(int degree);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  std::uint64_t order() const;
  bool contains(const Permutation& p) const;
  bool is_trivial() const;
  bool is_abelian() const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool same_group_as(const PermGroup& other) const;

  std::vector<Permutation> elements(std::size_t cap = 1000000) const;

  std::vector<int> orbit(int point) const;
  std::vector<std::vector<int>> orbits() const;
  bool is_transitive() const;

  // Smallest subgroup containing `subgens` that is normalized by this group.
  PermGroup normal_closure(const std::vector<Permutation>& subgens) const;
  PermGroup derived_subgroup() const;
  // G, G', G'', ... down to stabilization.
  std::vector<PermGroup> derived_series() const;
  // G, [G,G], [[G,G],G], ... down to stabilization.
  std::vector<PermGroup> lower_central_series() const;
  bool is_solvable() const;
  bool is_nilpotent() const;
  // Elements commuting with everything (enumerates the group; cap guarded).
  PermGroup center(std::size_t cap = 1000000) const;

  // Generators with redundant ones greedily removed.
  std::vector<Permutation> reduced_generators() const;

  // Action on the blocks of a partition of {0..degree-1}; the partition must
  // be preserved by every generator.  Degree of the result = #blocks.
  PermGroup action_on_blocks(const std::vector<std::vector<int>>& blocks) const;
  // Subgroup of elements fixing every block setwise (cap guarded).
  PermGroup block_action_kernel(const std::vector<std::vector<int>>& blocks,
                                std::size_t cap = 1000000) const;

  // Action on left cosets gH of the given subgroup by left multiplication.
  // Coset 0 is H itself.
  PermGroup coset_action(const PermGroup& subgroup) const;

 private:
  detail::StabChain& chain() const;
  int degree_;
  std::vector<Permutation> gens_;
  mutable std::shared_ptr<detail::StabChain> chain_;
};

}  // namespace qlat
