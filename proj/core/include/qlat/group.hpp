#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlat/linfq.hpp"
#include "qlat/perm.hpp"

namespace qlat {

// A finite group on element indices {0, ..., size-1} with identity 0.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;
  virtual int size() const = 0;
  virtual int mul(int a, int b) const = 0;
  virtual int inv(int a) const = 0;
  virtual std::string element_name(int a) const;

  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  int commutator(int a, int b) const {  // a^-1 b^-1 a b
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }
  std::uint64_t element_order(int a) const;
  bool is_abelian() const;  // checks all pairs
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Group given by an explicit multiplication table.  Identity must be index 0;
// latinness and inverses are always validated, associativity only for sizes
// up to assoc_check_limit (larger tables come from sources that guarantee it).
class TableGroup : public FiniteGroup {
 public:
  explicit TableGroup(std::vector<std::vector<int>> table,
                      std::vector<std::string> names = {},
                      int assoc_check_limit = 256);
  int size() const override { return n_; }
  int mul(int a, int b) const override { return table_[a][b]; }
  int inv(int a) const override { return inv_[a]; }
  std::string element_name(int a) const override;

 private:
  int n_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
};

// Direct product of cyclic groups Z_m1 x ... x Z_mk, little-endian digits.
class AbelianGroup : public FiniteGroup {
 public:
  explicit AbelianGroup(std::vector<int> moduli);
  int size() const override { return n_; }
  int mul(int a, int b) const override;
  int inv(int a) const override;
  std::string element_name(int a) const override;

  std::vector<int> digits(int a) const;
  int index_of(const std::vector<int>& digits) const;
  const std::vector<int>& moduli() const { return moduli_; }

 private:
  std::vector<int> moduli_;
  int n_;
};

// Semidirect product (Z_q)^t x| K for a matrix action rho: K -> GL_t(q).
// Elements are pairs (v, k) with index vec_index * |K| + k; multiplication is
// (v1, k1)(v2, k2) = (v1 + rho(k1) v2, k1 k2).
class SemidirectGroup : public FiniteGroup {
 public:
  SemidirectGroup(int q, int t, GroupPtr k_group, std::vector<FqMatrix> rho);
  int size() const override { return n_; }
  int mul(int a, int b) const override;
  int inv(int a) const override;
  std::string element_name(int a) const override;

  int modulus() const { return q_; }
  int rank() const { return t_; }
  const GroupPtr& k_group() const { return k_; }
  const FqMatrix& action(int k) const { return rho_[static_cast<std::size_t>(k)]; }

  std::vector<int> vec_of(int a) const;
  int k_of(int a) const { return a % k_size_; }
  int make(const std::vector<int>& v, int k) const;

 private:
  int q_, t_, k_size_, n_;
  GroupPtr k_;
  std::vector<FqMatrix> rho_;
  std::vector<int> pow_q_;  // q^0..q^t
};

// Direct product A x B with index a * |B| + b.
class DirectProductGroup : public FiniteGroup {
 public:
  DirectProductGroup(GroupPtr a, GroupPtr b);
  int size() const override { return n_; }
  int mul(int x, int y) const override;
  int inv(int x) const override;
  std::string element_name(int x) const override;

  const GroupPtr& left() const { return a_; }
  const GroupPtr& right() const { return b_; }
  int make(int a, int b) const { return a * b_size_ + b; }
  int left_of(int x) const { return x / b_size_; }
  int right_of(int x) const { return x % b_size_; }

 private:
  GroupPtr a_, b_;
  int b_size_, n_;
};

// A map between groups stored by element images.  Nothing is assumed about
// it; homomorphism checks are explicit.
class GroupMap {
 public:
  GroupMap(GroupPtr domain, GroupPtr codomain, std::vector<int> images);
  int operator()(int g) const { return images_[static_cast<std::size_t>(g)]; }
  const GroupPtr& domain() const { return dom_; }
  const GroupPtr& codomain() const { return cod_; }
  const std::vector<int>& images() const { return images_; }

  GroupMap compose(const GroupMap& inner) const;  // this after inner
  GroupMap pow(std::uint64_t k) const;            // endomorphisms only
  bool verify_homomorphism() const;               // all pairs
  bool is_bijective() const;
  bool is_identity_map() const;
  std::vector<int> kernel_elements() const;
  std::vector<int> fixed_elements() const;  // endomorphisms only
  std::uint64_t map_order(std::uint64_t cap = 1 << 20) const;

 private:
  GroupPtr dom_, cod_;
  std::vector<int> images_;
};

// Extends a generator assignment to a homomorphism.  The breadth-first word
// closure assigns an image to every element; the full (element, generator)
// edge check then proves the result is a homomorphism, so a returned map
// needs no further verification.  Returns nothing when the images are
// inconsistent; throws when the generators fail to generate the domain.
std::optional<GroupMap> extend_map(GroupPtr domain,
                                   const std::vector<int>& gens,
                                   GroupPtr codomain,
                                   const std::vector<int>& images);

// Words in abstract generators: entry +i means generator i-1, -i its inverse.
using Word = std::vector<int>;

// All assignments (up to max_solutions) of the abstract generators to
// elements of H that satisfy every relator; when require_generate is set the
// assignment must generate H.  Relators are checked as soon as the
// generators they mention are assigned.
std::vector<std::vector<int>> realize_presentation(
    const FiniteGroup& h, int num_gens, const std::vector<Word>& relators,
    std::size_t max_solutions = 1, bool require_generate = true);

// Subgroup utilities on element-index lists (always sorted).
std::vector<int> closure(const FiniteGroup& g, const std::vector<int>& seeds);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h);
bool is_normal(const FiniteGroup& g, const std::vector<int>& h);
std::vector<int> center_elements(const FiniteGroup& g);
std::vector<int> commutator_subgroup_elements(const FiniteGroup& g);
std::vector<int> reduced_group_generators(const FiniteGroup& g);

// Quotient by a normal subgroup: the quotient table plus the projection map.
std::pair<std::shared_ptr<TableGroup>, GroupMap> quotient_group(
    GroupPtr g, const std::vector<int>& normal_elements);

// Bridges to the permutation layer.
PermGroup regular_representation(const FiniteGroup& g);
std::shared_ptr<TableGroup> table_from_perm_group(const PermGroup& g,
                                                  std::size_t cap = 4096);

// Isomorphism of small groups by invariants plus generator backtracking;
// returns an explicit isomorphism when one exists.
std::optional<GroupMap> small_group_iso(GroupPtr a, GroupPtr b);

}  // namespace qlat
