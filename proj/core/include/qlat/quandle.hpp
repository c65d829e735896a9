#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlat/group.hpp"
#include "qlat/perm.hpp"

namespace qlat {

// A finite quandle given by its operation table: row x lists x*0, x*1, ...
// Construction always validates idempotence and that rows are bijections;
// left distributivity is checked when the size is at most the given limit
// (the cubic sweep gets expensive) and can always be run explicitly.
class QuandleTable {
 public:
  explicit QuandleTable(std::vector<std::vector<int>> table,
                        int distributivity_check_limit = 600);

  int size() const { return n_; }
  int op(int x, int y) const { return table_[static_cast<std::size_t>(x)]
                                             [static_cast<std::size_t>(y)]; }
  int left_div(int x, int y) const {  // unique z with x * z = y
    return unrow_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }
  const std::vector<std::vector<int>>& table() const { return table_; }

  Permutation left_translation(int x) const;
  bool is_left_distributive() const;  // full cubic sweep
  bool is_latin() const;
  bool is_faithful() const;   // x -> L_x injective
  bool is_connected() const;  // translation group acts transitively

  PermGroup lmlt() const;  // group generated by all left translations
  PermGroup dis() const;   // generated by L_x L_0^{-1} for every x

  // Partition of the carrier by equal left translations.
  std::vector<std::vector<int>> cayley_kernel_classes() const;

  // The factor table on the blocks of a partition; throws when the partition
  // is not compatible with the operation.
  QuandleTable quotient(const std::vector<int>& block_of, int num_blocks) const;

  bool is_solvable() const;   // displacement group solvable
  bool is_nilpotent() const;  // displacement group nilpotent

  std::string serialize() const;
  static QuandleTable deserialize(const std::string& text);

  bool operator==(const QuandleTable& o) const { return table_ == o.table_; }
  std::uint64_t hash_key() const;

 private:
  int n_;
  std::vector<std::vector<int>> table_;
  std::vector<std::vector<int>> unrow_;  // inverse rows for left division
};

// x * y = (x - f(x)) + f(y) on an abelian group, for an endomorphism f.
QuandleTable affine_quandle(const FiniteGroup& a, const GroupMap& f);
// Convenience for cyclic Z_m with f = multiplication by c.
QuandleTable affine_cyclic(int m, int c);

// Quandle on the left cosets of h (elements of a subgroup of fixed points of
// the automorphism f): xH * yH = x f(x^-1 y) H.
struct CosetQuandle {
  QuandleTable q;
  std::vector<int> coset_of;  // group element -> coset index
  std::vector<int> reps;      // coset index -> representative element
};
CosetQuandle coset_quandle(const FiniteGroup& g, const GroupMap& f,
                           const std::vector<int>& h_elements);

QuandleTable direct_product(const QuandleTable& a, const QuandleTable& b);

}  // namespace qlat
