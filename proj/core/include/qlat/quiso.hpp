#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlat/conglat.hpp"
#include "qlat/quandle.hpp"

namespace qlat {

// Cheap-to-compare isomorphism invariants.  Fields that would need an
// oversized enumeration are left at their "unavailable" defaults, which
// compare equal, so a partial fingerprint never separates two quandles that
// a full one would identify.
struct Fingerprint {
  int size = 0;
  bool latin = false, connected = false, faithful = false;
  std::uint64_t lmlt_order = 0, dis_order = 0;
  std::uint64_t dis_center_order = 0;         // 0 = unavailable
  int num_congruences = -1;                   // -1 = unavailable
  int gamma_blocks = 0, zeta_blocks = 0;      // 0 = unavailable
  std::string lattice_shape;                  // empty = unavailable
  std::vector<std::uint64_t> translation_orders;       // sorted multiset
  std::vector<std::uint64_t> dis_abelianization_orders;  // sorted; empty = n/a

  bool operator==(const Fingerprint& o) const;
  bool operator<(const Fingerprint& o) const;
  std::string str() const;
};

Fingerprint fingerprint(const QuandleTable& q);

// The quandle with carrier renamed along p: table'[p(x)][p(y)] = p(x*y).
QuandleTable relabel(const QuandleTable& q, const Permutation& p);

// An explicit isomorphism a -> b (image vector) or nothing.  Backtracks over
// images of a small generating set, replaying the closure that produced the
// rest of the carrier.  Throws capacity_error when the quandle needs more
// than 10 generators (wildly disconnected inputs).
std::optional<std::vector<int>> find_isomorphism(const QuandleTable& a,
                                                 const QuandleTable& b);
bool are_isomorphic(const QuandleTable& a, const QuandleTable& b);

// Indices of one representative per isomorphism class, in input order.
std::vector<std::size_t> dedupe_up_to_iso(const std::vector<QuandleTable>& qs);

}  // namespace qlat
