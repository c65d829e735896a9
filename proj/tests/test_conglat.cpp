#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unordered_set>
#include <vector>

#include "qlat/conglat.hpp"

using namespace qlat;

namespace {

QuandleTable projection_quandle(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = y;
  return QuandleTable(std::move(t));
}

// Intersection of two small permutation groups by filtering elements.
PermGroup intersect(const PermGroup& a, const PermGroup& b) {
  std::vector<Permutation> gens;
  for (const auto& e : a.elements(100000))
    if (b.contains(e)) gens.push_back(e);
  return PermGroup(a.degree(), gens);
}

PermGroup join_groups(const PermGroup& a, const PermGroup& b) {
  std::vector<Permutation> gens = a.generators();
  for (const auto& g : b.generators()) gens.push_back(g);
  return PermGroup(a.degree(), gens);
}

}  // namespace

TEST_CASE("congruence partition arithmetic") {
  Congruence a({5, 5, 7, 7, 9});
  CHECK(a == Congruence({0, 0, 1, 1, 2}));
  CHECK(a.num_blocks() == 3);
  Congruence b({0, 1, 1, 2, 2});
  CHECK(a.join(b).num_blocks() == 1);
  CHECK(a.meet(b) == Congruence({0, 1, 2, 3, 4}));
  CHECK(Congruence::finest(5).refines(a));
  CHECK(a.refines(Congruence::coarsest(5)));
  CHECK(!a.refines(b));
  Congruence c({0, 0, 1, 1, 1});
  CHECK(a.meet(c) == Congruence({0, 0, 1, 1, 2}));
  CHECK(a.blocks() == std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4}});
}

TEST_CASE("principal congruences of the nine-element reflection quandle") {
  QuandleTable r9 = affine_cyclic(9, 8);
  CHECK(principal_congruence(r9, 2, 2).is_finest());
  Congruence mod3 = principal_congruence(r9, 0, 3);
  CHECK(mod3.num_blocks() == 3);
  for (int x = 0; x < 9; ++x)
    CHECK(mod3.block_of(x) == mod3.block_of(x % 3));
  CHECK(principal_congruence(r9, 0, 1).is_coarsest());
}

TEST_CASE("lattice of a three-step chain") {
  QuandleTable r9 = affine_cyclic(9, 8);
  CongruenceLattice lat = congruence_lattice(r9);
  REQUIRE(lat.elems.size() == 3);
  CHECK(lat.shape_tag() == "chain-3");
  CHECK(lat.is_subdirectly_irreducible());
  CHECK(!lat.is_simple());
  CHECK(lat.monolith() != -1);
  CHECK(lat.elems[static_cast<std::size_t>(lat.monolith())].num_blocks() == 3);
  CHECK(lat.atoms().size() == 1);
  CHECK(lat.coatoms().size() == 1);
  CHECK(lat.cover_pairs().size() == 2);
  CHECK(!direct_decomposition(r9, lat).has_value());
}

TEST_CASE("simple quandles have two-element lattices") {
  CongruenceLattice lat = congruence_lattice(affine_cyclic(3, 2));
  CHECK(lat.is_simple());
  CHECK(lat.is_subdirectly_irreducible());
  CHECK(lat.shape_tag() == "chain-2");
}

TEST_CASE("product quandle decomposes and has skew congruences") {
  QuandleTable prod = direct_product(affine_cyclic(3, 2), affine_cyclic(3, 2));
  CongruenceLattice lat = congruence_lattice(prod);
  // 0, four lines (two factors plus two diagonals), 1.
  CHECK(lat.elems.size() == 6);
  CHECK(lat.atoms().size() == 4);
  CHECK(!lat.is_subdirectly_irreducible());
  CHECK(lat.shape_tag() == "other-6");
  auto dd = direct_decomposition(prod, lat);
  REQUIRE(dd.has_value());
  const auto& a = lat.elems[static_cast<std::size_t>(dd->first)];
  const auto& b = lat.elems[static_cast<std::size_t>(dd->second)];
  CHECK(a.num_blocks() * b.num_blocks() == 9);
  CHECK(a.meet(b).is_finest());
}

TEST_CASE("connectivity is required for lattice enumeration") {
  CHECK_THROWS_AS(all_congruences(projection_quandle(3)), std::invalid_argument);
}

TEST_CASE("displacements along congruences match the Galois picture") {
  for (const QuandleTable& q :
       {affine_cyclic(9, 8), affine_cyclic(5, 2),
        direct_product(affine_cyclic(3, 2), affine_cyclic(3, 2))}) {
    auto cons = all_congruences(q);
    for (const auto& alpha : cons) {
      PermGroup da = dis_of_congruence(q, alpha);
      // Orbit and kernel congruences recover alpha exactly (latin case).
      CHECK(orbit_congruence(q, da) == alpha);
      CHECK(kernel_congruence(q, da) == alpha);
      // Displacements along alpha preserve its blocks.
      PermGroup fix = dis_fixing_congruence(q, alpha);
      for (const auto& g : da.generators()) CHECK(fix.contains(g));
      CHECK(orbit_congruence(q, fix) == alpha);
      CHECK(is_abelian_congruence(q, alpha));  // affine examples
    }
    // Identities relating the operators across pairs.
    for (const auto& alpha : cons)
      for (const auto& beta : cons) {
        PermGroup da = dis_of_congruence(q, alpha);
        PermGroup db = dis_of_congruence(q, beta);
        PermGroup dj = dis_of_congruence(q, alpha.join(beta));
        CHECK(join_groups(da, db).same_group_as(dj));
        CHECK(orbit_congruence(q, join_groups(da, db)) == alpha.join(beta));
        CHECK(kernel_congruence(q, intersect(da, db)) == alpha.meet(beta));
      }
  }
}

TEST_CASE("kernel of the full displacement group is the coarsest congruence") {
  QuandleTable q5 = affine_cyclic(5, 2);
  CHECK(kernel_congruence(q5, q5.dis()).is_coarsest());
}

TEST_CASE("derived and central orbit congruences of affine quandles") {
  // Affine quandles are abelian: derived orbits are trivial, center covers.
  for (const QuandleTable& q : {affine_cyclic(9, 8), affine_cyclic(5, 2)}) {
    CHECK(gamma_congruence(q).is_finest());
    CHECK(zeta_congruence(q).is_coarsest());
    for (const auto& alpha : all_congruences(q))
      CHECK(is_central_congruence(q, alpha));
  }
}

TEST_CASE("translation-kernel congruence") {
  CHECK(sigma_congruence(affine_cyclic(5, 2)).is_finest());
  CHECK(sigma_congruence(projection_quandle(4)).is_coarsest());
}

TEST_CASE("lattice rendering") {
  QuandleTable r9 = affine_cyclic(9, 8);
  std::string dot = lattice_dot(r9, congruence_lattice(r9));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
  CHECK(dot.find("|Q/a|=3") != std::string::npos);
}
