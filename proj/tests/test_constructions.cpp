#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>
#include <vector>

#include "qlat/common.hpp"
#include "qlat/conglat.hpp"
#include "qlat/constructions.hpp"
#include "qlat/group.hpp"
#include "qlat/linfq.hpp"
#include "qlat/quandle.hpp"
#include "qlat/quiso.hpp"

using namespace qlat;

namespace {

int eval_word(const FiniteGroup& g, const std::vector<int>& gens,
              const Word& w) {
  int acc = 0;
  for (int letter : w) {
    int gen = gens[static_cast<std::size_t>(std::abs(letter) - 1)];
    acc = g.mul(acc, letter > 0 ? gen : g.inv(gen));
  }
  return acc;
}

std::vector<int> involutions(const FiniteGroup& g) {
  std::vector<int> out;
  for (int x = 1; x < g.size(); ++x)
    if (g.mul(x, x) == 0) out.push_back(x);
  return out;
}

// True when g contains three pairwise commuting involutions spanning an
// elementary abelian subgroup of order eight.
bool has_elementary_abelian_eight(const FiniteGroup& g) {
  auto inv = involutions(g);
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      int a = inv[i], b = inv[j];
      if (g.mul(a, b) != g.mul(b, a)) continue;
      std::array<int, 4> span = {0, a, b, g.mul(a, b)};
      for (std::size_t k = j + 1; k < inv.size(); ++k) {
        int c = inv[k];
        if (g.mul(a, c) != g.mul(c, a)) continue;
        if (g.mul(b, c) != g.mul(c, b)) continue;
        if (std::find(span.begin(), span.end(), c) == span.end()) return true;
      }
    }
  return false;
}

// The matrix of the plane part of an endomorphism of a plane-by-quaternion
// group, read off from the images of the two translation generators.
FqMatrix plane_matrix_of(const GkGroup& gk, const GroupMap& f) {
  FqMatrix m(gk.p, 2, 2);
  auto c1 = gk.group->vec_of(f(gk.gen_v1));
  auto c2 = gk.group->vec_of(f(gk.gen_v2));
  for (int r = 0; r < 2; ++r) {
    m.set(r, 0, c1[static_cast<std::size_t>(r)]);
    m.set(r, 1, c2[static_cast<std::size_t>(r)]);
  }
  return m;
}

QuandleTable quotient_by(const QuandleTable& q, const Congruence& c) {
  return q.quotient(c.block_vector(), c.num_blocks());
}

}  // namespace

TEST_CASE("quaternion, dihedral, and Klein building blocks") {
  auto q8 = quaternion_group();
  REQUIRE(q8->size() == 8);
  CHECK(!q8->is_abelian());
  // 1, -1, i, -i, j, -j, k, -k at indices 0..7.
  CHECK(q8->mul(2, 2) == 1);  // i*i = -1
  CHECK(q8->mul(2, 4) == 6);  // i*j = k
  CHECK(q8->mul(4, 2) == 7);  // j*i = -k
  CHECK(q8->mul(4, 6) == 2);  // j*k = i
  CHECK(q8->mul(6, 2) == 4);  // k*i = j
  CHECK(q8->mul(2, 6) == 5);  // i*k = -j
  CHECK(q8->element_order(1) == 2);
  for (int x : {2, 3, 4, 5, 6, 7}) CHECK(q8->element_order(x) == 4);
  CHECK(involutions(*q8) == std::vector<int>{1});
  CHECK(center_elements(*q8) == std::vector<int>{0, 1});

  auto d8 = dihedral_eight();
  REQUIRE(d8->size() == 8);
  CHECK(!d8->is_abelian());
  CHECK(involutions(*d8).size() == 5);
  CHECK(center_elements(*d8) == std::vector<int>{0, 4});  // {1, r^2}
  CHECK(!small_group_iso(d8, q8).has_value());

  auto v4 = klein_four();
  REQUIRE(v4->size() == 4);
  CHECK(v4->is_abelian());
  for (int x = 1; x < 4; ++x) CHECK(v4->element_order(x) == 2);
}

TEST_CASE("quaternion group satisfies its presentation in 24 generating pairs") {
  auto q8 = quaternion_group();
  // <x, y | x^4, x^2 y^-2, y^-1 x y x>
  std::vector<Word> rels = {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}};
  auto sols = realize_presentation(*q8, 2, rels, 100, true);
  CHECK(sols.size() == 24);  // one per automorphism
  CHECK(std::find(sols.begin(), sols.end(), std::vector<int>{2, 4}) !=
        sols.end());
  for (const auto& s : sols)
    for (const Word& r : rels) CHECK(eval_word(*q8, s, r) == 0);
}

TEST_CASE("central product of the dihedral and quaternion groups") {
  auto k = central_product_dq();
  REQUIRE(k->size() == 32);
  auto z = center_elements(*k);
  REQUIRE(z.size() == 2);
  CHECK(commutator_subgroup_elements(*k) == z);
  // Minus type: no elementary abelian subgroup of order eight.
  CHECK(!has_elementary_abelian_eight(*k));
  // It is not the direct product of the quaternion group with a Klein group
  // (that one has plenty of elementary abelian subgroups of order eight).
  auto qv = std::make_shared<DirectProductGroup>(quaternion_group(), klein_four());
  CHECK(has_elementary_abelian_eight(*qv));
  CHECK(!small_group_iso(k, qv).has_value());

  auto sols = realize_presentation(*k, 4, central_product_dq_relators(), 1, true);
  REQUIRE(sols.size() == 1);
  const auto& tup = sols[0];
  int zc = z[1];
  // b squares to the central involution; a is a non-central involution.
  CHECK(k->mul(tup[1], tup[1]) == zc);
  CHECK(k->mul(tup[0], tup[0]) == 0);
  CHECK(tup[0] != zc);
  CHECK(tup[0] != 0);
}

TEST_CASE("least nontrivial cube roots of unity") {
  CHECK(least_nontrivial_cube_root(7) == 2);
  CHECK(least_nontrivial_cube_root(13) == 3);
  CHECK(least_nontrivial_cube_root(31) == 5);
  for (int p : {7, 13, 31}) {
    long long klong = least_nontrivial_cube_root(p);
    CHECK((klong * klong + klong + 1) % p == 0);
  }
  CHECK_THROWS_AS((void)least_nontrivial_cube_root(5), std::invalid_argument);
  CHECK_THROWS_AS((void)least_nontrivial_cube_root(11), std::invalid_argument);
}

TEST_CASE("the plane-by-quaternion group and its order-three twists") {
  for (int p : {7, 13}) {
    CAPTURE(p);
    auto gk = build_gk(p);
    const auto& g = *gk.group;
    REQUIRE(g.size() == 8 * p * p);
    CHECK(center_elements(g) == std::vector<int>{0});
    CHECK(g.element_order(gk.gen_v1) == p);
    CHECK(g.element_order(gk.gen_v2) == p);
    CHECK(g.element_order(gk.gen_x) == 4);
    CHECK(g.element_order(gk.gen_y) == 4);
    // The quaternion sections multiply like i * j = k.
    CHECK(g.mul(gk.gen_x, gk.gen_y) == g.make({0, 0}, 6));
    // -1 acts as the negated identity on the plane.
    CHECK(g.action(1) == g.action(0).neg());

    for (int j : {1, 2}) {
      CAPTURE(j);
      auto f = build_fj(gk, j);
      CHECK(f.map_order(16) == 3);
      CHECK(f.fixed_elements().size() == static_cast<std::size_t>(2 * p));
      // The quaternion part cycles the axes i -> j -> k, preserving signs.
      CHECK(g.k_of(f(gk.gen_x)) == 4);
      CHECK(g.k_of(f(gk.gen_y)) == 6);
      // The plane part intertwines the axis rotations along that cycle.
      FqMatrix fm = plane_matrix_of(gk, f);
      CHECK(fm.pow(3).is_identity());
      CHECK(fm.mul(g.action(2)) == g.action(4).mul(fm));
      CHECK(fm.mul(g.action(4)) == g.action(6).mul(fm));
    }
  }
}

TEST_CASE("size-4p coset quandles from the order-three twists") {
  auto gk = build_gk(7);
  auto c1 = build_q4p(gk, 1);
  auto c2 = build_q4p(gk, 2);
  const QuandleTable& a = c1.q;
  const QuandleTable& b = c2.q;
  auto q4 = build_q4();

  for (const auto* q : {&a, &b}) {
    REQUIRE(q->size() == 28);
    CHECK(q->is_latin());
    CHECK(q->is_connected());
    CHECK(q->is_faithful());
    CHECK(q->is_solvable());
    CHECK(!q->is_nilpotent());
    auto lat = congruence_lattice(*q);
    CHECK(lat.shape_tag() == "chain-3");
    int mono = lat.monolith();
    REQUIRE(mono >= 0);
    const Congruence& alpha = lat.elems[static_cast<std::size_t>(mono)];
    CHECK(alpha.num_blocks() == 4);
    // Collapsing the unique minimal congruence leaves the connected
    // four-element quandle.
    CHECK(are_isomorphic(quotient_by(*q, alpha), q4));
  }
  CHECK(!are_isomorphic(a, b));

  // Bookkeeping of the coset table.
  REQUIRE(c1.reps.size() == 28);
  REQUIRE(c1.coset_of.size() == static_cast<std::size_t>(gk.group->size()));
  for (int i = 0; i < 28; ++i)
    CHECK(c1.coset_of[static_cast<std::size_t>(c1.reps[static_cast<std::size_t>(i)])] == i);

  // Same construction at p = 13 with the cube root k = 3.
  auto gk13 = build_gk(13);
  auto c13 = build_q4p(gk13, 1);
  REQUIRE(c13.q.size() == 52);
  CHECK(c13.q.is_latin());
  CHECK(c13.q.is_connected());
  CHECK(congruence_lattice(c13.q).shape_tag() == "chain-3");
}

TEST_CASE("the connected quandle of size four") {
  auto q4 = build_q4();
  REQUIRE(q4.size() == 4);
  CHECK(q4.is_latin());
  CHECK(q4.is_connected());
  CHECK(q4.is_faithful());
  CHECK(congruence_lattice(q4).is_simple());
  CHECK(q4.dis().order() == 4);
  CHECK(q4.lmlt().order() == 12);
}

TEST_CASE("the nine latin quandles of size sixteen") {
  auto fam = latin_size16_family();
  REQUIRE(fam.size() == 9);

  std::vector<int> congruence_counts;
  int with_order_four = 0, without_order_four = 0;
  for (const auto& q : fam) {
    REQUIRE(q.size() == 16);
    CHECK(q.is_latin());
    CHECK(q.is_connected());
    CHECK(q.is_faithful());
    CHECK(q.is_nilpotent());  // affine over an abelian group
    CHECK(q.dis().order() == 16);
    CHECK(q.dis().is_abelian());
    auto fp = fingerprint(q);
    congruence_counts.push_back(fp.num_congruences);
    bool has4 = std::find(fp.dis_abelianization_orders.begin(),
                          fp.dis_abelianization_orders.end(),
                          4u) != fp.dis_abelianization_orders.end();
    (has4 ? with_order_four : without_order_four) += 1;
  }
  // Five members have elementary abelian displacement group, four have
  // displacement group with elements of order four.
  CHECK(without_order_four == 5);
  CHECK(with_order_four == 4);
  // Congruence counts: three simple members, one with a three-chain, one
  // whose twist is a field scalar (every subspace invariant: 7 congruences),
  // and the four order-four-displacement members with three congruences each.
  std::sort(congruence_counts.begin(), congruence_counts.end());
  CHECK(congruence_counts ==
        std::vector<int>{2, 2, 2, 3, 3, 3, 3, 3, 7});
  // Pairwise non-isomorphic.
  auto reps = dedupe_up_to_iso(fam);
  CHECK(reps.size() == 9);
}

TEST_CASE("latin quandles of odd prime size") {
  for (int p : {5, 7}) {
    CAPTURE(p);
    auto fam = latin_prime_family(p);
    REQUIRE(fam.size() == static_cast<std::size_t>(p - 2));
    for (const auto& q : fam) {
      REQUIRE(q.size() == p);
      CHECK(q.is_latin());
      CHECK(q.is_connected());
    }
    CHECK(dedupe_up_to_iso(fam).size() == fam.size());
  }
}

TEST_CASE("size-16p quandles with the diamond congruence pattern") {
  auto g = build_sr_group(7);
  // The defining twist has order six with the non-zero Klein offset and
  // order three with the zero offset.
  CHECK(build_f_sr(g, 1, {1, 0}).map_order(16) == 6);
  CHECK(build_f_sr(g, 2, {1, 0}).map_order(16) == 6);
  CHECK(build_f_sr(g, 1, {0, 0}).map_order(16) == 3);
  CHECK(build_f_sr(g, 2, {0, 0}).map_order(16) == 3);
  auto q = build_sr_quandle(g, 1, {1, 0}).q;
  REQUIRE(q.size() == 112);
  CHECK(q.is_latin());
  CHECK(q.is_connected());
  CHECK(q.is_faithful());
  CHECK(q.is_solvable());
  CHECK(!q.is_nilpotent());

  auto d = q.dis();
  CHECK(d.order() == 1568);  // 32 p^2
  auto zc = d.center();
  REQUIRE(zc.order() == 4);
  for (const auto& perm : zc.elements())
    if (!perm.is_identity()) CHECK(perm.order() == 2);

  Congruence gamma = gamma_congruence(q);
  Congruence zeta = zeta_congruence(q);
  CHECK(gamma.num_blocks() == 16);
  CHECK(zeta.num_blocks() == 28);
  Congruence nu = gamma.join(zeta);
  CHECK(nu.num_blocks() == 4);
  CHECK(gamma.meet(zeta).is_finest());

  auto lat = congruence_lattice(q);
  REQUIRE(lat.elems.size() == 5);
  CHECK(lat.shape_tag() == "diamond");
  auto at = lat.atoms();
  std::set<int> atom_set(at.begin(), at.end());
  std::set<int> expected = {lat.index_of(gamma), lat.index_of(zeta)};
  CHECK(atom_set == expected);
  auto co = lat.coatoms();
  REQUIRE(co.size() == 1);
  CHECK(lat.elems[static_cast<std::size_t>(co[0])] == nu);
  CHECK(!lat.is_subdirectly_irreducible());
  CHECK(!direct_decomposition(q, lat).has_value());

  // The displacement group modulo the third term of its lower central
  // series is the quaternion group times a Klein group.
  auto lcs = d.lower_central_series();
  REQUIRE(lcs.size() >= 3);
  CHECK(lcs[1].order() == 98);
  CHECK(lcs[2].order() == 49);
  CHECK(lcs.back().order() == 49);  // stabilizes away from 1: not nilpotent
  auto head = table_from_perm_group(d.coset_action(lcs[2]));
  REQUIRE(head->size() == 32);
  auto qv = std::make_shared<DirectProductGroup>(quaternion_group(), klein_four());
  CHECK(small_group_iso(head, qv).has_value());

  // Collapsing the central atom leaves the size-28 quandle with the same
  // twist index.
  auto gk = build_gk(7);
  QuandleTable central_quot = quotient_by(q, zeta);
  CHECK(are_isomorphic(central_quot, build_q4p(gk, 1).q));
  CHECK(!are_isomorphic(central_quot, build_q4p(gk, 2).q));

  // Collapsing the other atom leaves a sixteen-element latin quandle: the
  // one whose twist is uniserial.  That is forced: the interval above this
  // atom is a three-element chain, and only one sixteen-element member has
  // exactly three congruences over an elementary abelian displacement group.
  QuandleTable small_quot = quotient_by(q, gamma);
  CHECK(small_quot.is_latin());
  CHECK(small_quot.is_connected());
  auto fam16 = latin_size16_family();
  int matches = 0, which = -1;
  for (std::size_t i = 0; i < fam16.size(); ++i)
    if (are_isomorphic(small_quot, fam16[i])) { ++matches; which = static_cast<int>(i); }
  CHECK(matches == 1);
  CHECK(which == 3);
}

TEST_CASE("zero-offset variant decomposes as a direct product") {
  auto g = build_sr_group(7);
  auto q0 = build_sr_quandle(g, 1, {0, 0}).q;
  REQUIRE(q0.size() == 112);
  CHECK(q0.is_latin());
  CHECK(q0.is_connected());

  auto lat = congruence_lattice(q0);
  CHECK(lat.elems.size() > 5);  // strictly richer than the diamond
  auto dd = direct_decomposition(q0, lat);
  REQUIRE(dd.has_value());

  // The factors are the size-4 quandle and the size-28 quandle with the
  // same twist index.
  auto gk = build_gk(7);
  auto q4 = build_q4();
  CHECK(are_isomorphic(q0, direct_product(q4, build_q4p(gk, 1).q)));
  CHECK(!are_isomorphic(q0, direct_product(q4, build_q4p(gk, 2).q)));
}

TEST_CASE("the two twist choices give different size-16p quandles") {
  auto g = build_sr_group(7);
  auto qa = build_sr_quandle(g, 1, {1, 0}).q;
  auto qb = build_sr_quandle(g, 2, {1, 0}).q;
  REQUIRE(qb.size() == 112);
  CHECK(qb.is_latin());
  CHECK(qb.is_connected());
  CHECK(!are_isomorphic(qa, qb));

  auto gk = build_gk(7);
  QuandleTable quot = quotient_by(qb, zeta_congruence(qb));
  CHECK(are_isomorphic(quot, build_q4p(gk, 2).q));
  CHECK(!are_isomorphic(quot, build_q4p(gk, 1).q));
}

TEST_CASE("subdirectly irreducible quandles of sizes 48 and 80") {
  struct Expect {
    SiConstruction si;
    const std::vector<Word>& rels;
    const std::vector<Word>& twists;
    int order;
    int num_gens;
  };
  Expect cases[] = {
      {build_si48(), si48_relators(), si48_twist_words(), 48, 3},
      {build_si80(), si80_relators(), si80_twist_words(), 80, 2},
  };
  for (auto& e : cases) {
    CAPTURE(e.order);
    const auto& g = *e.si.group;
    REQUIRE(g.size() == e.order);
    CHECK(center_elements(g) == std::vector<int>{0});
    REQUIRE(e.si.gens.size() == static_cast<std::size_t>(e.num_gens));
    for (const Word& r : e.rels) CHECK(eval_word(g, e.si.gens, r) == 0);
    CHECK(closure(g, e.si.gens).size() == static_cast<std::size_t>(e.order));

    CHECK(e.si.f.verify_homomorphism());
    CHECK(e.si.f.is_bijective());
    CHECK(e.si.f.fixed_elements() == std::vector<int>{0});

    const QuandleTable& q = e.si.quandle;
    REQUIRE(q.size() == e.order);
    CHECK(q.is_latin());
    CHECK(q.is_connected());
    CHECK(q.is_faithful());
    CHECK(q.is_solvable());
    CHECK(!q.is_nilpotent());
    // With a fixed-point-free twist the displacements are exactly the left
    // translations of the carrier group.
    CHECK(q.dis().order() == static_cast<std::uint64_t>(e.order));
    CHECK(q.lmlt().order() ==
          static_cast<std::uint64_t>(e.order) * e.si.f.map_order(64));
    auto lat = congruence_lattice(q);
    CHECK(lat.is_subdirectly_irreducible());
    CHECK(lat.shape_tag() == "chain-3");

    // A second, independent realization of the same presentation gives an
    // isomorphic quandle.
    auto sols = realize_presentation(g, e.num_gens, e.rels, 2, true);
    REQUIRE(sols.size() == 2);
    const auto& gens2 = sols[1];
    std::vector<int> images2;
    for (const Word& w : e.twists) images2.push_back(eval_word(g, gens2, w));
    auto f2 = extend_map(e.si.group, gens2, e.si.group, images2);
    REQUIRE(f2.has_value());
    CHECK(f2->is_bijective());
    CHECK(f2->fixed_elements() == std::vector<int>{0});
    auto q2 = coset_quandle(g, *f2, {0}).q;
    CHECK(are_isomorphic(q, q2));
  }
}

TEST_CASE("automorphisms of the plane-by-quaternion group") {
  auto gk = build_gk(7);
  auto auts = enumerate_aut_gk(gk);
  REQUIRE(auts.size() == 7056u);  // 24 p^2 (p-1)

  std::set<std::vector<int>> images;
  for (const auto& a : auts) images.insert(aut_gk_as_map(gk, a).images());
  CHECK(images.size() == 7056u);

  auto& rng = test_rng();
  std::vector<GroupMap> sample;
  for (int t = 0; t < 12; ++t) {
    const auto& a = auts[static_cast<std::size_t>(rng() % auts.size())];
    GroupMap m = aut_gk_as_map(gk, a);
    CHECK(m.verify_homomorphism());
    CHECK(m.is_bijective());
    sample.push_back(m);
  }
  // Closed under composition.
  for (int t = 0; t + 1 < static_cast<int>(sample.size()); ++t) {
    auto c = sample[static_cast<std::size_t>(t)].compose(
        sample[static_cast<std::size_t>(t + 1)]);
    CHECK(images.count(c.images()) == 1);
  }
  // The order-three twists are themselves automorphisms in the list.
  CHECK(images.count(build_fj(gk, 1).images()) == 1);
  CHECK(images.count(build_fj(gk, 2).images()) == 1);

  auto gk13 = build_gk(13);
  auto auts13 = enumerate_aut_gk(gk13);
  CHECK(auts13.size() == 48672u);  // 24 * 169 * 12
  for (int t = 0; t < 4; ++t) {
    const auto& a = auts13[static_cast<std::size_t>(rng() % auts13.size())];
    GroupMap m = aut_gk_as_map(gk13, a);
    CHECK(m.verify_homomorphism());
    CHECK(m.is_bijective());
  }
}

TEST_CASE("exhaustive matrix searches over small odd fields") {
  CHECK(involutions_diagonalizable(2, 3));
  CHECK(involutions_diagonalizable(2, 5));
  CHECK(involutions_diagonalizable(2, 7));
  CHECK(involutions_diagonalizable(3, 3));
  CHECK(involutions_diagonalizable(3, 5));

  CHECK(no_faithful_elementary_abelian(2, 3));
  CHECK(no_faithful_elementary_abelian(2, 5));
  CHECK(no_faithful_elementary_abelian(3, 3));

  CHECK(central_product_has_no_plane_rep(3));
  CHECK(central_product_has_no_plane_rep(5));
  CHECK(central_product_has_no_plane_rep(7));

  CHECK(q8_plane_reps_centerless_iff_z_negates(3));
  CHECK(q8_plane_reps_centerless_iff_z_negates(5));
}

TEST_CASE("left translations by the whole group recover the displacements") {
  // For a coset quandle xH * yH = x f(x^-1 y) H, left multiplication by any
  // group element is a quandle automorphism.  When the twisted subgroup has
  // trivial core the resulting map G -> Aut(Q) is injective, and landing
  // inside a displacement group of the same order it identifies Dis(Q) with
  // G itself.
  auto sr = build_sr_group(7);
  const auto& G = sr.group;
  GroupMap f = build_f_sr(sr, 1, {1, 0});
  auto cq = build_sr_quandle(sr, 1, {1, 0});
  const QuandleTable& q = cq.q;
  REQUIRE(q.size() == 112);

  auto tau = [&](int g) {
    std::vector<int> img(static_cast<std::size_t>(q.size()));
    for (int c = 0; c < q.size(); ++c)
      img[static_cast<std::size_t>(c)] =
          cq.coset_of[static_cast<std::size_t>(G->mul(g, cq.reps[static_cast<std::size_t>(c)]))];
    return Permutation::from_images(img);
  };

  // tau is a homomorphism into the automorphism group: spot-check a few
  // products and that each image preserves the quandle operation.
  auto& rng = test_rng();
  for (int t = 0; t < 8; ++t) {
    int a = static_cast<int>(rng() % static_cast<unsigned>(G->size()));
    int b = static_cast<int>(rng() % static_cast<unsigned>(G->size()));
    CHECK(tau(G->mul(a, b)) == tau(a).compose(tau(b)));
    Permutation pa = tau(a);
    bool preserves = true;
    for (int x = 0; x < q.size() && preserves; ++x)
      for (int y = 0; y < q.size() && preserves; ++y)
        if (pa(q.op(x, y)) != q.op(pa(x), pa(y))) preserves = false;
    CHECK(preserves);
  }

  // The twisted subgroup has trivial core, so tau is injective.
  std::vector<int> H = f.fixed_elements();
  CHECK(H.size() == 14);  // 2p
  std::vector<char> in_h(static_cast<std::size_t>(G->size()), 0);
  for (int h : H) in_h[static_cast<std::size_t>(h)] = 1;
  int core = 0;
  for (int g = 0; g < G->size(); ++g) {
    bool all = true;
    for (int x = 0; x < G->size() && all; ++x)
      if (!in_h[static_cast<std::size_t>(G->mul(G->mul(G->inv(x), g), x))]) all = false;
    if (all) ++core;
  }
  CHECK(core == 1);

  // Every translation lies in the displacement group, which has the same
  // order as G; injectivity then makes Dis(Q) isomorphic to G.
  PermGroup dis = q.dis();
  CHECK(dis.order() == static_cast<std::uint64_t>(G->size()));  // 1568
  for (int g : reduced_group_generators(*G)) CHECK(dis.contains(tau(g)));
}

TEST_CASE("the size-32 cover from the displacement quotient") {
  // Quotienting the displacement group of the size-112 quandle by the third
  // term of its lower central series leaves a group of order 32; conjugation
  // by L_0 descends to it and the trivial-subgroup coset quandle on the
  // result is a connected non-faithful cover quandle of size 32.
  auto sr = build_sr_group(7);
  auto cq = build_sr_quandle(sr, 1, {1, 0});
  const QuandleTable& q = cq.q;

  PermGroup dis = q.dis();
  auto lcs = dis.lower_central_series();
  REQUIRE(lcs.size() == 3);
  CHECK(lcs[0].order() == 1568u);
  CHECK(lcs[1].order() == 98u);
  CHECK(lcs[2].order() == 49u);

  // Coset table of Dis / lcs[2], identity coset first.
  const PermGroup& nsub = lcs[2];
  auto delems = dis.elements();
  auto nelems = nsub.elements();
  std::unordered_map<std::uint64_t, int> idx;
  for (std::size_t i = 0; i < delems.size(); ++i)
    idx[delems[i].hash_key()] = static_cast<int>(i);
  REQUIRE(idx.size() == delems.size());

  std::vector<int> coset_of(delems.size(), -1);
  std::vector<int> reps;
  std::vector<std::size_t> scan;
  for (std::size_t i = 0; i < delems.size(); ++i)
    if (delems[i].is_identity()) scan.push_back(i);
  for (std::size_t i = 0; i < delems.size(); ++i)
    if (!delems[i].is_identity()) scan.push_back(i);
  for (std::size_t i : scan) {
    if (coset_of[i] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(i));
    for (const auto& n : nelems)
      coset_of[static_cast<std::size_t>(idx.at(delems[i].compose(n).hash_key()))] = c;
  }
  int k = static_cast<int>(reps.size());
  REQUIRE(k == 32);

  std::vector<std::vector<int>> table(static_cast<std::size_t>(k),
                                      std::vector<int>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = coset_of[static_cast<std::size_t>(
          idx.at(delems[static_cast<std::size_t>(reps[static_cast<std::size_t>(a)])]
                     .compose(delems[static_cast<std::size_t>(reps[static_cast<std::size_t>(b)])])
                     .hash_key()))];
  auto K = std::make_shared<TableGroup>(table, std::vector<std::string>{}, 1 << 20);

  // Conjugation by L_0 normalizes the displacement group and fixes each term
  // of the lower central series, so it descends to the quotient.
  Permutation l0 = q.left_translation(0);
  Permutation l0i = l0.inverse();
  std::vector<int> fimg(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a)
    fimg[static_cast<std::size_t>(a)] = coset_of[static_cast<std::size_t>(idx.at(
        l0.compose(delems[static_cast<std::size_t>(reps[static_cast<std::size_t>(a)])])
            .compose(l0i)
            .hash_key()))];
  GroupMap fbar(K, K, fimg);
  CHECK(fbar.verify_homomorphism());
  CHECK(fbar.is_bijective());
  CHECK(fbar.map_order() == 6u);
  CHECK(fbar.fixed_elements().size() == 2u);

  auto cover = coset_quandle(*K, fbar, {0});
  const QuandleTable& c = cover.q;
  CHECK(c.size() == 32);
  CHECK(c.is_connected());
  CHECK_FALSE(c.is_latin());
  CHECK_FALSE(c.is_faithful());

  // Its displacement group is the quaternion group times a klein four group.
  PermGroup cdis = c.dis();
  CHECK(cdis.order() == 32u);
  CHECK_FALSE(cdis.is_abelian());
  CHECK(cdis.is_nilpotent());
  auto q8 = quaternion_group();
  auto klein = std::make_shared<AbelianGroup>(std::vector<int>{2, 2});
  auto target = std::make_shared<DirectProductGroup>(q8, klein);
  CHECK(small_group_iso(table_from_perm_group(cdis), target).has_value());

  // Congruence structure: five congruences overall, and the quotient by the
  // commutator orbit congruence is a three-element chain.
  CHECK(congruence_lattice(c).elems.size() == 5u);
  auto gam = gamma_congruence(c);
  CHECK(gam.num_blocks() == 16);
  auto cg = c.quotient(gam.block_vector(), gam.num_blocks());
  auto lat = congruence_lattice(cg);
  CHECK(lat.elems.size() == 3u);
  CHECK(lat.shape_tag() == "chain-3");
}
