#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "qlat/common.hpp"
#include "qlat/quandle.hpp"
#include "qlat/quiso.hpp"

using namespace qlat;

namespace {

QuandleTable projection_quandle(int n) {
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = y;
  return QuandleTable(t);
}

// Ground-truth oracle: try every bijection.  Only sane for n <= 6.
bool brute_iso(const QuandleTable& a, const QuandleTable& b) {
  if (a.size() != b.size()) return false;
  const int n = a.size();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (p[static_cast<std::size_t>(a.op(x, y))] !=
            b.op(p[static_cast<std::size_t>(x)], p[static_cast<std::size_t>(y)]))
          ok = false;
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool is_hom_image(const QuandleTable& a, const QuandleTable& b,
                  const std::vector<int>& img) {
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (img[static_cast<std::size_t>(a.op(x, y))] !=
          b.op(img[static_cast<std::size_t>(x)],
               img[static_cast<std::size_t>(y)]))
        return false;
  return true;
}

Permutation random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation::from_images(v);
}

}  // namespace

TEST_CASE("fingerprint of the three-element rotation quandle") {
  QuandleTable r3 = affine_cyclic(3, 2);
  Fingerprint f = fingerprint(r3);
  CHECK(f.size == 3);
  CHECK(f.latin);
  CHECK(f.connected);
  CHECK(f.faithful);
  CHECK(f.lmlt_order == 6);
  CHECK(f.dis_order == 3);
  CHECK(f.dis_center_order == 3);
  CHECK(f.num_congruences == 2);
  CHECK(f.lattice_shape == "chain-2");
  CHECK(f.gamma_blocks == 3);  // abelian displacement group
  CHECK(f.zeta_blocks == 1);
  CHECK(f.translation_orders == std::vector<std::uint64_t>{2, 2, 2});
  CHECK(f.dis_abelianization_orders == std::vector<std::uint64_t>{1, 3, 3});
  CHECK(f.str().find("|LMlt|=6") != std::string::npos);
}

TEST_CASE("relabel produces an isomorphic quandle and the map is recovered") {
  QuandleTable r3 = affine_cyclic(3, 2);
  auto rng = test_rng();
  for (int trial = 0; trial < 5; ++trial) {
    Permutation p = random_perm(3, rng);
    QuandleTable moved = relabel(r3, p);
    CHECK(fingerprint(moved) == fingerprint(r3));
    auto iso = find_isomorphism(r3, moved);
    REQUIRE(iso.has_value());
    CHECK(is_hom_image(r3, moved, *iso));
    // and it really is a bijection
    std::vector<int> seen(3, 0);
    for (int v : *iso) seen[static_cast<std::size_t>(v)] = 1;
    CHECK(std::count(seen.begin(), seen.end(), 1) == 3);
  }
  CHECK_THROWS_AS(relabel(r3, Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("five-element affine quandles: equal fingerprints yet non-isomorphic") {
  QuandleTable q2 = affine_cyclic(5, 2);
  QuandleTable q3 = affine_cyclic(5, 3);
  QuandleTable q4 = affine_cyclic(5, 4);

  // multipliers 2 and 3 both have order 4, so every cheap invariant ties...
  CHECK(fingerprint(q2) == fingerprint(q3));
  // ...and only the search itself separates them.
  CHECK_FALSE(are_isomorphic(q2, q3));
  CHECK_FALSE(brute_iso(q2, q3));

  // multiplier 4 has order 2: fingerprints differ and so does the verdict
  CHECK_FALSE(fingerprint(q2) == fingerprint(q4));
  CHECK_FALSE(are_isomorphic(q2, q4));
  CHECK_FALSE(brute_iso(q2, q4));

  auto rng = test_rng();
  QuandleTable moved = relabel(q2, random_perm(5, rng));
  CHECK(are_isomorphic(q2, moved));
  CHECK(brute_iso(q2, moved));
}

TEST_CASE("search verdict matches the brute-force oracle on a small battery") {
  auto rng = test_rng();
  std::vector<QuandleTable> battery;
  battery.push_back(affine_cyclic(3, 2));
  battery.push_back(relabel(affine_cyclic(3, 2), random_perm(3, rng)));
  battery.push_back(projection_quandle(3));
  battery.push_back(affine_cyclic(5, 2));
  battery.push_back(affine_cyclic(5, 3));
  battery.push_back(affine_cyclic(5, 4));
  battery.push_back(relabel(affine_cyclic(5, 3), random_perm(5, rng)));
  // a disconnected non-projection example: multiplier 5 on Z_6
  battery.push_back(affine_cyclic(6, 5));
  battery.push_back(relabel(affine_cyclic(6, 5), random_perm(6, rng)));

  for (std::size_t i = 0; i < battery.size(); ++i)
    for (std::size_t j = 0; j < battery.size(); ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(are_isomorphic(battery[i], battery[j]) ==
            brute_iso(battery[i], battery[j]));
    }
}

TEST_CASE("disconnected pair exercises the unpinned search path") {
  QuandleTable q = affine_cyclic(6, 5);
  CHECK_FALSE(q.is_connected());
  auto rng = test_rng();
  QuandleTable moved = relabel(q, random_perm(6, rng));
  auto iso = find_isomorphism(q, moved);
  REQUIRE(iso.has_value());
  CHECK(is_hom_image(q, moved, *iso));
}

TEST_CASE("product quandle is isomorphic to its factor swap") {
  QuandleTable r3 = affine_cyclic(3, 2);
  QuandleTable prod = direct_product(r3, r3);
  std::vector<int> swap_img(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      swap_img[static_cast<std::size_t>(3 * a + b)] = 3 * b + a;
  QuandleTable swapped = relabel(prod, Permutation::from_images(swap_img));
  CHECK(are_isomorphic(prod, swapped));
  auto iso = find_isomorphism(prod, swapped);
  REQUIRE(iso.has_value());
  CHECK(is_hom_image(prod, swapped, *iso));
}

TEST_CASE("dedupe keeps one representative per class in input order") {
  auto rng = test_rng();
  std::vector<QuandleTable> qs;
  qs.push_back(affine_cyclic(3, 2));                                // class A
  qs.push_back(relabel(affine_cyclic(3, 2), random_perm(3, rng)));  // dup A
  qs.push_back(affine_cyclic(5, 2));                                // class B
  qs.push_back(affine_cyclic(5, 3));                                // class C
  qs.push_back(relabel(affine_cyclic(5, 2), random_perm(5, rng)));  // dup B
  qs.push_back(affine_cyclic(9, 2));                                // class D
  auto reps = dedupe_up_to_iso(qs);
  CHECK(reps == std::vector<std::size_t>{0, 2, 3, 5});
}

TEST_CASE("size-one quandle") {
  QuandleTable one(std::vector<std::vector<int>>{{0}});
  CHECK(fingerprint(one).size == 1);
  CHECK(are_isomorphic(one, one));
  CHECK_FALSE(are_isomorphic(one, affine_cyclic(3, 2)));
}
