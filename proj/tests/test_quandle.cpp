#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <vector>

#include "qlat/quandle.hpp"

using namespace qlat;

namespace {

QuandleTable projection_quandle(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = y;
  return QuandleTable(std::move(t));
}

std::shared_ptr<SemidirectGroup> sym3() {
  auto c2 = std::make_shared<AbelianGroup>(std::vector<int>{2});
  std::vector<FqMatrix> rho{FqMatrix::identity(3, 1),
                            FqMatrix::from_rows(3, {{2}})};
  return std::make_shared<SemidirectGroup>(3, 1, c2, rho);
}

}  // namespace

TEST_CASE("reflection quandle on three points") {
  QuandleTable r3 = affine_cyclic(3, 2);
  CHECK(r3.size() == 3);
  CHECK(r3.op(0, 1) == 2);  // 2*0 - 1
  CHECK(r3.op(1, 0) == 2);
  CHECK(r3.is_latin());
  CHECK(r3.is_connected());
  CHECK(r3.is_faithful());
  CHECK(r3.is_left_distributive());
  CHECK(r3.lmlt().order() == 6);
  CHECK(r3.dis().order() == 3);
  CHECK(r3.is_solvable());
  CHECK(r3.is_nilpotent());
  CHECK(r3.cayley_kernel_classes().size() == 3);
}

TEST_CASE("projection quandles are disconnected and unfaithful") {
  QuandleTable p3 = projection_quandle(3);
  CHECK(!p3.is_latin());
  CHECK(!p3.is_connected());
  CHECK(!p3.is_faithful());
  CHECK(p3.lmlt().order() == 1);
  CHECK(p3.dis().order() == 1);
  CHECK(p3.cayley_kernel_classes().size() == 1);
}

TEST_CASE("affine quandles over cyclic groups") {
  QuandleTable q5 = affine_cyclic(5, 2);
  CHECK(q5.is_latin());
  CHECK(q5.is_connected());
  CHECK(q5.dis().order() == 5);
  CHECK(q5.lmlt().order() == 20);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) {
      CHECK(q5.op(x, q5.left_div(x, y)) == y);
      CHECK(q5.left_div(x, q5.op(x, y)) == y);
    }

  // f = -1 over Z_4: a quandle, but 1 - f = 2 is singular, so not latin.
  QuandleTable q4 = affine_cyclic(4, 3);
  CHECK(!q4.is_latin());
  CHECK(!q4.is_connected());
  CHECK(q4.dis().order() == 2);
}

TEST_CASE("table validation rejects non-quandles") {
  CHECK_THROWS_AS(QuandleTable({{1, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(QuandleTable({{0, 0}, {1, 1}}), std::invalid_argument);
  // Idempotent left quasigroup that fails left distributivity.
  CHECK_THROWS_AS(QuandleTable({{0, 2, 1}, {2, 1, 0}, {0, 1, 2}}),
                  std::invalid_argument);
}

TEST_CASE("displacement generators from one base point cover all pairs") {
  for (const QuandleTable& q : {affine_cyclic(5, 2), affine_cyclic(7, 3)}) {
    PermGroup d = q.dis();
    for (int x = 0; x < q.size(); ++x)
      for (int y = 0; y < q.size(); ++y)
        CHECK(d.contains(
            q.left_translation(x).compose(q.left_translation(y).inverse())));
    // Normalized by the full translation group.
    PermGroup closure = q.lmlt().normal_closure(d.generators());
    CHECK(closure.order() == d.order());
  }
}

TEST_CASE("coset quandle from an inner automorphism of S3") {
  auto s3 = sym3();
  int c = s3->make({0}, 1);
  std::vector<int> imgs;
  for (int g = 0; g < 6; ++g) imgs.push_back(s3->conj(c, g));
  GroupMap f(s3, s3, imgs);
  REQUIRE(f.verify_homomorphism());
  auto fix = f.fixed_elements();
  CHECK(fix.size() == 2);

  CosetQuandle cq = coset_quandle(*s3, f, fix);
  CHECK(cq.q.size() == 3);
  CHECK(cq.q.is_latin());
  CHECK(cq.q.is_connected());
  CHECK(cq.q.lmlt().order() == 6);
  CHECK(cq.q.dis().order() == 3);
  for (std::size_t i = 0; i < cq.reps.size(); ++i)
    CHECK(cq.coset_of[static_cast<std::size_t>(cq.reps[i])] ==
          static_cast<int>(i));

  // The subgroup must be fixed pointwise.
  std::vector<int> whole = closure(*s3, {s3->make({1}, 0)});
  CHECK_THROWS_AS(coset_quandle(*s3, f, whole), std::invalid_argument);
}

TEST_CASE("quotients by congruences") {
  QuandleTable r9 = affine_cyclic(9, 8);
  std::vector<int> mod3(9);
  for (int x = 0; x < 9; ++x) mod3[static_cast<std::size_t>(x)] = x % 3;
  QuandleTable quot = r9.quotient(mod3, 3);
  CHECK(quot == affine_cyclic(3, 2));

  std::vector<int> halves{0, 0, 0, 0, 0, 1, 1, 1, 1};
  CHECK_THROWS_AS(r9.quotient(halves, 2), std::invalid_argument);
}

TEST_CASE("direct products of quandles") {
  QuandleTable prod = direct_product(affine_cyclic(3, 2), affine_cyclic(3, 2));
  CHECK(prod.size() == 9);
  CHECK(prod.is_latin());
  CHECK(prod.is_connected());
  CHECK(prod.dis().order() == 9);
}

TEST_CASE("serialization round trip") {
  QuandleTable q5 = affine_cyclic(5, 3);
  std::string text = q5.serialize();
  CHECK(text.substr(0, 9) == "quandle 5");
  QuandleTable back = QuandleTable::deserialize("# comment\n# more\n" + text);
  CHECK(back == q5);
  CHECK_THROWS_AS(QuandleTable::deserialize("latin 5\n"), std::invalid_argument);
  CHECK_THROWS_AS(QuandleTable::deserialize("quandle 3\n0 1 2\n"),
                  std::invalid_argument);
  CHECK(q5.hash_key() != affine_cyclic(5, 2).hash_key());
}
