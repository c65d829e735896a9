// Verification suites: automorphism counting for the groups behind the
// diamond family, exhaustive small-case linear algebra, Galois-connection
// and commutator identities over a corpus of latin quandles, and the
// size-16 / size-p inventory census.
#include "qlat/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qlat/conglat.hpp"
#include "qlat/constructions.hpp"
#include "qlat/quiso.hpp"

namespace qlat {

bool SuiteReport::all_pass() const {
  for (const SuiteCheck& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

std::string SuiteReport::summary() const {
  std::ostringstream os;
  for (const SuiteCheck& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << suite << "/" << c.name << " — "
       << c.detail << " (" << static_cast<long long>(c.ms) << " ms)\n";
  }
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

void need(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

struct Runner {
  SuiteReport& rep;
  void check(const std::string& name,
             const std::function<std::string()>& body) {
    Clock::time_point t0 = Clock::now();
    SuiteCheck c;
    c.name = name;
    try {
      c.detail = body();
      c.pass = true;
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    c.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    rep.checks.push_back(std::move(c));
  }
};

// ---------------------------------------------------------------------------
// Permutation-group helpers

bool subgroup_of(const PermGroup& a, const PermGroup& b) {
  if (a.order() > b.order()) return false;
  for (const Permutation& g : a.generators())
    if (!b.contains(g)) return false;
  return true;
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  return a.order() == b.order() && subgroup_of(a, b);
}

PermGroup join_groups(const PermGroup& a, const PermGroup& b) {
  std::vector<Permutation> gens = a.generators();
  for (const Permutation& g : b.generators()) gens.push_back(g);
  return PermGroup(a.degree(), gens);
}

PermGroup intersect_groups(const PermGroup& a, const PermGroup& b) {
  const PermGroup& small = a.order() <= b.order() ? a : b;
  const PermGroup& other = a.order() <= b.order() ? b : a;
  std::vector<Permutation> common;
  for (const Permutation& g : small.elements())
    if (other.contains(g)) common.push_back(g);
  return PermGroup(a.degree(), common);
}

bool group_is_cyclic(const PermGroup& g) {
  std::uint64_t n = g.order();
  for (const Permutation& e : g.elements())
    if (e.order() == n) return true;
  return n == 1;
}

// Elementary abelian: nontrivial, abelian, every element of prime order q.
// Returns the prime, or 0 when the group is not elementary abelian.
long long elementary_abelian_prime(const PermGroup& g) {
  std::uint64_t n = g.order();
  if (n <= 1) return 0;
  long long q = 2;
  while (n % static_cast<std::uint64_t>(q) != 0) ++q;
  std::uint64_t m = n;
  while (m % static_cast<std::uint64_t>(q) == 0) m /= static_cast<std::uint64_t>(q);
  if (m != 1) return 0;
  if (g.derived_subgroup().order() != 1) return 0;
  for (const Permutation& e : g.generators())
    if (!e.is_identity() && e.order() != static_cast<std::uint64_t>(q)) return 0;
  return q;
}

// ---------------------------------------------------------------------------
// 2x2 matrices over F_2 packed in 4 bits: bit (2*i + j) holds entry (i, j).

constexpr int kId2 = 0b1001;

int bit2(int m, int i, int j) { return (m >> (2 * i + j)) & 1; }

int mul2(int a, int b) {
  int c = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      int s = (bit2(a, i, 0) & bit2(b, 0, j)) ^ (bit2(a, i, 1) & bit2(b, 1, j));
      c |= s << (2 * i + j);
    }
  return c;
}

int apply2(int m, int v) {
  int v0 = v & 1, v1 = (v >> 1) & 1;
  int o0 = (bit2(m, 0, 0) & v0) ^ (bit2(m, 0, 1) & v1);
  int o1 = (bit2(m, 1, 0) & v0) ^ (bit2(m, 1, 1) & v1);
  return o0 | (o1 << 1);
}

int det2(int m) {
  return (bit2(m, 0, 0) & bit2(m, 1, 1)) ^ (bit2(m, 0, 1) & bit2(m, 1, 0));
}

int inv2(int m) {
  // adjugate; the determinant is 1 for every invertible matrix over F_2
  int a = bit2(m, 0, 0), b = bit2(m, 0, 1), c = bit2(m, 1, 0),
      d = bit2(m, 1, 1);
  return d | (b << 1) | (c << 2) | (a << 3);
}

// abelianization of the quaternion part: +-1 -> 00, +-i -> 10, +-j -> 01,
// +-k -> 11, as 2-bit vectors (bit 0 = i-coordinate, bit 1 = j-coordinate);
// quaternion indices are 2*axis + sign with axes ordered 1, i, j, k.
constexpr std::array<int, 8> kAbOfK = {0, 0, 1, 1, 2, 2, 3, 3};

}  // namespace

// ---------------------------------------------------------------------------
// Counting suite

SuiteReport counting_suite(int p) {
  if (p != 7 && p != 13)
    throw std::invalid_argument("the counting suite runs at p = 7 or p = 13");
  SuiteReport rep;
  rep.suite = "counting(p=" + std::to_string(p) + ")";
  Runner run{rep};

  SrGroup sr = build_sr_group(p);
  const GkGroup& gk = sr.gk;
  const std::shared_ptr<SemidirectGroup>& sd = gk.group;
  const FiniteGroup& g = *sd;
  const int n = g.size();
  const int gv1 = gk.gen_v1, gx = gk.gen_x, gy = gk.gen_y;

  auto key3 = [](int a, int b, int c) {
    return (static_cast<std::uint64_t>(a) << 42) |
           (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
  };

  // State shared between checks (filled by the first two, reused by the rest).
  std::vector<std::vector<int>> imgs;  // full image vectors (p = 7 only)
  std::vector<std::uint64_t> par_keys;
  std::vector<char> fflag;  // order 3 with 2p fixed points
  std::unordered_map<std::uint64_t, int> id_of;

  run.check("aut_gk_parametric_count", [&]() -> std::string {
    std::vector<AutGk> pars = enumerate_aut_gk(gk);
    const long long expect = 24LL * p * p * (p - 1);
    need(static_cast<long long>(pars.size()) == expect,
         "parametric enumeration size != 24 p^2 (p-1)");
    par_keys.reserve(pars.size());
    fflag.assign(pars.size(), 0);
    if (p == 7) imgs.reserve(pars.size());
    const std::size_t step = std::max<std::size_t>(1, pars.size() / 24);
    std::size_t verified = 0;
    for (std::size_t i = 0; i < pars.size(); ++i) {
      GroupMap m = aut_gk_as_map(gk, pars[i]);
      std::uint64_t key = key3(m(gv1), m(gx), m(gy));
      need(id_of.emplace(key, static_cast<int>(i)).second,
           "two parametric automorphisms share generator images");
      par_keys.push_back(key);
      if (m.map_order() == 3 &&
          m.fixed_elements().size() == static_cast<std::size_t>(2 * p))
        fflag[i] = 1;
      if (i % step == 0) {
        need(m.verify_homomorphism() && m.is_bijective(),
             "a sampled parametric map is not an automorphism");
        ++verified;
      }
      if (p == 7) imgs.push_back(m.images());
    }
    return std::to_string(pars.size()) + " = 24 p^2 (p-1) parametric maps, " +
           std::to_string(verified) + " fully verified";
  });

  run.check("aut_gk_generator_image_route", [&]() -> std::string {
    need(!par_keys.empty(), "parametric route unavailable");
    std::vector<int> ordp, ord4;
    for (int a = 0; a < n; ++a) {
      std::uint64_t o = g.element_order(a);
      if (o == static_cast<std::uint64_t>(p)) ordp.push_back(a);
      if (o == 4) ord4.push_back(a);
    }
    need(static_cast<int>(ordp.size()) == p * p - 1,
         "order-p element count != p^2 - 1");
    need(static_cast<int>(ord4.size()) == 6 * p * p,
         "order-4 element count != 6 p^2");
    const int k = gk.k, k2 = k * k % p;
    auto powg = [&](int a, int e) {
      int r = 0;
      for (int i = 0; i < e; ++i) r = g.mul(r, a);
      return r;
    };
    std::unordered_set<std::uint64_t> brute;
    brute.reserve(par_keys.size() * 2);
    const std::size_t expect = par_keys.size();
    const std::size_t step = std::max<std::size_t>(1, expect / 96);
    std::size_t verified = 0;
    for (int a : ord4) {
      const int a2 = g.mul(a, a), ainv = g.inv(a);
      for (int b : ord4) {
        if (g.mul(b, b) != a2) continue;
        if (g.mul(g.mul(b, a), g.inv(b)) != ainv) continue;
        const int binv = g.inv(b);
        for (int v : ordp) {
          int c = g.mul(g.mul(a, v), ainv);
          if (g.mul(v, c) != g.mul(c, v)) continue;
          if (g.mul(g.mul(b, v), binv) != g.mul(powg(v, k2), powg(c, k)))
            continue;
          std::vector<int> vv = sd->vec_of(v), vc = sd->vec_of(c);
          if ((vv[0] * vc[1] - vv[1] * vc[0]) % p == 0) continue;
          if (closure(*sd->k_group(), {sd->k_of(a), sd->k_of(b)}).size() != 8)
            continue;
          brute.insert(key3(v, a, b));
          if (brute.size() % step == 0) {
            std::optional<GroupMap> em =
                extend_map(sd, {gv1, gx, gy}, sd, {v, a, b});
            need(em.has_value() && em->is_bijective(),
                 "a relator-pruned triple does not extend to an automorphism");
            ++verified;
          }
        }
      }
    }
    need(brute.size() == expect, "generator-image census size mismatch");
    for (std::uint64_t key : par_keys)
      need(brute.count(key) == 1, "a parametric map is missing from the census");
    return "generator-image census agrees: " + std::to_string(brute.size()) +
           " triples, " + std::to_string(verified) + " extended and verified";
  });

  run.check("order3_fix2p_family", [&]() -> std::string {
    need(!par_keys.empty(), "parametric route unavailable");
    long long cnt = 0;
    for (char f : fflag) cnt += f;
    need(cnt == 16LL * p, "|{order 3, |Fix| = 2p}| != 16p");
    for (int j : {1, 2}) {
      GroupMap fj = build_fj(gk, j);
      auto it = id_of.find(key3(fj(gv1), fj(gx), fj(gy)));
      need(it != id_of.end(), "defining twist is not in the parametric family");
      need(fflag[static_cast<std::size_t>(it->second)] == 1,
           "defining twist is not in the order-3 / 2p-fixed family");
    }
    return std::to_string(cnt) + " = 16p maps of order 3 with 2p fixed points";
  });

  // The remaining checks climb to G = Gk x Z_2^2; they run at desk scale.
  if (p != 7) {
    run.check("twist_map_orders", [&]() -> std::string {
      for (int j : {1, 2}) {
        need(build_f_sr(sr, j, {0, 0}).map_order() == 3,
             "constant-free twist does not have order 3");
        need(build_f_sr(sr, j, {1, 0}).map_order() == 6,
             "affine twist does not have order 6");
      }
      return "orders 3 and 6 as constructed";
    });
    return rep;
  }

  const int total = static_cast<int>(par_keys.size());  // 7056 at p = 7
  std::vector<int> abmat, inv_alpha, agens;
  int aid_identity = -1;
  std::array<int, 16> didx{};
  std::vector<int> dkeys;  // the 6 invertible 2x2 matrices over F_2
  std::vector<char> d3flag(16, 0);

  auto comp_alpha = [&](int a, int b) {
    auto it = id_of.find(key3(imgs[static_cast<std::size_t>(a)]
                                  [static_cast<std::size_t>(
                                      imgs[static_cast<std::size_t>(b)]
                                          [static_cast<std::size_t>(gv1)])],
                              imgs[static_cast<std::size_t>(a)]
                                  [static_cast<std::size_t>(
                                      imgs[static_cast<std::size_t>(b)]
                                          [static_cast<std::size_t>(gx)])],
                              imgs[static_cast<std::size_t>(a)]
                                  [static_cast<std::size_t>(
                                      imgs[static_cast<std::size_t>(b)]
                                          [static_cast<std::size_t>(gy)])]));
    need(it != id_of.end(), "composition left the parametric family");
    return it->second;
  };

  struct Tri {
    int a, c, d;
  };
  auto comp_tri = [&](const Tri& s, const Tri& t) {
    return Tri{comp_alpha(s.a, t.a),
               mul2(s.c, abmat[static_cast<std::size_t>(t.a)]) ^
                   mul2(s.d, t.c),
               mul2(s.d, t.d)};
  };
  auto inv_tri = [&](const Tri& t) {
    int ia = inv_alpha[static_cast<std::size_t>(t.a)];
    int id2 = inv2(t.d);
    return Tri{ia, mul2(mul2(id2, t.c), abmat[static_cast<std::size_t>(ia)]),
               id2};
  };
  auto state_of = [&](const Tri& t) {
    return (t.a * 16 + t.c) * 6 + didx[static_cast<std::size_t>(t.d)];
  };

  run.check("aut_g_parametric_group", [&]() -> std::string {
    need(static_cast<int>(imgs.size()) == total, "image vectors unavailable");
    // Derived data for the triple calculus.
    abmat.resize(static_cast<std::size_t>(total));
    inv_alpha.resize(static_cast<std::size_t>(total));
    for (int a = 0; a < total; ++a) {
      const std::vector<int>& im = imgs[static_cast<std::size_t>(a)];
      int col0 = kAbOfK[static_cast<std::size_t>(
          sd->k_of(im[static_cast<std::size_t>(gx)]))];
      int col1 = kAbOfK[static_cast<std::size_t>(
          sd->k_of(im[static_cast<std::size_t>(gy)]))];
      abmat[static_cast<std::size_t>(a)] = (col0 & 1) | ((col1 & 1) << 1) |
                                           ((col0 >> 1) << 2) |
                                           ((col1 >> 1) << 3);
      std::vector<int> inv_im(static_cast<std::size_t>(n));
      for (int z = 0; z < n; ++z)
        inv_im[static_cast<std::size_t>(im[static_cast<std::size_t>(z)])] = z;
      auto it = id_of.find(key3(inv_im[static_cast<std::size_t>(gv1)],
                                inv_im[static_cast<std::size_t>(gx)],
                                inv_im[static_cast<std::size_t>(gy)]));
      need(it != id_of.end(), "an inverse left the parametric family");
      inv_alpha[static_cast<std::size_t>(a)] = it->second;
    }
    for (int m = 0; m < 16; ++m)
      if (det2(m)) {
        didx[static_cast<std::size_t>(m)] = static_cast<int>(dkeys.size());
        dkeys.push_back(m);
        if (m != kId2 && mul2(m, mul2(m, m)) == kId2)
          d3flag[static_cast<std::size_t>(m)] = 1;
      }
    need(dkeys.size() == 6, "|GL_2(F_2)| != 6");
    aid_identity = id_of.at(key3(gv1, gx, gy));

    // Closure of the parametric set under composition, from a small greedy
    // generating set; reaching everything proves the set is a group.
    std::vector<char> reach(static_cast<std::size_t>(total), 0);
    std::vector<int> order;
    reach[static_cast<std::size_t>(aid_identity)] = 1;
    order.push_back(aid_identity);
    std::size_t done = 0;
    int scan = 0;
    while (static_cast<int>(order.size()) < total) {
      while (scan < total && reach[static_cast<std::size_t>(scan)]) ++scan;
      need(scan < total, "closure scan overran");
      agens.push_back(scan);
      reach[static_cast<std::size_t>(scan)] = 1;
      order.push_back(scan);
      done = 0;  // recombine everything with the enlarged generating set
      while (done < order.size()) {
        int a = order[done++];
        for (int b : agens)
          for (int c : {comp_alpha(a, b), comp_alpha(b, a)})
            if (!reach[static_cast<std::size_t>(c)]) {
              reach[static_cast<std::size_t>(c)] = 1;
              order.push_back(c);
            }
      }
    }

    // Sampled full verification of the parametric maps of G: build the whole
    // image vector of a random triple and check the homomorphism property on
    // every pair, plus the composition law against map composition.
    const DirectProductGroup& gg = *sr.group;
    const int ng = gg.size();
    std::mt19937 rng(7u);
    auto tri_images = [&](const Tri& t) {
      std::vector<int> im(static_cast<std::size_t>(ng));
      for (int q8v = 0; q8v < n; ++q8v) {
        int aq = imgs[static_cast<std::size_t>(t.a)][static_cast<std::size_t>(q8v)];
        int cw = apply2(t.c, kAbOfK[static_cast<std::size_t>(sd->k_of(q8v))]);
        for (int w = 0; w < 4; ++w)
          im[static_cast<std::size_t>(gg.make(q8v, w))] =
              gg.make(aq, cw ^ apply2(t.d, w));
      }
      return im;
    };
    auto random_tri = [&] {
      return Tri{static_cast<int>(rng() % static_cast<unsigned>(total)),
                 static_cast<int>(rng() % 16u),
                 dkeys[rng() % 6u]};
    };
    for (int s = 0; s < 8; ++s) {
      Tri t = random_tri();
      std::vector<int> im = tri_images(t);
      std::vector<char> seen(static_cast<std::size_t>(ng), 0);
      for (int z = 0; z < ng; ++z) {
        need(!seen[static_cast<std::size_t>(im[static_cast<std::size_t>(z)])],
             "a sampled parametric map of G is not injective");
        seen[static_cast<std::size_t>(im[static_cast<std::size_t>(z)])] = 1;
      }
      for (int x = 0; x < ng; ++x)
        for (int y = 0; y < ng; ++y)
          if (im[static_cast<std::size_t>(gg.mul(x, y))] !=
              gg.mul(im[static_cast<std::size_t>(x)],
                     im[static_cast<std::size_t>(y)]))
            fail("a sampled parametric map of G is not a homomorphism");
    }
    for (int s = 0; s < 10; ++s) {
      Tri t1 = random_tri(), t2 = random_tri();
      std::vector<int> lhs = tri_images(comp_tri(t1, t2));
      std::vector<int> im1 = tri_images(t1), im2 = tri_images(t2);
      for (int z = 0; z < ng; ++z)
        if (lhs[static_cast<std::size_t>(z)] !=
            im1[static_cast<std::size_t>(im2[static_cast<std::size_t>(z)])])
          fail("triple composition disagrees with map composition");
      Tri ti = inv_tri(t1);
      std::vector<int> ivi = tri_images(ti);
      for (int z = 0; z < ng; ++z)
        if (im1[static_cast<std::size_t>(ivi[static_cast<std::size_t>(z)])] !=
            z)
          fail("triple inverse disagrees with map inverse");
    }
    long long autg = static_cast<long long>(total) * 16 * 6;
    need(autg == 2304LL * p * p * (p - 1), "|Aut(G)| != 2304 p^2 (p-1)");
    return std::to_string(autg) +
           " = 2304 p^2 (p-1) triples; closed under composition from " +
           std::to_string(agens.size()) + " generators; 8 maps fully verified";
  });

  run.check("h_subset_count", [&]() -> std::string {
    need(aid_identity >= 0, "triple calculus unavailable");
    long long cnt = 0;
    for (int a = 0; a < total; ++a)
      for (int c = 0; c < 16; ++c)
        for (int dk : dkeys)
          if (fflag[static_cast<std::size_t>(a)] &&
              d3flag[static_cast<std::size_t>(dk)])
            ++cnt;
    need(cnt == (1LL << 9) * p, "|H| != 2^9 p");
    return std::to_string(cnt) + " = 2^9 p twisting candidates";
  });

  std::vector<int> twist_states;
  run.check("twist_triples_roundtrip", [&]() -> std::string {
    need(aid_identity >= 0, "triple calculus unavailable");
    const DirectProductGroup& gg = *sr.group;
    for (int j : {1, 2})
      for (std::array<int, 2> av : {std::array<int, 2>{1, 0},
                                    std::array<int, 2>{0, 0}}) {
        GroupMap tm = build_f_sr(sr, j, av);
        for (int w : {1, 2})
          need(gg.left_of(tm(gg.make(0, w))) == 0,
               "the Klein center is not preserved");
        int dcol0 = gg.right_of(tm(gg.make(0, 1)));
        int dcol1 = gg.right_of(tm(gg.make(0, 2)));
        int dkey = (dcol0 & 1) | ((dcol1 & 1) << 1) | ((dcol0 >> 1) << 2) |
                   ((dcol1 >> 1) << 3);
        int ccol0 = gg.right_of(tm(gg.make(gx, 0)));
        int ccol1 = gg.right_of(tm(gg.make(gy, 0)));
        int ckey = (ccol0 & 1) | ((ccol1 & 1) << 1) | ((ccol0 >> 1) << 2) |
                   ((ccol1 >> 1) << 3);
        auto it = id_of.find(key3(gg.left_of(tm(gg.make(gv1, 0))),
                                  gg.left_of(tm(gg.make(gx, 0))),
                                  gg.left_of(tm(gg.make(gy, 0)))));
        need(it != id_of.end(), "twist factor is not in the parametric family");
        Tri t{it->second, ckey, dkey};
        const std::vector<int>& aim = imgs[static_cast<std::size_t>(t.a)];
        for (int q8v = 0; q8v < n; ++q8v)
          for (int w = 0; w < 4; ++w) {
            int expect = gg.make(
                aim[static_cast<std::size_t>(q8v)],
                apply2(ckey, kAbOfK[static_cast<std::size_t>(sd->k_of(q8v))]) ^
                    apply2(dkey, w));
            need(tm(gg.make(q8v, w)) == expect,
                 "triple does not rebuild the twist");
          }
        need(fflag[static_cast<std::size_t>(t.a)] == 1 &&
                 d3flag[static_cast<std::size_t>(t.d)] == 1,
             "defining twist is not in H");
        int ord_expect = (av[0] == 0 && av[1] == 0) ? 3 : 6;
        need(static_cast<int>(tm.map_order()) == ord_expect,
             "twist map order is not as constructed");
        twist_states.push_back(state_of(t));
      }
    return "four defining twists decompose as (alpha, C, delta) and rebuild "
           "exactly; orders 6, 3 as constructed";
  });

  run.check("twist_orbit_partition", [&]() -> std::string {
    need(twist_states.size() == 4, "twist triples unavailable");
    // Generators of the full automorphism group as triples.
    std::vector<Tri> gens;
    for (int a : agens) gens.push_back(Tri{a, 0, kId2});
    for (int b = 0; b < 4; ++b)
      gens.push_back(Tri{aid_identity, 1 << b, kId2});
    gens.push_back(Tri{aid_identity, 0, 0b0110});  // the swap
    gens.push_back(Tri{aid_identity, 0, 0b1110});  // an order-3 map
    std::size_t ng = gens.size();
    for (std::size_t i = 0; i < ng; ++i) gens.push_back(inv_tri(gens[i]));

    auto untuple = [&](int st) {
      Tri t;
      t.d = dkeys[static_cast<std::size_t>(st % 6)];
      st /= 6;
      t.c = st % 16;
      t.a = st / 16;
      return t;
    };
    std::vector<char> visited(static_cast<std::size_t>(total) * 96, 0);
    std::vector<std::size_t> sizes;
    for (int st0 : twist_states) {
      need(!visited[static_cast<std::size_t>(st0)],
           "twist orbits are not disjoint");
      std::vector<int> frontier = {st0};
      visited[static_cast<std::size_t>(st0)] = 1;
      std::size_t head = 0;
      while (head < frontier.size()) {
        Tri t = untuple(frontier[head++]);
        for (const Tri& gtr : gens) {
          int st = state_of(comp_tri(gtr, comp_tri(t, inv_tri(gtr))));
          if (!visited[static_cast<std::size_t>(st)]) {
            visited[static_cast<std::size_t>(st)] = 1;
            frontier.push_back(st);
          }
        }
      }
      sizes.push_back(frontier.size());
    }
    std::vector<std::size_t> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    need((sorted == std::vector<std::size_t>{448, 448, 1344, 1344}),
         "orbit sizes are not {448, 448, 1344, 1344}");
    // The four orbits partition H exactly.
    long long covered = 0;
    for (int a = 0; a < total; ++a)
      for (int c = 0; c < 16; ++c)
        for (int dk : dkeys) {
          bool in_h = fflag[static_cast<std::size_t>(a)] &&
                      d3flag[static_cast<std::size_t>(dk)];
          int st = (a * 16 + c) * 6 + didx[static_cast<std::size_t>(dk)];
          need(visited[static_cast<std::size_t>(st)] == (in_h ? 1 : 0),
               "orbits do not partition H exactly");
          covered += in_h ? 1 : 0;
        }
    need(covered == 448 + 448 + 1344 + 1344, "partition total mismatch");
    return "orbit sizes {448, 448, 1344, 1344} partition H";
  });

  run.check("fj_centralizer_order", [&]() -> std::string {
    need(aid_identity >= 0, "triple calculus unavailable");
    for (int j : {1, 2}) {
      GroupMap fj = build_fj(gk, j);
      int a0 = id_of.at(key3(fj(gv1), fj(gx), fj(gy)));
      std::vector<char> seen(static_cast<std::size_t>(total), 0);
      std::vector<int> frontier = {a0};
      seen[static_cast<std::size_t>(a0)] = 1;
      std::size_t head = 0;
      while (head < frontier.size()) {
        int a = frontier[head++];
        for (int b : agens)
          for (int c : {comp_alpha(comp_alpha(b, a),
                                   inv_alpha[static_cast<std::size_t>(b)]),
                        comp_alpha(
                            comp_alpha(inv_alpha[static_cast<std::size_t>(b)],
                                       a),
                            b)})
            if (!seen[static_cast<std::size_t>(c)]) {
              seen[static_cast<std::size_t>(c)] = 1;
              frontier.push_back(c);
            }
      }
      need(frontier.size() == 56, "conjugacy class of the twist is not 56");
      need(total / 56 == 3 * p * (p - 1) && total % 56 == 0,
           "|C(f_j)| != 3 p (p-1)");
    }
    return "class size 56, centralizer order 126 = 3 p (p-1) for both twists";
  });

  run.check("twist_map_orders", [&]() -> std::string {
    for (int j : {1, 2}) {
      need(build_f_sr(sr, j, {0, 0}).map_order() == 3,
           "constant-free twist does not have order 3");
      need(build_f_sr(sr, j, {1, 0}).map_order() == 6,
           "affine twist does not have order 6");
    }
    return "orders 3 and 6 as constructed";
  });

  return rep;
}

// ---------------------------------------------------------------------------
// Appendix suite: small exhaustive linear-algebra facts

SuiteReport appendix_suite() {
  SuiteReport rep;
  rep.suite = "appendix";
  Runner run{rep};

  run.check("involutions_diagonalizable", [&]() -> std::string {
    int cases = 0;
    for (int n : {2, 3})
      for (int p : {3, 5, 7}) {
        need(involutions_diagonalizable(n, p),
             "an involution fails to diagonalize");
        ++cases;
      }
    return std::to_string(cases) + " (n, p) cases, every involution in "
           "GL_n(p) diagonalizable with +-1 eigenvalues";
  });

  run.check("no_faithful_elementary_abelian_overflow", [&]() -> std::string {
    int cases = 0;
    for (int n : {2, 3})
      for (int p : {3, 5, 7}) {
        need(no_faithful_elementary_abelian(n, p),
             "a faithful elementary abelian 2-group of excessive rank exists");
        ++cases;
      }
    return std::to_string(cases) +
           " (n, p) cases, no faithful Z_2^m on Z_p^n with m > n";
  });

  run.check("central_product_has_no_plane_rep", [&]() -> std::string {
    for (int p : {3, 5, 7})
      need(central_product_has_no_plane_rep(p),
           "the order-32 central product acts faithfully on a plane");
    return "the order-32 central product has no faithful plane "
           "representation over F_3, F_5, F_7";
  });

  run.check("q8_plane_reps_centerless_iff_z_negates", [&]() -> std::string {
    for (int p : {3, 5, 7})
      need(q8_plane_reps_centerless_iff_z_negates(p),
           "the fixed-point dichotomy fails");
    return "a faithful Q8 plane action is fixed-point free exactly when "
           "-1 acts as -I (p = 3, 5, 7)";
  });

  run.check("si_dis_derived_elementary", [&]() -> std::string {
    for (const SiConstruction& si : {build_si48(), build_si80()}) {
      PermGroup dis = si.quandle.dis();
      PermGroup der = dis.derived_subgroup();
      need(der.order() == 16, "derived subgroup of Dis is not of order 16");
      need(der.derived_subgroup().order() == 1,
           "derived subgroup of Dis is not abelian");
      for (const Permutation& e : der.generators())
        need(e.is_identity() || e.order() == 2,
             "derived subgroup of Dis is not of exponent 2");
    }
    return "Dis' is elementary abelian of order 16 for both small "
           "subdirectly irreducible quandles";
  });

  run.check("gk_central_involution_negates", [&]() -> std::string {
    for (int p : {7, 13}) {
      GkGroup gk = build_gk(p);
      FqMatrix minus = gk.group->action(1);
      need(minus.add(FqMatrix::identity(p, 2)).is_zero(),
           "the central involution does not act as -I");
    }
    return "the central involution acts as -I on the plane (p = 7, 13)";
  });

  return rep;
}

// ---------------------------------------------------------------------------
// Galois-connection corpus and suite

std::vector<std::pair<std::string, QuandleTable>> galois_corpus() {
  static const std::vector<std::pair<std::string, QuandleTable>> corpus = [] {
    std::vector<std::pair<std::string, QuandleTable>> out;
    std::vector<QuandleTable> l16 = latin_size16_family();
    for (std::size_t i = 0; i < l16.size(); ++i)
      out.emplace_back("l16#" + std::to_string(i), l16[i]);
    for (int p : {5, 7, 11}) {
      std::vector<QuandleTable> fam = latin_prime_family(p);
      for (std::size_t i = 0; i < fam.size(); ++i)
        out.emplace_back(
            "aff(" + std::to_string(p) + "," + std::to_string(i + 2) + ")",
            fam[i]);
    }
    out.emplace_back("q4", build_q4());
    GkGroup gk = build_gk(7);
    out.emplace_back("q(7,1)", build_q4p(gk, 1).q);
    out.emplace_back("q(7,2)", build_q4p(gk, 2).q);
    out.emplace_back("si48", build_si48().quandle);
    out.emplace_back("si80", build_si80().quandle);
    SrGroup sr = build_sr_group(7);
    out.emplace_back("sr(7,1)", build_sr_quandle(sr, 1, {1, 0}).q);
    out.emplace_back("sr(7,2)", build_sr_quandle(sr, 2, {1, 0}).q);
    out.emplace_back("sr(7,1;0)", build_sr_quandle(sr, 1, {0, 0}).q);
    std::vector<QuandleTable> lp3 = latin_prime_family(3);
    std::vector<QuandleTable> lp5 = latin_prime_family(5);
    out.emplace_back("l16#0*aff(3,2)", direct_product(l16[0], lp3[0]));
    out.emplace_back("l16#8*aff(5,2)", direct_product(l16[8], lp5[0]));
    return out;
  }();
  return corpus;
}

SuiteReport galois_suite() {
  SuiteReport rep;
  rep.suite = "galois";
  Runner run{rep};

  struct Mem {
    std::string name;
    QuandleTable q;
    bool full = false;
    std::vector<Congruence> congs;
    std::optional<CongruenceLattice> lat;
  };
  std::vector<Mem> mems;
  std::vector<std::vector<PermGroup>> dis_cache;

  run.check("corpus_latin_connected_solvable", [&]() -> std::string {
    auto corpus = galois_corpus();
    need(corpus.size() >= 30, "corpus has fewer than 30 members");
    int full_count = 0;
    for (auto& [name, q] : corpus) {
      need(q.is_latin(), name + " is not latin");
      need(q.is_connected(), name + " is not connected");
      need(q.is_solvable(), name + " is latin but not solvable");
      Mem m{name, q, q.size() <= 64, {}, std::nullopt};
      if (m.full) {
        m.lat = congruence_lattice(m.q);
        m.congs = m.lat->elems;
        ++full_count;
      } else {
        std::vector<Congruence> probe;
        probe.push_back(Congruence::finest(q.size()));
        Congruence gam = gamma_congruence(q);
        Congruence zet = zeta_congruence(q, 1000000);
        probe.push_back(gam);
        probe.push_back(zet);
        probe.push_back(gam.join(zet));
        probe.push_back(Congruence::coarsest(q.size()));
        for (const Congruence& c : probe)
          if (std::find(m.congs.begin(), m.congs.end(), c) == m.congs.end())
            m.congs.push_back(c);
      }
      mems.push_back(std::move(m));
    }
    return std::to_string(mems.size()) + " latin connected solvable members, " +
           std::to_string(full_count) + " with the full congruence lattice";
  });

  run.check("sandwich_and_latin_equality", [&]() -> std::string {
    need(!mems.empty(), "corpus unavailable");
    int instances = 0;
    for (Mem& m : mems) {
      std::vector<PermGroup> dlist;
      for (const Congruence& a : m.congs) {
        PermGroup na = dis_of_congruence(m.q, a);
        Congruence orb = orbit_congruence(m.q, na);
        Congruence ker = kernel_congruence(m.q, na);
        need(orb == a && ker == a,
             m.name + ": latin equality orbit = alpha = kernel fails");
        PermGroup lower = dis_of_congruence(m.q, orb);
        PermGroup upper = dis_fixing_congruence(m.q, orb, 1000000);
        need(subgroup_of(lower, na) && subgroup_of(na, upper),
             m.name + ": displacement sandwich fails");
        dlist.push_back(std::move(na));
        ++instances;
      }
      dis_cache.push_back(std::move(dlist));
    }
    return "orbit = alpha = kernel and the displacement sandwich on " +
           std::to_string(instances) + " congruence instances";
  });

  run.check("join_meet_exchange_laws", [&]() -> std::string {
    need(dis_cache.size() == mems.size(), "displacement cache unavailable");
    int pairs = 0;
    for (std::size_t mi = 0; mi < mems.size(); ++mi) {
      const Mem& m = mems[mi];
      const std::vector<PermGroup>& dl = dis_cache[mi];
      for (std::size_t i = 0; i < m.congs.size(); ++i)
        for (std::size_t j = i + 1; j < m.congs.size(); ++j) {
          const Congruence& a = m.congs[i];
          const Congruence& b = m.congs[j];
          // dis(alpha v beta) = <dis(alpha), dis(beta)>
          PermGroup joined = join_groups(dl[i], dl[j]);
          need(same_group(dis_of_congruence(m.q, a.join(b)), joined),
               m.name + ": displacement of a join is not the generated join");
          // kernel(N meet M) = kernel(N) meet kernel(M)
          PermGroup inter = intersect_groups(dl[i], dl[j]);
          need(kernel_congruence(m.q, inter) ==
                   kernel_congruence(m.q, dl[i])
                       .meet(kernel_congruence(m.q, dl[j])),
               m.name + ": kernel of an intersection is not the meet");
          // orbit(N M) = orbit(N) v orbit(M)
          need(orbit_congruence(m.q, joined) ==
                   orbit_congruence(m.q, dl[i])
                       .join(orbit_congruence(m.q, dl[j])),
               m.name + ": orbit of a product is not the join");
          ++pairs;
        }
    }
    return "three exchange laws on " + std::to_string(pairs) +
           " congruence pairs";
  });

  run.check("minimal_congruences_elementary_abelian", [&]() -> std::string {
    need(dis_cache.size() == mems.size(), "displacement cache unavailable");
    int instances = 0;
    for (std::size_t mi = 0; mi < mems.size(); ++mi) {
      const Mem& m = mems[mi];
      if (!m.full) continue;
      for (int ai : m.lat->atoms()) {
        if (ai == m.lat->top && m.lat->elems.size() == 2) continue;  // simple
        const Congruence& a = m.lat->elems[static_cast<std::size_t>(ai)];
        long long prime = elementary_abelian_prime(
            dis_cache[mi][static_cast<std::size_t>(ai)]);
        need(prime > 0,
             m.name + ": a minimal congruence has non-elementary-abelian "
                      "displacements");
        for (const std::vector<int>& blk : a.blocks()) {
          std::size_t s = blk.size();
          while (s % static_cast<std::size_t>(prime) == 0)
            s /= static_cast<std::size_t>(prime);
          need(s == 1, m.name + ": minimal congruence block size is not a "
                                "power of the displacement prime");
        }
        ++instances;
      }
    }
    need(instances >= 10, "too few minimal-congruence instances");
    return std::to_string(instances) +
           " atoms with elementary abelian displacements and p-power blocks";
  });

  run.check("sylow_orbit_meets", [&]() -> std::string {
    need(!mems.empty(), "corpus unavailable");
    int instances = 0;
    for (const Mem& m : mems) {
      PermGroup dis = m.q.dis();
      PermGroup z = dis.center(1000000);
      std::uint64_t zo = z.order();
      std::vector<long long> primes;
      std::uint64_t rest = zo;
      for (long long q = 2; q * q <= static_cast<long long>(rest); ++q)
        if (rest % static_cast<std::uint64_t>(q) == 0) {
          primes.push_back(q);
          while (rest % static_cast<std::uint64_t>(q) == 0)
            rest /= static_cast<std::uint64_t>(q);
        }
      if (rest > 1) primes.push_back(static_cast<long long>(rest));
      if (primes.size() < 2) continue;
      std::vector<PermGroup> parts;
      std::vector<Permutation> zel = z.elements();
      for (long long q : primes) {
        std::vector<Permutation> part;
        for (const Permutation& e : zel) {
          std::uint64_t o = e.order();
          while (o % static_cast<std::uint64_t>(q) == 0)
            o /= static_cast<std::uint64_t>(q);
          if (o == 1) part.push_back(e);
        }
        parts.emplace_back(m.q.size(), part);
      }
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          need(orbit_congruence(m.q, parts[i])
                   .meet(orbit_congruence(m.q, parts[j]))
                   .is_finest(),
               m.name + ": Sylow orbit congruences do not meet trivially");
          ++instances;
        }
    }
    need(instances >= 2, "no member exercised the Sylow meet identity");
    return std::to_string(instances) +
           " Sylow pairs of nilpotent centers with trivial orbit meets";
  });

  run.check("slim_height_and_nu_mu", [&]() -> std::string {
    need(!mems.empty(), "corpus unavailable");
    int indecomposable = 0;
    for (const Mem& m : mems) {
      if (!m.full) continue;
      const CongruenceLattice& lat = *m.lat;
      if (direct_decomposition(m.q, lat)) continue;
      ++indecomposable;
      const int k = static_cast<int>(lat.elems.size());
      // proper minimal / maximal congruences
      std::vector<int> mins, maxs;
      for (int ai : lat.atoms())
        if (ai != lat.top) mins.push_back(ai);
      for (int ci : lat.coatoms())
        if (ci != lat.bottom) maxs.push_back(ci);
      Congruence nu = Congruence::finest(m.q.size());
      for (int ai : mins)
        nu = nu.join(lat.elems[static_cast<std::size_t>(ai)]);
      Congruence mu = Congruence::coarsest(m.q.size());
      for (int ci : maxs)
        mu = mu.meet(lat.elems[static_cast<std::size_t>(ci)]);
      need(nu.refines(mu), m.name + ": nu is not below mu");
      // slim <=> height <= 4 (height counts elements of a longest chain)
      std::vector<int> idx(static_cast<std::size_t>(k));
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return lat.elems[static_cast<std::size_t>(a)].num_blocks() >
               lat.elems[static_cast<std::size_t>(b)].num_blocks();
      });
      std::vector<int> height(static_cast<std::size_t>(k), 1);
      int best = 1;
      for (int a : idx)
        for (int b : idx)
          if (a != b && lat.below[static_cast<std::size_t>(b)]
                                 [static_cast<std::size_t>(a)] &&
              height[static_cast<std::size_t>(b)] + 1 >
                  height[static_cast<std::size_t>(a)])
            height[static_cast<std::size_t>(a)] =
                height[static_cast<std::size_t>(b)] + 1;
      for (int a = 0; a < k; ++a)
        best = std::max(best, height[static_cast<std::size_t>(a)]);
      bool slim = true;
      for (int a = 0; a < k; ++a)
        if (a != lat.bottom && a != lat.top &&
            std::find(mins.begin(), mins.end(), a) == mins.end() &&
            std::find(maxs.begin(), maxs.end(), a) == maxs.end())
          slim = false;
      need(slim == (best <= 4),
           m.name + ": slimness does not match lattice height <= 4");
    }
    need(indecomposable >= 10, "too few directly indecomposable members");
    return "nu <= mu and the slim/height equivalence on " +
           std::to_string(indecomposable) + " directly indecomposable members";
  });

  run.check("cyclic_dis_implies_central", [&]() -> std::string {
    need(dis_cache.size() == mems.size(), "displacement cache unavailable");
    int instances = 0;
    for (std::size_t mi = 0; mi < mems.size(); ++mi) {
      const Mem& m = mems[mi];
      for (std::size_t i = 0; i < m.congs.size(); ++i) {
        if (!group_is_cyclic(dis_cache[mi][i])) continue;
        need(is_central_congruence(m.q, m.congs[i], 1000000),
             m.name + ": cyclic displacements on a non-central congruence");
        ++instances;
      }
    }
    need(instances >= 3, "too few cyclic-displacement instances");
    return std::to_string(instances) +
           " congruences with cyclic displacements, all central";
  });

  run.check("gamma_complement_criterion", [&]() -> std::string {
    need(dis_cache.size() == mems.size(), "displacement cache unavailable");
    int instances = 0;
    for (std::size_t mi = 0; mi < mems.size(); ++mi) {
      const Mem& m = mems[mi];
      Congruence gam = gamma_congruence(m.q);
      for (std::size_t i = 0; i < m.congs.size(); ++i) {
        const Congruence& a = m.congs[i];
        if (!a.meet(gam).is_finest()) continue;
        need(is_central_congruence(m.q, a, 1000000),
             m.name + ": a gamma-complement congruence is not central");
        need(same_group(dis_cache[mi][i],
                        dis_fixing_congruence(m.q, a, 1000000)),
             m.name + ": Dis_alpha != Dis^alpha on a gamma-complement");
        QuandleTable quot = m.q.quotient(a.block_vector(), a.num_blocks());
        need(quot.is_faithful(),
             m.name + ": quotient by a gamma-complement is not faithful");
        ++instances;
      }
    }
    need(instances >= 5, "too few gamma-complement instances");
    return std::to_string(instances) +
           " congruences meeting gamma trivially: central, balanced "
           "displacements, faithful quotients";
  });

  return rep;
}

// ---------------------------------------------------------------------------
// Inventory suite

namespace {

// 4x4 matrices over F_2 packed in 16 bits; bit (4*i + j) holds entry (i, j).
constexpr int kId4 = 0x8421;

int row4(int m, int i) { return (m >> (4 * i)) & 0xF; }

int mul4(int a, int b) {
  int c = 0;
  for (int i = 0; i < 4; ++i) {
    int r = row4(a, i), acc = 0;
    for (int k = 0; k < 4; ++k)
      if ((r >> k) & 1) acc ^= row4(b, k);
    c |= acc << (4 * i);
  }
  return c;
}

bool invertible4(int m) {
  std::array<int, 4> rows = {row4(m, 0), row4(m, 1), row4(m, 2), row4(m, 3)};
  int rank = 0;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = rank; r < 4; ++r)
      if ((rows[static_cast<std::size_t>(r)] >> col) & 1) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(piv)],
              rows[static_cast<std::size_t>(rank)]);
    for (int r = 0; r < 4; ++r)
      if (r != rank && ((rows[static_cast<std::size_t>(r)] >> col) & 1))
        rows[static_cast<std::size_t>(r)] ^=
            rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank == 4;
}

int inv4(int m) {
  std::array<int, 4> rows = {row4(m, 0), row4(m, 1), row4(m, 2), row4(m, 3)};
  std::array<int, 4> inv = {1, 2, 4, 8};
  int rank = 0;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = rank; r < 4; ++r)
      if ((rows[static_cast<std::size_t>(r)] >> col) & 1) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("inv4 of a singular matrix");
    std::swap(rows[static_cast<std::size_t>(piv)],
              rows[static_cast<std::size_t>(rank)]);
    std::swap(inv[static_cast<std::size_t>(piv)],
              inv[static_cast<std::size_t>(rank)]);
    for (int r = 0; r < 4; ++r)
      if (r != rank && ((rows[static_cast<std::size_t>(r)] >> col) & 1)) {
        rows[static_cast<std::size_t>(r)] ^=
            rows[static_cast<std::size_t>(rank)];
        inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(rank)];
      }
    ++rank;
  }
  int out = 0;
  for (int i = 0; i < 4; ++i) out |= inv[static_cast<std::size_t>(i)] << (4 * i);
  return out;
}

QuandleTable affine_from_bits4(int m) {
  auto ab = std::make_shared<AbelianGroup>(std::vector<int>{2, 2, 2, 2});
  std::vector<std::vector<int>> rows(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(j)] =
        (m >> (4 * i + j)) & 1;
  GroupMap f = abelian_matrix_map(ab, rows);
  return affine_quandle(*ab, f);
}

// 2x2 matrices over Z_4 as row-major arrays.
using M4 = std::array<int, 4>;

int detz4(const M4& m) { return ((m[0] * m[3] - m[1] * m[2]) % 4 + 4) % 4; }

M4 mulz4(const M4& a, const M4& b) {
  return {(a[0] * b[0] + a[1] * b[2]) % 4, (a[0] * b[1] + a[1] * b[3]) % 4,
          (a[2] * b[0] + a[3] * b[2]) % 4, (a[2] * b[1] + a[3] * b[3]) % 4};
}

M4 invz4(const M4& m) {
  int d = detz4(m);
  need(d % 2 == 1, "invz4 of a singular matrix");
  int dinv = d;  // 1 and 3 are self-inverse mod 4
  auto r = [&](int v) { return ((v % 4) + 4) % 4; };
  return {r(m[3] * dinv), r(-m[1] * dinv), r(-m[2] * dinv), r(m[0] * dinv)};
}

QuandleTable affine_from_z4(const M4& m) {
  auto ab = std::make_shared<AbelianGroup>(std::vector<int>{4, 4});
  std::vector<std::vector<int>> rows = {{m[0], m[1]}, {m[2], m[3]}};
  GroupMap f = abelian_matrix_map(ab, rows);
  return affine_quandle(*ab, f);
}

// Is there an automorphism f of the abelian group with both f and 1 - f
// bijective?  Exhaustive over generator images.
bool has_latin_affine_form(const std::vector<int>& moduli) {
  AbelianGroup a(moduli);
  const int n = a.size();
  const int r = static_cast<int>(moduli.size());
  std::vector<int> img(static_cast<std::size_t>(r), 0);
  std::function<bool(int)> rec = [&](int j) -> bool {
    if (j == r) {
      // extend additively from generator images
      std::vector<std::vector<int>> pw(static_cast<std::size_t>(r));
      for (int t = 0; t < r; ++t) {
        pw[static_cast<std::size_t>(t)].assign(
            static_cast<std::size_t>(moduli[static_cast<std::size_t>(t)]), 0);
        for (int d = 1; d < moduli[static_cast<std::size_t>(t)]; ++d)
          pw[static_cast<std::size_t>(t)][static_cast<std::size_t>(d)] =
              a.mul(pw[static_cast<std::size_t>(t)]
                      [static_cast<std::size_t>(d - 1)],
                    img[static_cast<std::size_t>(t)]);
      }
      std::vector<char> seen_f(static_cast<std::size_t>(n), 0);
      std::vector<char> seen_g(static_cast<std::size_t>(n), 0);
      for (int x = 0; x < n; ++x) {
        std::vector<int> d = a.digits(x);
        int fx = 0;
        for (int t = 0; t < r; ++t)
          fx = a.mul(fx, pw[static_cast<std::size_t>(t)][static_cast<
                              std::size_t>(d[static_cast<std::size_t>(t)])]);
        if (seen_f[static_cast<std::size_t>(fx)]) return false;
        seen_f[static_cast<std::size_t>(fx)] = 1;
        int gx = a.mul(x, a.inv(fx));
        if (seen_g[static_cast<std::size_t>(gx)]) return false;
        seen_g[static_cast<std::size_t>(gx)] = 1;
      }
      return true;
    }
    for (int v = 0; v < n; ++v) {
      // the image of a generator must respect its order
      std::uint64_t o = a.element_order(v);
      if (static_cast<std::uint64_t>(moduli[static_cast<std::size_t>(j)]) %
              o !=
          0)
        continue;
      img[static_cast<std::size_t>(j)] = v;
      if (rec(j + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

SuiteReport inventory_suite() {
  SuiteReport rep;
  rep.suite = "inventory";
  Runner run{rep};

  std::vector<QuandleTable> fam = latin_size16_family();
  std::vector<std::size_t> matched;  // family indices hit by the census

  run.check("latin16_family_distinct", [&]() -> std::string {
    need(fam.size() == 9, "the size-16 family does not have 9 members");
    need(dedupe_up_to_iso(fam).size() == 9,
         "the size-16 family has isomorphic members");
    return "9 members, pairwise non-isomorphic";
  });

  run.check("latin16_census_gl4", [&]() -> std::string {
    std::vector<int> qualifying;
    int invertible = 0;
    for (int m = 0; m < 65536; ++m)
      if (invertible4(m)) {
        ++invertible;
        if (invertible4(m ^ kId4)) qualifying.push_back(m);
      }
    need(invertible == 20160, "|GL_4(2)| != 20160");
    // the two standard generators really generate
    const int perm = (1 << 4) | (2 << 8) | (4 << 12) | 8;  // e1->e2->e3->e4->e1
    const int trans = kId4 ^ 2;                            // e1 |-> e1 + e2
    {
      std::unordered_set<int> seen = {kId4};
      std::vector<int> frontier = {kId4};
      std::size_t head = 0;
      while (head < frontier.size()) {
        int a = frontier[head++];
        for (int gmat : {perm, trans})
          for (int c : {mul4(a, gmat), mul4(gmat, a)})
            if (seen.insert(c).second) frontier.push_back(c);
      }
      need(seen.size() == 20160, "the two generators do not span GL_4(2)");
    }
    std::array<int, 4> gens = {perm, trans, inv4(perm), inv4(trans)};
    std::unordered_set<int> qual(qualifying.begin(), qualifying.end());
    std::unordered_set<int> visited;
    std::vector<int> reps;
    for (int m : qualifying) {
      if (visited.count(m)) continue;
      reps.push_back(m);
      std::vector<int> frontier = {m};
      visited.insert(m);
      std::size_t head = 0;
      while (head < frontier.size()) {
        int a = frontier[head++];
        for (int gmat : gens) {
          int c = mul4(mul4(gmat, a), inv4(gmat));
          need(qual.count(c) == 1,
               "conjugation left the fixed-point-free set");
          if (visited.insert(c).second) frontier.push_back(c);
        }
      }
    }
    need(reps.size() == 5, "fixed-point-free conjugacy class count != 5");
    std::set<std::size_t> hits;
    for (int m : reps) {
      QuandleTable q = affine_from_bits4(m);
      std::optional<std::size_t> hit;
      for (std::size_t i = 0; i < fam.size(); ++i)
        if (are_isomorphic(q, fam[i])) {
          need(!hit, "a census class matches two family members");
          hit = i;
        }
      need(hit.has_value(), "a census class matches no family member");
      need(hits.insert(*hit).second, "two census classes match one member");
      matched.push_back(*hit);
    }
    return std::to_string(qualifying.size()) +
           " fixed-point-free matrices in GL_4(2), 5 conjugacy classes "
           "matching 5 distinct family members";
  });

  run.check("latin16_census_z4sq", [&]() -> std::string {
    std::vector<M4> all;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            M4 m = {a, b, c, d};
            if (detz4(m) % 2 == 1) all.push_back(m);
          }
    need(all.size() == 96, "|Aut(Z_4^2)| != 96");
    std::vector<M4> qualifying;
    for (const M4& m : all) {
      M4 imf = {((1 - m[0]) % 4 + 4) % 4, ((-m[1]) % 4 + 4) % 4,
                ((-m[2]) % 4 + 4) % 4, ((1 - m[3]) % 4 + 4) % 4};
      if (detz4(imf) % 2 == 1) qualifying.push_back(m);
    }
    std::set<M4> left(qualifying.begin(), qualifying.end());
    std::vector<M4> reps;
    while (!left.empty()) {
      M4 m = *left.begin();
      reps.push_back(m);
      for (const M4& gmat : all) {
        M4 c = mulz4(mulz4(gmat, m), invz4(gmat));
        need(detz4({((1 - c[0]) % 4 + 4) % 4, ((-c[1]) % 4 + 4) % 4,
                    ((-c[2]) % 4 + 4) % 4, ((1 - c[3]) % 4 + 4) % 4}) %
                     2 ==
                 1,
             "conjugation left the fixed-point-free set");
        left.erase(c);
      }
    }
    need(reps.size() == 4, "fixed-point-free class count over Z_4^2 != 4");
    std::set<std::size_t> hits(matched.begin(), matched.end());
    for (const M4& m : reps) {
      QuandleTable q = affine_from_z4(m);
      std::optional<std::size_t> hit;
      for (std::size_t i = 0; i < fam.size(); ++i)
        if (are_isomorphic(q, fam[i])) {
          need(!hit, "a census class matches two family members");
          hit = i;
        }
      need(hit.has_value(), "a census class matches no family member");
      need(hits.insert(*hit).second,
           "a Z_4^2 class repeats an already-matched member");
      matched.push_back(*hit);
    }
    need(matched.size() == 9 && hits.size() == 9,
         "the two censuses do not cover the family bijectively");
    return "4 conjugacy classes over Z_4^2; censuses cover all 9 members";
  });

  run.check("no_latin_affine_other_abelian16", [&]() -> std::string {
    for (const std::vector<int>& moduli :
         {std::vector<int>{16}, std::vector<int>{2, 8},
          std::vector<int>{2, 2, 4}})
      need(!has_latin_affine_form(moduli),
           "an unexpected latin affine form exists on a cyclic-heavy group");
    return "no latin affine form on Z_16, Z_2 x Z_8, Z_2^2 x Z_4";
  });

  run.check("latin_prime_families", [&]() -> std::string {
    for (int p : {5, 7, 11, 13}) {
      std::vector<QuandleTable> f = latin_prime_family(p);
      need(static_cast<int>(f.size()) == p - 2,
           "latin family over Z_p does not have p - 2 members");
      need(dedupe_up_to_iso(f).size() == f.size(),
           "latin family over Z_p has isomorphic members");
    }
    return "p - 2 pairwise non-isomorphic members for p = 5, 7, 11, 13";
  });

  return rep;
}

}  // namespace qlat
