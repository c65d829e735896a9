#include "qlat/quiso.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qlat/common.hpp"

namespace qlat {

namespace {

// Multiset renderer: "3^8 6^4" for eight 3s and four 6s.
std::string multiset_str(const std::vector<std::uint64_t>& v) {
  std::map<std::uint64_t, int> counts;
  for (auto x : v) ++counts[x];
  std::ostringstream os;
  bool first = true;
  for (auto [val, cnt] : counts) {
    if (!first) os << ' ';
    first = false;
    os << val;
    if (cnt > 1) os << '^' << cnt;
  }
  return os.str();
}

auto tie_fields(const Fingerprint& f) {
  return std::tie(f.size, f.latin, f.connected, f.faithful, f.lmlt_order,
                  f.dis_order, f.dis_center_order, f.num_congruences,
                  f.gamma_blocks, f.zeta_blocks, f.lattice_shape,
                  f.translation_orders, f.dis_abelianization_orders);
}

}  // namespace

bool Fingerprint::operator==(const Fingerprint& o) const {
  return tie_fields(*this) == tie_fields(o);
}

bool Fingerprint::operator<(const Fingerprint& o) const {
  return tie_fields(*this) < tie_fields(o);
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "n=" << size;
  os << (latin ? " latin" : "") << (connected ? " connected" : "")
     << (faithful ? " faithful" : "");
  os << " |LMlt|=" << lmlt_order << " |Dis|=" << dis_order;
  if (dis_center_order != 0) os << " |Z(Dis)|=" << dis_center_order;
  if (num_congruences >= 0) os << " #Con=" << num_congruences;
  if (!lattice_shape.empty()) os << " shape=" << lattice_shape;
  if (gamma_blocks != 0) os << " |Q/gamma|=" << gamma_blocks;
  if (zeta_blocks != 0) os << " |Q/zeta|=" << zeta_blocks;
  os << " L-orders={" << multiset_str(translation_orders) << "}";
  if (!dis_abelianization_orders.empty())
    os << " Dis-ab-orders={" << multiset_str(dis_abelianization_orders) << "}";
  return os.str();
}

Fingerprint fingerprint(const QuandleTable& q) {
  Fingerprint f;
  const int n = q.size();
  f.size = n;
  f.latin = q.is_latin();
  f.connected = q.is_connected();
  f.faithful = q.is_faithful();

  PermGroup lm = q.lmlt();
  PermGroup d = q.dis();
  f.lmlt_order = lm.order();
  f.dis_order = d.order();

  f.translation_orders.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    f.translation_orders.push_back(q.left_translation(x).order());
  std::sort(f.translation_orders.begin(), f.translation_orders.end());

  // Whole-group enumerations are skipped once |Dis| * degree exceeds a
  // memory-driven bound; the fields stay at their "unavailable" defaults.
  const std::uint64_t enum_cost =
      f.dis_order * static_cast<std::uint64_t>(std::max(n, 1));
  if (enum_cost <= 50000000ULL) {
    try {
      f.dis_center_order = d.center().order();
    } catch (const capacity_error&) {
    }
  }

  if (f.connected) {
    // The full congruence lattice costs O(n^2) principal-congruence closures,
    // so it only enters the fingerprint for small tables; the two canonical
    // congruences below are single closures and stay available much longer.
    if (n <= 64) {
      CongruenceLattice lat = congruence_lattice(q);
      f.num_congruences = static_cast<int>(lat.elems.size());
      f.lattice_shape = lat.shape_tag();
    }
    if (n <= 1024) {
      f.gamma_blocks = gamma_congruence(q).num_blocks();
      if (enum_cost <= 50000000ULL) {
        try {
          f.zeta_blocks = zeta_congruence(q).num_blocks();
        } catch (const capacity_error&) {
        }
      }
    }
  }

  try {
    PermGroup dd = d.derived_subgroup();
    std::uint64_t index = d.order() / dd.order();
    if (index <= 4096) {
      PermGroup ab = d.coset_action(dd);
      for (const Permutation& e : ab.elements(4096))
        f.dis_abelianization_orders.push_back(e.order());
      std::sort(f.dis_abelianization_orders.begin(),
                f.dis_abelianization_orders.end());
    }
  } catch (const capacity_error&) {
  }

  return f;
}

QuandleTable relabel(const QuandleTable& q, const Permutation& p) {
  const int n = q.size();
  if (p.degree() != n)
    throw std::invalid_argument("relabel: permutation degree mismatch");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[static_cast<std::size_t>(p(x))][static_cast<std::size_t>(p(y))] =
          p(q.op(x, y));
  return QuandleTable(t);
}

namespace {

// How each carrier element is first produced from the generators: either it
// is a generator itself (a new phase) or it arises as left*right / left\right
// from elements already produced.
struct Step {
  int result = 0, left = 0, right = 0;
  bool divide = false;
};

struct GenPlan {
  std::vector<int> gens;
  std::vector<std::vector<Step>> phases;  // phases[k]: closure after gens[k]
};

GenPlan build_plan(const QuandleTable& q) {
  const int n = q.size();
  GenPlan plan;
  std::vector<char> known(static_cast<std::size_t>(n), 0);
  std::vector<int> known_list;
  std::size_t processed = 0;

  auto discover = [&](int e, int l, int r, bool dv, std::vector<Step>& steps) {
    if (known[static_cast<std::size_t>(e)]) return;
    known[static_cast<std::size_t>(e)] = 1;
    known_list.push_back(e);
    steps.push_back(Step{e, l, r, dv});
  };

  while (known_list.size() < static_cast<std::size_t>(n)) {
    if (plan.gens.size() >= 10)
      throw capacity_error(
          "find_isomorphism: quandle needs more than 10 generators");
    int g = 0;
    while (known[static_cast<std::size_t>(g)]) ++g;
    plan.gens.push_back(g);
    known[static_cast<std::size_t>(g)] = 1;
    known_list.push_back(g);
    plan.phases.emplace_back();
    std::vector<Step>& steps = plan.phases.back();
    // Pair every not-yet-processed element against everything known so far,
    // on both sides; elements discovered here join the queue.
    while (processed < known_list.size()) {
      int x = known_list[processed];
      for (std::size_t j = 0; j <= processed; ++j) {
        int y = known_list[j];
        discover(q.op(x, y), x, y, false, steps);
        discover(q.left_div(x, y), x, y, true, steps);
        if (x != y) {
          discover(q.op(y, x), y, x, false, steps);
          discover(q.left_div(y, x), y, x, true, steps);
        }
      }
      ++processed;
    }
  }
  return plan;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const QuandleTable& a,
                                                 const QuandleTable& b) {
  const int n = a.size();
  if (b.size() != n) return std::nullopt;

  // Per-element invariant used to filter candidate generator images.
  std::vector<std::vector<int>> inv_b(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    inv_b[static_cast<std::size_t>(x)] = b.left_translation(x).cycle_type();

  GenPlan plan = build_plan(a);
  std::vector<std::vector<int>> gen_inv;
  gen_inv.reserve(plan.gens.size());
  for (int g : plan.gens) gen_inv.push_back(a.left_translation(g).cycle_type());

  // When the codomain is connected its left translations are transitive
  // automorphisms, so any isomorphism can be normalized to send the first
  // generator to element 0; searching only that image stays complete.
  const bool pin_first = b.is_connected();

  std::vector<int> img(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  std::function<bool(std::size_t)> try_phase = [&](std::size_t k) -> bool {
    if (k == plan.gens.size()) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (img[static_cast<std::size_t>(a.op(x, y))] !=
              b.op(img[static_cast<std::size_t>(x)],
                   img[static_cast<std::size_t>(y)]))
            return false;
      return true;
    }
    const int g = plan.gens[k];
    const int cand_limit = (k == 0 && pin_first) ? 1 : n;
    for (int cand = 0; cand < cand_limit; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      if (inv_b[static_cast<std::size_t>(cand)] != gen_inv[k]) continue;
      std::vector<int> assigned;
      assigned.push_back(g);
      img[static_cast<std::size_t>(g)] = cand;
      used[static_cast<std::size_t>(cand)] = 1;
      bool ok = true;
      for (const Step& s : plan.phases[k]) {
        const int li = img[static_cast<std::size_t>(s.left)];
        const int ri = img[static_cast<std::size_t>(s.right)];
        const int target = s.divide ? b.left_div(li, ri) : b.op(li, ri);
        if (used[static_cast<std::size_t>(target)]) {
          ok = false;  // image already taken: the map cannot be injective
          break;
        }
        img[static_cast<std::size_t>(s.result)] = target;
        used[static_cast<std::size_t>(target)] = 1;
        assigned.push_back(s.result);
      }
      if (ok && try_phase(k + 1)) return true;
      for (int e : assigned) {
        used[static_cast<std::size_t>(img[static_cast<std::size_t>(e)])] = 0;
        img[static_cast<std::size_t>(e)] = -1;
      }
    }
    return false;
  };

  if (try_phase(0)) return img;
  return std::nullopt;
}

bool are_isomorphic(const QuandleTable& a, const QuandleTable& b) {
  if (a.size() != b.size()) return false;
  // Cheap gate: multisets of left-translation cycle types must agree.
  const int n = a.size();
  std::vector<std::vector<int>> ca, cb;
  ca.reserve(static_cast<std::size_t>(n));
  cb.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    ca.push_back(a.left_translation(x).cycle_type());
    cb.push_back(b.left_translation(x).cycle_type());
  }
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return false;
  return find_isomorphism(a, b).has_value();
}

std::vector<std::size_t> dedupe_up_to_iso(const std::vector<QuandleTable>& qs) {
  std::vector<std::size_t> reps;
  std::vector<Fingerprint> rep_fp;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    Fingerprint fp = fingerprint(qs[i]);
    bool duplicate = false;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (!(rep_fp[r] == fp)) continue;
      if (find_isomorphism(qs[reps[r]], qs[i]).has_value()) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      reps.push_back(i);
      rep_fp.push_back(std::move(fp));
    }
  }
  return reps;
}

}  // namespace qlat
