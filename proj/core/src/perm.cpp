#include "qlat/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace qlat {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(int degree) {
  if (degree < 0 || degree > 65535)
    throw std::invalid_argument("permutation degree out of range");
  img_.resize(static_cast<std::size_t>(degree));
  std::iota(img_.begin(), img_.end(), 0);
}

Permutation Permutation::identity(int degree) { return Permutation(degree); }

Permutation Permutation::from_images(std::vector<int> images) {
  Permutation p(static_cast<int>(images.size()));
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    int v = images[i];
    if (v < 0 || v >= static_cast<int>(images.size()) || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = true;
    p.img_[i] = static_cast<std::uint16_t>(v);
  }
  return p;
}

Permutation Permutation::from_cycles(
    int degree, const std::vector<std::vector<int>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a < 0 || a >= degree || used[a])
        throw std::invalid_argument("bad cycle");
      used[a] = true;
      p.img_[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(b);
    }
  }
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (degree() != other.degree())
    throw std::invalid_argument("degree mismatch");
  Permutation r(degree());
  for (int x = 0; x < degree(); ++x)
    r.img_[static_cast<std::size_t>(x)] = img_[other.img_[x]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r(degree());
  for (int x = 0; x < degree(); ++x)
    r.img_[img_[static_cast<std::size_t>(x)]] = static_cast<std::uint16_t>(x);
  return r;
}

Permutation Permutation::pow(long long k) const {
  if (k < 0) return inverse().pow(-k);
  Permutation acc = identity(degree()), base = *this;
  while (k > 0) {
    if (k & 1) acc = acc.compose(base);
    base = base.compose(base);
    k >>= 1;
  }
  return acc;
}

std::uint64_t Permutation::order() const {
  std::uint64_t ord = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) { seen[j] = true; ++len; }
    ord = std::lcm(ord, len);
  }
  return ord;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<int> Permutation::moved_points() const {
  std::vector<int> r;
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) r.push_back(static_cast<int>(i));
  return r;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> r;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) { seen[j] = true; ++len; }
    if (len >= 2) r.push_back(len);
  }
  std::sort(r.rbegin(), r.rend());
  return r;
}

std::uint64_t Permutation::hash_key() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ img_.size();
  for (std::uint16_t v : img_) hash_mix(h, v);
  return h;
}

std::string Permutation::str() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) { seen[i] = true; continue; }
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j;
      first = false;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

// ---------------------------------------------------------------------------
// Deterministic Schreier-Sims stabilizer chain

namespace detail {

// Textbook deterministic Schreier-Sims with explicit transversals.  A newly
// discovered strong generator that sifts down to level k is inserted into
// every level it fixes the base prefix of, which keeps the chain nested; the
// verification walk then re-checks Schreier generators bottom-up.
class StabChain {
 public:
  explicit StabChain(int degree) : degree_(degree) {}

  bool contains(const Permutation& g) const {
    return sift_from(0, g).first.is_identity();
  }

  void extend(const Permutation& g) {
    auto [res, stuck] = sift_from(0, g);
    if (res.is_identity()) return;
    insert_interval(0, stuck, res);
    verify_from(stuck);
  }

  std::uint64_t order() const {
    unsigned __int128 n = 1;
    for (const auto& L : levels_) {
      n *= L.orbit.size();
      if (n > static_cast<unsigned __int128>(~0ULL))
        throw capacity_error("group order exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(n);
  }

 private:
  struct Level {
    int base = -1;
    std::vector<Permutation> gens;
    std::vector<int> orbit;
    std::vector<Permutation> transversal;  // maps base to point; by point
    std::vector<bool> in_orbit;
  };

  // Sift g through levels lev.. ; returns the residue and the level where
  // sifting stopped (levels_.size() when it passed everything).
  std::pair<Permutation, std::size_t> sift_from(std::size_t lev,
                                                Permutation g) const {
    for (; lev < levels_.size(); ++lev) {
      const Level& L = levels_[lev];
      int beta = g(L.base);
      if (beta == L.base) continue;
      if (!L.in_orbit[static_cast<std::size_t>(beta)])
        return {std::move(g), lev};
      g = L.transversal[static_cast<std::size_t>(beta)].inverse().compose(g);
    }
    return {std::move(g), levels_.size()};
  }

  void recompute_orbit(std::size_t lev) {
    Level& L = levels_[lev];
    L.orbit.clear();
    L.in_orbit.assign(static_cast<std::size_t>(degree_), false);
    L.transversal.assign(static_cast<std::size_t>(degree_),
                         Permutation::identity(0));
    L.orbit.push_back(L.base);
    L.in_orbit[static_cast<std::size_t>(L.base)] = true;
    L.transversal[static_cast<std::size_t>(L.base)] =
        Permutation::identity(degree_);
    for (std::size_t i = 0; i < L.orbit.size(); ++i) {
      int p = L.orbit[i];
      for (const auto& s : L.gens) {
        int q = s(p);
        if (!L.in_orbit[static_cast<std::size_t>(q)]) {
          L.in_orbit[static_cast<std::size_t>(q)] = true;
          L.orbit.push_back(q);
          L.transversal[static_cast<std::size_t>(q)] =
              s.compose(L.transversal[static_cast<std::size_t>(p)]);
        }
      }
    }
  }

  // Add g (which fixes the bases of levels < from+?) to levels from..to,
  // creating the final level when to == levels_.size().
  void insert_interval(std::size_t from, std::size_t to,
                       const Permutation& g) {
    if (to == levels_.size()) {
      levels_.emplace_back();
      levels_.back().base = g.moved_points().front();
    }
    for (std::size_t j = from; j <= to; ++j) {
      levels_[j].gens.push_back(g);
      recompute_orbit(j);
    }
  }

  // Re-establish the Schreier condition walking from `start` back to 0.
  void verify_from(std::size_t start) {
    std::size_t i = std::min(start, levels_.size() - 1);
    for (;;) {
      std::size_t fail = check_level(i);
      if (fail != static_cast<std::size_t>(-1)) {
        i = std::min(fail, levels_.size() - 1);
        continue;
      }
      if (i == 0) break;
      --i;
    }
  }

  // Check all Schreier generators of level i; on the first failure insert the
  // residue at levels i+1..stuck and report stuck; -1 when everything passes.
  std::size_t check_level(std::size_t i) {
    Level& L = levels_[i];
    for (std::size_t oi = 0; oi < L.orbit.size(); ++oi) {
      int p = L.orbit[oi];
      const Permutation& tp = L.transversal[static_cast<std::size_t>(p)];
      for (const auto& s : L.gens) {
        int q = s(p);
        Permutation sch = L.transversal[static_cast<std::size_t>(q)]
                              .inverse()
                              .compose(s)
                              .compose(tp);
        if (sch.is_identity()) continue;
        auto [res, stuck] = sift_from(i + 1, std::move(sch));
        if (!res.is_identity()) {
          insert_interval(i + 1, stuck, res);
          return stuck;
        }
      }
    }
    return static_cast<std::size_t>(-1);
  }

  int degree_;
  std::vector<Level> levels_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.degree() != degree_)
      throw std::invalid_argument("generator degree mismatch");
  // Drop identity generators; they only slow the chain down.
  gens_.erase(std::remove_if(gens_.begin(), gens_.end(),
                             [](const Permutation& g) { return g.is_identity(); }),
              gens_.end());
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

detail::StabChain& PermGroup::chain() const {
  if (!chain_) {
    auto c = std::make_shared<detail::StabChain>(degree_);
    for (const auto& g : gens_) c->extend(g);
    chain_ = std::move(c);
  }
  return *chain_;
}

std::uint64_t PermGroup::order() const { return chain().order(); }

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  return chain().contains(p);
}

bool PermGroup::is_trivial() const { return order() == 1; }

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i].compose(gens_[j]) == gens_[j].compose(gens_[i])))
        return false;
  return true;
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree_ != other.degree_) return false;
  for (const auto& g : gens_)
    if (!other.contains(g)) return false;
  return true;
}

bool PermGroup::same_group_as(const PermGroup& other) const {
  return is_subgroup_of(other) && order() == other.order();
}

std::vector<Permutation> PermGroup::elements(std::size_t cap) const {
  std::vector<Permutation> elems{Permutation::identity(degree_)};
  std::unordered_set<Permutation, PermHash> seen{elems[0]};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens_) {
      Permutation next = g.compose(elems[i]);
      if (seen.insert(next).second) {
        if (elems.size() >= cap)
          throw capacity_error("group element enumeration exceeds cap");
        elems.push_back(std::move(next));
      }
    }
  }
  return elems;
}

std::vector<int> PermGroup::orbit(int point) const {
  std::vector<int> orb{point};
  std::vector<bool> in(static_cast<std::size_t>(degree_), false);
  in[static_cast<std::size_t>(point)] = true;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : gens_) {
      int q = g(orb[i]);
      if (!in[static_cast<std::size_t>(q)]) {
        in[static_cast<std::size_t>(q)] = true;
        orb.push_back(q);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> res;
  std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
  for (int p = 0; p < degree_; ++p) {
    if (seen[static_cast<std::size_t>(p)]) continue;
    auto orb = orbit(p);
    for (int q : orb) seen[static_cast<std::size_t>(q)] = true;
    res.push_back(std::move(orb));
  }
  return res;
}

bool PermGroup::is_transitive() const {
  return degree_ > 0 &&
         static_cast<int>(orbit(0).size()) == degree_;
}

PermGroup PermGroup::normal_closure(
    const std::vector<Permutation>& subgens) const {
  detail::StabChain chain_cl(degree_);
  std::vector<Permutation> cl;
  for (const auto& s : subgens) {
    if (s.is_identity() || chain_cl.contains(s)) continue;
    chain_cl.extend(s);
    cl.push_back(s);
  }
  for (std::size_t i = 0; i < cl.size(); ++i) {
    for (const auto& g : gens_) {
      Permutation c = g.compose(cl[i]).compose(g.inverse());
      if (!chain_cl.contains(c)) {
        chain_cl.extend(c);
        cl.push_back(std::move(c));
      }
    }
  }
  return PermGroup(degree_, cl);
}

PermGroup PermGroup::derived_subgroup() const {
  std::vector<Permutation> comms;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      comms.push_back(gens_[i]
                          .inverse()
                          .compose(gens_[j].inverse())
                          .compose(gens_[i])
                          .compose(gens_[j]));
  return normal_closure(comms);
}

std::vector<PermGroup> PermGroup::derived_series() const {
  std::vector<PermGroup> series{*this};
  for (;;) {
    PermGroup next = series.back().derived_subgroup();
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
    if (series.back().is_trivial()) break;
  }
  return series;
}

std::vector<PermGroup> PermGroup::lower_central_series() const {
  std::vector<PermGroup> series{*this};
  for (;;) {
    std::vector<Permutation> comms;
    for (const auto& a : series.back().generators())
      for (const auto& g : gens_)
        comms.push_back(
            a.inverse().compose(g.inverse()).compose(a).compose(g));
    PermGroup next = normal_closure(comms);
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
    if (series.back().is_trivial()) break;
  }
  return series;
}

bool PermGroup::is_solvable() const {
  return derived_series().back().is_trivial();
}

bool PermGroup::is_nilpotent() const {
  return lower_central_series().back().is_trivial();
}

PermGroup PermGroup::center(std::size_t cap) const {
  detail::StabChain keep(degree_);
  std::vector<Permutation> zgens;
  for (const auto& e : elements(cap)) {
    bool central = true;
    for (const auto& g : gens_)
      if (!(e.compose(g) == g.compose(e))) { central = false; break; }
    if (central && !e.is_identity() && !keep.contains(e)) {
      keep.extend(e);
      zgens.push_back(e);
    }
  }
  return PermGroup(degree_, zgens);
}

std::vector<Permutation> PermGroup::reduced_generators() const {
  std::uint64_t target = order();
  detail::StabChain keep(degree_);
  std::vector<Permutation> kept;
  // Longest-order generators first tends to finish in fewer steps.
  std::vector<Permutation> sorted = gens_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Permutation& a, const Permutation& b) {
                     return a.order() > b.order();
                   });
  for (const auto& g : sorted) {
    if (keep.contains(g)) continue;
    keep.extend(g);
    kept.push_back(g);
    if (keep.order() == target) break;
  }
  return kept;
}

PermGroup PermGroup::action_on_blocks(
    const std::vector<std::vector<int>>& blocks) const {
  std::vector<int> block_of(static_cast<std::size_t>(degree_), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b]) {
      if (x < 0 || x >= degree_ || block_of[static_cast<std::size_t>(x)] != -1)
        throw std::invalid_argument("blocks do not partition the points");
      block_of[static_cast<std::size_t>(x)] = static_cast<int>(b);
    }
  for (int v : block_of)
    if (v == -1) throw std::invalid_argument("blocks do not cover the points");

  std::vector<Permutation> acts;
  for (const auto& g : gens_) {
    std::vector<int> img(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      int target = block_of[static_cast<std::size_t>(g(blocks[b][0]))];
      for (int x : blocks[b])
        if (block_of[static_cast<std::size_t>(g(x))] != target)
          throw std::invalid_argument("partition not preserved by the group");
      img[b] = target;
    }
    acts.push_back(Permutation::from_images(img));
  }
  return PermGroup(static_cast<int>(blocks.size()), acts);
}

PermGroup PermGroup::block_action_kernel(
    const std::vector<std::vector<int>>& blocks, std::size_t cap) const {
  std::vector<int> block_of(static_cast<std::size_t>(degree_), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b]) block_of[static_cast<std::size_t>(x)] = static_cast<int>(b);
  detail::StabChain keep(degree_);
  std::vector<Permutation> kgens;
  for (const auto& e : elements(cap)) {
    bool fixes = true;
    for (int x = 0; x < degree_ && fixes; ++x)
      fixes = block_of[static_cast<std::size_t>(e(x))] ==
              block_of[static_cast<std::size_t>(x)];
    if (fixes && !e.is_identity() && !keep.contains(e)) {
      keep.extend(e);
      kgens.push_back(e);
    }
  }
  return PermGroup(degree_, kgens);
}

PermGroup PermGroup::coset_action(const PermGroup& subgroup) const {
  if (!subgroup.is_subgroup_of(*this))
    throw std::invalid_argument("coset_action needs a subgroup");
  // Enumerate left cosets gH breadth-first; coset 0 is H.
  std::vector<Permutation> reps{Permutation::identity(degree_)};
  std::vector<Permutation> rep_inv{Permutation::identity(degree_)};
  auto find_coset = [&](const Permutation& c) -> int {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (subgroup.contains(rep_inv[i].compose(c)))
        return static_cast<int>(i);
    return -1;
  };
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& g : gens_) {
      Permutation c = g.compose(reps[i]);
      if (find_coset(c) == -1) {
        rep_inv.push_back(c.inverse());
        reps.push_back(std::move(c));
      }
    }
  std::vector<Permutation> acts;
  for (const auto& g : gens_) {
    std::vector<int> img(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      img[i] = find_coset(g.compose(reps[i]));
    acts.push_back(Permutation::from_images(img));
  }
  return PermGroup(static_cast<int>(reps.size()), acts);
}

}  // namespace qlat
