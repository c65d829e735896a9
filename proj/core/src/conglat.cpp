#include "qlat/conglat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qlat {

// ---------------------------------------------------------------------------
// Congruence

Congruence::Congruence(std::vector<int> block_of) : block_of_(std::move(block_of)) {
  // Renumber blocks by first occurrence.
  std::map<int, int> remap;
  for (int& b : block_of_) {
    auto [it, fresh] = remap.emplace(b, static_cast<int>(remap.size()));
    b = it->second;
  }
  num_blocks_ = static_cast<int>(remap.size());
}

Congruence Congruence::finest(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Congruence(std::move(v));
}

Congruence Congruence::coarsest(int n) {
  return Congruence(std::vector<int>(static_cast<std::size_t>(n), 0));
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_blocks_));
  for (std::size_t x = 0; x < block_of_.size(); ++x)
    out[static_cast<std::size_t>(block_of_[x])].push_back(static_cast<int>(x));
  return out;
}

bool Congruence::refines(const Congruence& coarser) const {
  if (coarser.size() != size()) throw std::invalid_argument("size mismatch");
  // Each of my blocks must sit inside one of the coarser blocks.
  std::vector<int> image(static_cast<std::size_t>(num_blocks_), -1);
  for (std::size_t x = 0; x < block_of_.size(); ++x) {
    int& img = image[static_cast<std::size_t>(block_of_[x])];
    int c = coarser.block_of_[x];
    if (img == -1) img = c;
    else if (img != c) return false;
  }
  return true;
}

Congruence Congruence::join(const Congruence& o) const {
  if (o.size() != size()) throw std::invalid_argument("size mismatch");
  // Union-find over the blocks of both partitions.
  std::vector<int> parent(static_cast<std::size_t>(size()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    parent[static_cast<std::size_t>(find(a))] = find(b);
  };
  std::vector<int> first_of_mine(static_cast<std::size_t>(num_blocks_), -1);
  std::vector<int> first_of_theirs(static_cast<std::size_t>(o.num_blocks_), -1);
  for (int x = 0; x < size(); ++x) {
    int& m = first_of_mine[static_cast<std::size_t>(block_of_[static_cast<std::size_t>(x)])];
    if (m == -1) m = x; else unite(x, m);
    int& t = first_of_theirs[static_cast<std::size_t>(o.block_of_[static_cast<std::size_t>(x)])];
    if (t == -1) t = x; else unite(x, t);
  }
  std::vector<int> v(static_cast<std::size_t>(size()));
  for (int x = 0; x < size(); ++x) v[static_cast<std::size_t>(x)] = find(x);
  return Congruence(std::move(v));
}

Congruence Congruence::meet(const Congruence& o) const {
  if (o.size() != size()) throw std::invalid_argument("size mismatch");
  std::map<std::pair<int, int>, int> pairs;
  std::vector<int> v(static_cast<std::size_t>(size()));
  for (int x = 0; x < size(); ++x) {
    auto key = std::make_pair(block_of_[static_cast<std::size_t>(x)],
                              o.block_of_[static_cast<std::size_t>(x)]);
    auto [it, fresh] = pairs.emplace(key, static_cast<int>(pairs.size()));
    v[static_cast<std::size_t>(x)] = it->second;
  }
  return Congruence(std::move(v));
}

// ---------------------------------------------------------------------------
// Principal congruences and the full set

Congruence principal_congruence(const QuandleTable& q, int a, int b) {
  int n = q.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<std::pair<int, int>> work{{a, b}};
  while (!work.empty()) {
    auto [u, v] = work.back();
    work.pop_back();
    int ru = find(u), rv = find(v);
    if (ru == rv) continue;
    parent[static_cast<std::size_t>(ru)] = rv;
    for (int z = 0; z < n; ++z) {
      work.emplace_back(q.op(z, u), q.op(z, v));
      work.emplace_back(q.op(u, z), q.op(v, z));
    }
  }
  std::vector<int> blocks(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) blocks[static_cast<std::size_t>(x)] = find(x);
  return Congruence(std::move(blocks));
}

std::vector<Congruence> all_congruences(const QuandleTable& q) {
  if (!q.is_connected())
    throw std::invalid_argument(
        "congruence enumeration requires a connected quandle");
  int n = q.size();
  std::set<Congruence> found;
  found.insert(Congruence::finest(n));
  for (int y = 1; y < n; ++y) found.insert(principal_congruence(q, 0, y));
  // Close under joins.
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Congruence> cur(found.begin(), found.end());
    for (std::size_t i = 0; i < cur.size() && !grew; ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        Congruence jn = cur[i].join(cur[j]);
        if (found.insert(jn).second) { grew = true; break; }
      }
  }
  std::vector<Congruence> out(found.begin(), found.end());
  // Defensive validation: every member is a congruence, and the collection
  // is meet-closed (it must be, if it is really the whole lattice).
  for (const auto& c : out) q.quotient(c.block_vector(), c.num_blocks());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!found.count(out[i].meet(out[j])))
        throw std::logic_error("congruence set is not meet-closed");
  return out;
}

// ---------------------------------------------------------------------------
// Lattice structure

int CongruenceLattice::index_of(const Congruence& c) const {
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == c) return static_cast<int>(i);
  return -1;
}

std::vector<int> CongruenceLattice::atoms() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (static_cast<int>(i) == bottom) continue;
    bool atom = true;
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (static_cast<int>(k) != bottom && k != i && below[k][i]) {
        atom = false;
        break;
      }
    if (atom) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> CongruenceLattice::coatoms() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (static_cast<int>(i) == top) continue;
    bool coatom = true;
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (static_cast<int>(k) != top && k != i && below[i][k]) {
        coatom = false;
        break;
      }
    if (coatom) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::pair<int, int>> CongruenceLattice::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (i == j || !below[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < elems.size(); ++k)
        if (k != i && k != j && below[i][k] && below[k][j]) {
          cover = false;
          break;
        }
      if (cover) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return out;
}

int CongruenceLattice::monolith() const {
  auto a = atoms();
  return a.size() == 1 ? a[0] : -1;
}

std::string CongruenceLattice::shape_tag() const {
  bool chain = true;
  for (std::size_t i = 0; i < elems.size() && chain; ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (!below[i][j] && !below[j][i]) { chain = false; break; }
  if (chain) return "chain-" + std::to_string(elems.size());
  if (elems.size() == 5) {
    auto at = atoms();
    auto co = coatoms();
    if (at.size() == 2 && co.size() == 1) {
      Congruence j = elems[static_cast<std::size_t>(at[0])].join(
          elems[static_cast<std::size_t>(at[1])]);
      if (j == elems[static_cast<std::size_t>(co[0])]) return "diamond";
    }
  }
  return "other-" + std::to_string(elems.size());
}

CongruenceLattice congruence_lattice(const QuandleTable& q) {
  CongruenceLattice lat;
  lat.elems = all_congruences(q);
  std::size_t m = lat.elems.size();
  lat.below.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      lat.below[i][j] = lat.elems[i].refines(lat.elems[j]);
  for (std::size_t i = 0; i < m; ++i) {
    if (lat.elems[i].is_finest()) lat.bottom = static_cast<int>(i);
    if (lat.elems[i].is_coarsest()) lat.top = static_cast<int>(i);
  }
  return lat;
}

// ---------------------------------------------------------------------------
// Displacement operators

PermGroup dis_of_congruence(const QuandleTable& q, const Congruence& a) {
  std::vector<Permutation> gens;
  for (const auto& block : a.blocks()) {
    int r = block[0];
    Permutation lr_inv = q.left_translation(r).inverse();
    for (std::size_t i = 1; i < block.size(); ++i)
      gens.push_back(q.left_translation(block[i]).compose(lr_inv));
  }
  return PermGroup(q.size(), gens);
}

PermGroup dis_fixing_congruence(const QuandleTable& q, const Congruence& a,
                                std::size_t cap) {
  return q.dis().block_action_kernel(a.blocks(), cap);
}

Congruence orbit_congruence(const QuandleTable& q, const PermGroup& n) {
  if (n.degree() != q.size()) throw std::invalid_argument("degree mismatch");
  std::vector<int> block_of(static_cast<std::size_t>(q.size()), -1);
  int next = 0;
  for (const auto& orb : n.orbits()) {
    for (int x : orb) block_of[static_cast<std::size_t>(x)] = next;
    ++next;
  }
  Congruence c(std::move(block_of));
  q.quotient(c.block_vector(), c.num_blocks());  // throws if not a congruence
  return c;
}

Congruence kernel_congruence(const QuandleTable& q, const PermGroup& n) {
  if (n.degree() != q.size()) throw std::invalid_argument("degree mismatch");
  int sz = q.size();
  std::vector<int> block_of(static_cast<std::size_t>(sz), -1);
  std::vector<int> reps;
  std::vector<Permutation> rep_l;
  for (int x = 0; x < sz; ++x) {
    Permutation lx = q.left_translation(x);
    int found = -1;
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (n.contains(lx.compose(rep_l[r].inverse()))) {
        found = static_cast<int>(r);
        break;
      }
    if (found == -1) {
      found = static_cast<int>(reps.size());
      reps.push_back(x);
      rep_l.push_back(lx);
    }
    block_of[static_cast<std::size_t>(x)] = found;
  }
  Congruence c(std::move(block_of));
  q.quotient(c.block_vector(), c.num_blocks());
  return c;
}

Congruence gamma_congruence(const QuandleTable& q) {
  return orbit_congruence(q, q.dis().derived_subgroup());
}

Congruence zeta_congruence(const QuandleTable& q, std::size_t cap) {
  return orbit_congruence(q, q.dis().center(cap));
}

Congruence sigma_congruence(const QuandleTable& q) {
  auto classes = q.cayley_kernel_classes();
  std::vector<int> block_of(static_cast<std::size_t>(q.size()));
  for (std::size_t b = 0; b < classes.size(); ++b)
    for (int x : classes[b]) block_of[static_cast<std::size_t>(x)] = static_cast<int>(b);
  Congruence c(std::move(block_of));
  q.quotient(c.block_vector(), c.num_blocks());
  return c;
}

bool is_abelian_congruence(const QuandleTable& q, const Congruence& a) {
  return dis_of_congruence(q, a).is_abelian();
}

bool is_central_congruence(const QuandleTable& q, const Congruence& a,
                           std::size_t cap) {
  return a.refines(zeta_congruence(q, cap));
}

std::optional<std::pair<int, int>> direct_decomposition(
    const QuandleTable& q, const CongruenceLattice& lat) {
  long long n = q.size();
  for (std::size_t i = 0; i < lat.elems.size(); ++i) {
    const auto& a = lat.elems[i];
    if (a.is_finest() || a.is_coarsest()) continue;
    for (std::size_t j = i + 1; j < lat.elems.size(); ++j) {
      const auto& b = lat.elems[j];
      if (b.is_finest() || b.is_coarsest()) continue;
      if (!a.meet(b).is_finest()) continue;
      if (static_cast<long long>(a.num_blocks()) * b.num_blocks() == n)
        return std::make_pair(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return std::nullopt;
}

std::string lattice_dot(const QuandleTable& q, const CongruenceLattice& lat) {
  std::ostringstream os;
  os << "digraph congruence_lattice {\n";
  os << "  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < lat.elems.size(); ++i) {
    const auto& c = lat.elems[i];
    os << "  a" << i << " [label=\"a" << i << "  |Q/a|=" << c.num_blocks();
    if (q.size() <= 32 && !c.is_finest() && !c.is_coarsest()) {
      os << "\\n";
      for (const auto& blk : c.blocks()) {
        os << '{';
        for (std::size_t k = 0; k < blk.size(); ++k)
          os << (k ? " " : "") << blk[k];
        os << '}';
      }
    }
    os << "\"];\n";
  }
  for (auto [lo, hi] : lat.cover_pairs())
    os << "  a" << lo << " -> a" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace qlat
