#include "qlat/quandle.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qlat {

QuandleTable::QuandleTable(std::vector<std::vector<int>> table,
                           int distributivity_check_limit)
    : n_(static_cast<int>(table.size())), table_(std::move(table)) {
  if (n_ == 0) throw std::invalid_argument("empty quandle table");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("quandle table is not square");
  unrow_.assign(static_cast<std::size_t>(n_),
                std::vector<int>(static_cast<std::size_t>(n_), -1));
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      int v = table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (v < 0 || v >= n_)
        throw std::invalid_argument("quandle entry out of range");
      if (unrow_[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] != -1)
        throw std::invalid_argument("row is not a bijection");
      unrow_[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] = y;
    }
    if (table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] != x)
      throw std::invalid_argument("operation is not idempotent");
  }
  if (n_ <= distributivity_check_limit && !is_left_distributive())
    throw std::invalid_argument("operation is not left distributive");
}

Permutation QuandleTable::left_translation(int x) const {
  return Permutation::from_images(table_[static_cast<std::size_t>(x)]);
}

bool QuandleTable::is_left_distributive() const {
  for (int x = 0; x < n_; ++x) {
    const auto& lx = table_[static_cast<std::size_t>(x)];
    for (int y = 0; y < n_; ++y) {
      int xy = lx[static_cast<std::size_t>(y)];
      const auto& ly = table_[static_cast<std::size_t>(y)];
      const auto& lxy = table_[static_cast<std::size_t>(xy)];
      for (int z = 0; z < n_; ++z)
        if (lx[static_cast<std::size_t>(ly[static_cast<std::size_t>(z)])] !=
            lxy[static_cast<std::size_t>(lx[static_cast<std::size_t>(z)])])
          return false;
    }
  }
  return true;
}

bool QuandleTable::is_latin() const {
  std::vector<bool> seen;
  for (int y = 0; y < n_; ++y) {
    seen.assign(static_cast<std::size_t>(n_), false);
    for (int x = 0; x < n_; ++x) {
      int v = table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  return true;
}

bool QuandleTable::is_faithful() const {
  std::map<std::vector<int>, int> rows;
  for (int x = 0; x < n_; ++x)
    if (!rows.emplace(table_[static_cast<std::size_t>(x)], x).second)
      return false;
  return true;
}

bool QuandleTable::is_connected() const { return lmlt().is_transitive(); }

PermGroup QuandleTable::lmlt() const {
  std::vector<Permutation> gens;
  for (int x = 0; x < n_; ++x) gens.push_back(left_translation(x));
  return PermGroup(n_, gens);
}

PermGroup QuandleTable::dis() const {
  Permutation l0inv = left_translation(0).inverse();
  std::vector<Permutation> gens;
  for (int x = 1; x < n_; ++x)
    gens.push_back(left_translation(x).compose(l0inv));
  return PermGroup(n_, gens);
}

std::vector<std::vector<int>> QuandleTable::cayley_kernel_classes() const {
  std::map<std::vector<int>, std::vector<int>> classes;
  for (int x = 0; x < n_; ++x)
    classes[table_[static_cast<std::size_t>(x)]].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [row, cls] : classes) out.push_back(cls);
  std::sort(out.begin(), out.end());
  return out;
}

QuandleTable QuandleTable::quotient(const std::vector<int>& block_of,
                                    int num_blocks) const {
  if (static_cast<int>(block_of.size()) != n_)
    throw std::invalid_argument("block assignment size mismatch");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(num_blocks),
                                  std::vector<int>(static_cast<std::size_t>(num_blocks), -1));
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) {
      int bx = block_of[static_cast<std::size_t>(x)];
      int by = block_of[static_cast<std::size_t>(y)];
      int bv = block_of[static_cast<std::size_t>(
          table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])];
      int& cell = t[static_cast<std::size_t>(bx)][static_cast<std::size_t>(by)];
      if (cell == -1) cell = bv;
      else if (cell != bv)
        throw std::invalid_argument("partition is not a congruence");
    }
  return QuandleTable(std::move(t));
}

bool QuandleTable::is_solvable() const { return dis().is_solvable(); }
bool QuandleTable::is_nilpotent() const { return dis().is_nilpotent(); }

std::string QuandleTable::serialize() const {
  std::ostringstream os;
  os << "quandle " << n_ << '\n';
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y)
      os << (y ? " " : "")
         << table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    os << '\n';
  }
  return os.str();
}

QuandleTable QuandleTable::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  // Comment lines are only allowed before the header.
  for (;;) {
    if (!std::getline(is, line))
      throw std::invalid_argument("missing quandle header");
    if (!line.empty() && line[0] == '#') continue;
    break;
  }
  std::istringstream header(line);
  std::string tag;
  int n = 0;
  header >> tag >> n;
  if (tag != "quandle" || n <= 0)
    throw std::invalid_argument("bad quandle header");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x) {
    if (!std::getline(is, line))
      throw std::invalid_argument("truncated quandle table");
    std::istringstream row(line);
    for (int y = 0; y < n; ++y)
      if (!(row >> t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]))
        throw std::invalid_argument("truncated quandle row");
  }
  return QuandleTable(std::move(t));
}

std::uint64_t QuandleTable::hash_key() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n_);
  for (const auto& row : table_)
    for (int v : row) hash_mix(h, static_cast<std::uint64_t>(v));
  return h;
}

QuandleTable affine_quandle(const FiniteGroup& a, const GroupMap& f) {
  if (!a.is_abelian()) throw std::invalid_argument("carrier must be abelian");
  if (f.domain()->size() != a.size() || f.codomain()->size() != a.size())
    throw std::invalid_argument("endomorphism size mismatch");
  int n = a.size();
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x) {
    int base = a.mul(x, a.inv(f(x)));  // x - f(x)
    for (int y = 0; y < n; ++y)
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a.mul(base, f(y));
  }
  return QuandleTable(std::move(t));
}

QuandleTable affine_cyclic(int m, int c) {
  auto zm = std::make_shared<AbelianGroup>(std::vector<int>{m});
  std::vector<int> img(static_cast<std::size_t>(m));
  for (int x = 0; x < m; ++x)
    img[static_cast<std::size_t>(x)] = static_cast<int>(
        (static_cast<long long>(x) * ((c % m + m) % m)) % m);
  return affine_quandle(*zm, GroupMap(zm, zm, img));
}

CosetQuandle coset_quandle(const FiniteGroup& g, const GroupMap& f,
                           const std::vector<int>& h_elements) {
  if (f.domain()->size() != g.size() || f.codomain()->size() != g.size())
    throw std::invalid_argument("automorphism size mismatch");
  if (!f.is_bijective())
    throw std::invalid_argument("coset quandle needs an automorphism");
  if (!is_subgroup(g, h_elements))
    throw std::invalid_argument("fixed set is not a subgroup");
  for (int h : h_elements)
    if (f(h) != h)
      throw std::invalid_argument("subgroup not fixed by the automorphism");

  std::vector<int> coset_of(static_cast<std::size_t>(g.size()), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.size(); ++x) {
    if (coset_of[static_cast<std::size_t>(x)] != -1) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int h : h_elements)
      coset_of[static_cast<std::size_t>(g.mul(x, h))] = id;
  }
  int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m),
                                  std::vector<int>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) {
    int x = reps[static_cast<std::size_t>(i)];
    int xinv = g.inv(x);
    for (int j = 0; j < m; ++j) {
      int y = reps[static_cast<std::size_t>(j)];
      int z = g.mul(x, f(g.mul(xinv, y)));
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          coset_of[static_cast<std::size_t>(z)];
    }
  }
  return CosetQuandle{QuandleTable(std::move(t)), std::move(coset_of),
                      std::move(reps)};
}

QuandleTable direct_product(const QuandleTable& a, const QuandleTable& b) {
  int na = a.size(), nb = b.size();
  long long n = static_cast<long long>(na) * nb;
  if (n > 65535) throw capacity_error("product quandle too large");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb);
  return QuandleTable(std::move(t));
}

}  // namespace qlat
