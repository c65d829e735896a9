#include "qlat/group.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qlat {

// ---------------------------------------------------------------------------
// FiniteGroup

std::string FiniteGroup::element_name(int a) const {
  return "g" + std::to_string(a);
}

std::uint64_t FiniteGroup::element_order(int a) const {
  std::uint64_t ord = 1;
  for (int x = a; x != 0; x = mul(x, a)) {
    ++ord;
    if (ord > static_cast<std::uint64_t>(size()) + 1)
      throw std::logic_error("element order exceeds group size");
  }
  return a == 0 ? 1 : ord;
}

bool FiniteGroup::is_abelian() const {
  if (size() <= 2048) {
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }
  auto gens = reduced_group_generators(*this);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (mul(gens[i], gens[j]) != mul(gens[j], gens[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// TableGroup

TableGroup::TableGroup(std::vector<std::vector<int>> table,
                       std::vector<std::string> names, int assoc_check_limit)
    : n_(static_cast<int>(table.size())),
      table_(std::move(table)),
      names_(std::move(names)) {
  if (n_ == 0) throw std::invalid_argument("empty group table");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("group table is not square");
  for (const auto& row : table_)
    for (int v : row)
      if (v < 0 || v >= n_) throw std::invalid_argument("table entry range");
  for (int a = 0; a < n_; ++a)
    if (table_[0][a] != a || table_[a][0] != a)
      throw std::invalid_argument("index 0 is not an identity");
  // Latin property: rows and columns are permutations.
  for (int a = 0; a < n_; ++a) {
    std::vector<bool> row(n_, false), col(n_, false);
    for (int b = 0; b < n_; ++b) {
      if (row[table_[a][b]] || col[table_[b][a]])
        throw std::invalid_argument("group table is not latin");
      row[table_[a][b]] = col[table_[b][a]] = true;
    }
  }
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (table_[a][b] == 0) {
        if (table_[b][a] != 0)
          throw std::invalid_argument("one-sided inverse in group table");
        inv_[a] = b;
      }
  if (n_ <= assoc_check_limit) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw std::invalid_argument("group table is not associative");
  }
  if (!names_.empty() && static_cast<int>(names_.size()) != n_)
    throw std::invalid_argument("name list size mismatch");
}

std::string TableGroup::element_name(int a) const {
  if (!names_.empty()) return names_[static_cast<std::size_t>(a)];
  return FiniteGroup::element_name(a);
}

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup::AbelianGroup(std::vector<int> moduli)
    : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("no moduli");
  long long n = 1;
  for (int m : moduli_) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    n *= m;
    if (n > (1 << 30)) throw capacity_error("abelian group too large");
  }
  n_ = static_cast<int>(n);
}

std::vector<int> AbelianGroup::digits(int a) const {
  std::vector<int> d(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    d[i] = a % moduli_[i];
    a /= moduli_[i];
  }
  return d;
}

int AbelianGroup::index_of(const std::vector<int>& digits) const {
  if (digits.size() != moduli_.size())
    throw std::invalid_argument("digit count mismatch");
  int a = 0;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    int d = ((digits[i] % moduli_[i]) + moduli_[i]) % moduli_[i];
    a = a * moduli_[i] + d;
  }
  return a;
}

int AbelianGroup::mul(int a, int b) const {
  auto da = digits(a), db = digits(b);
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    da[i] = (da[i] + db[i]) % moduli_[i];
  return index_of(da);
}

int AbelianGroup::inv(int a) const {
  auto d = digits(a);
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    d[i] = (moduli_[i] - d[i]) % moduli_[i];
  return index_of(d);
}

std::string AbelianGroup::element_name(int a) const {
  auto d = digits(a);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// SemidirectGroup

SemidirectGroup::SemidirectGroup(int q, int t, GroupPtr k_group,
                                 std::vector<FqMatrix> rho)
    : q_(q), t_(t), k_(std::move(k_group)), rho_(std::move(rho)) {
  if (!k_) throw std::invalid_argument("missing acting group");
  k_size_ = k_->size();
  if (static_cast<int>(rho_.size()) != k_size_)
    throw std::invalid_argument("action size mismatch");
  long long n = 1;
  pow_q_.push_back(1);
  for (int i = 0; i < t_; ++i) {
    n *= q_;
    if (n > (1 << 30)) throw capacity_error("module too large");
    pow_q_.push_back(static_cast<int>(n));
  }
  n *= k_size_;
  if (n > (1 << 30)) throw capacity_error("semidirect product too large");
  n_ = static_cast<int>(n);
  for (const auto& m : rho_)
    if (m.modulus() != q_ || m.rows() != t_ || m.cols() != t_)
      throw std::invalid_argument("action matrix shape mismatch");
  if (!rho_[0].is_identity())
    throw std::invalid_argument("action of identity must be trivial");
  if (k_size_ <= 256) {
    for (int a = 0; a < k_size_; ++a)
      for (int b = 0; b < k_size_; ++b)
        if (!(rho_[static_cast<std::size_t>(k_->mul(a, b))] ==
              rho_[static_cast<std::size_t>(a)].mul(
                  rho_[static_cast<std::size_t>(b)])))
          throw std::invalid_argument("action is not a homomorphism");
  }
}

std::vector<int> SemidirectGroup::vec_of(int a) const {
  int v = a / k_size_;
  std::vector<int> d(static_cast<std::size_t>(t_));
  for (int i = 0; i < t_; ++i) {
    d[static_cast<std::size_t>(i)] = v % q_;
    v /= q_;
  }
  return d;
}

int SemidirectGroup::make(const std::vector<int>& v, int k) const {
  if (static_cast<int>(v.size()) != t_)
    throw std::invalid_argument("vector size mismatch");
  int idx = 0;
  for (int i = t_; i-- > 0;) {
    int d = ((v[static_cast<std::size_t>(i)] % q_) + q_) % q_;
    idx = idx * q_ + d;
  }
  return idx * k_size_ + k;
}

int SemidirectGroup::mul(int a, int b) const {
  int ka = a % k_size_, kb = b % k_size_;
  auto va = vec_of(a);
  auto wb = rho_[static_cast<std::size_t>(ka)].mul_vec(vec_of(b));
  for (int i = 0; i < t_; ++i)
    va[static_cast<std::size_t>(i)] =
        (va[static_cast<std::size_t>(i)] + wb[static_cast<std::size_t>(i)]) % q_;
  return make(va, k_->mul(ka, kb));
}

int SemidirectGroup::inv(int a) const {
  int ka = a % k_size_;
  int ki = k_->inv(ka);
  auto w = rho_[static_cast<std::size_t>(ki)].mul_vec(vec_of(a));
  for (auto& x : w) x = (q_ - x) % q_;
  return make(w, ki);
}

std::string SemidirectGroup::element_name(int a) const {
  auto v = vec_of(a);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ';' << k_->element_name(k_of(a)) << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// DirectProductGroup

DirectProductGroup::DirectProductGroup(GroupPtr a, GroupPtr b)
    : a_(std::move(a)), b_(std::move(b)) {
  b_size_ = b_->size();
  long long n = static_cast<long long>(a_->size()) * b_size_;
  if (n > (1 << 30)) throw capacity_error("direct product too large");
  n_ = static_cast<int>(n);
}

int DirectProductGroup::mul(int x, int y) const {
  return make(a_->mul(left_of(x), left_of(y)), b_->mul(right_of(x), right_of(y)));
}

int DirectProductGroup::inv(int x) const {
  return make(a_->inv(left_of(x)), b_->inv(right_of(x)));
}

std::string DirectProductGroup::element_name(int x) const {
  return a_->element_name(left_of(x)) + "*" + b_->element_name(right_of(x));
}

// ---------------------------------------------------------------------------
// GroupMap

GroupMap::GroupMap(GroupPtr domain, GroupPtr codomain, std::vector<int> images)
    : dom_(std::move(domain)), cod_(std::move(codomain)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != dom_->size())
    throw std::invalid_argument("image list size mismatch");
  for (int v : images_)
    if (v < 0 || v >= cod_->size())
      throw std::invalid_argument("image out of range");
}

GroupMap GroupMap::compose(const GroupMap& inner) const {
  if (inner.cod_->size() != dom_->size())
    throw std::invalid_argument("composition size mismatch");
  std::vector<int> img(inner.images_.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = images_[static_cast<std::size_t>(inner.images_[i])];
  return GroupMap(inner.dom_, cod_, std::move(img));
}

GroupMap GroupMap::pow(std::uint64_t k) const {
  if (dom_->size() != cod_->size())
    throw std::invalid_argument("pow needs an endomorphism");
  std::vector<int> acc(images_.size());
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<int>(i);
  GroupMap result(dom_, cod_, std::move(acc));
  GroupMap base = *this;
  while (k > 0) {
    if (k & 1) result = base.compose(result);
    base = base.compose(base);
    k >>= 1;
  }
  return result;
}

bool GroupMap::verify_homomorphism() const {
  for (int a = 0; a < dom_->size(); ++a)
    for (int b = 0; b < dom_->size(); ++b)
      if (images_[static_cast<std::size_t>(dom_->mul(a, b))] !=
          cod_->mul(images_[static_cast<std::size_t>(a)],
                    images_[static_cast<std::size_t>(b)]))
        return false;
  return true;
}

bool GroupMap::is_bijective() const {
  if (dom_->size() != cod_->size()) return false;
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

bool GroupMap::is_identity_map() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> GroupMap::kernel_elements() const {
  std::vector<int> ker;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] == 0) ker.push_back(static_cast<int>(i));
  return ker;
}

std::vector<int> GroupMap::fixed_elements() const {
  std::vector<int> fix;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] == static_cast<int>(i)) fix.push_back(static_cast<int>(i));
  return fix;
}

std::uint64_t GroupMap::map_order(std::uint64_t cap) const {
  GroupMap acc = *this;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (acc.is_identity_map()) return k;
    acc = compose(acc);
  }
  throw capacity_error("map order exceeds cap");
}

// ---------------------------------------------------------------------------
// extend_map

std::optional<GroupMap> extend_map(GroupPtr domain, const std::vector<int>& gens,
                                   GroupPtr codomain,
                                   const std::vector<int>& images) {
  if (gens.size() != images.size())
    throw std::invalid_argument("generator/image count mismatch");
  const FiniteGroup& g = *domain;
  const FiniteGroup& h = *codomain;
  std::vector<int> img(static_cast<std::size_t>(g.size()), -1);
  img[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int a = queue[qi];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      int b = g.mul(a, gens[s]);
      int bi = h.mul(img[static_cast<std::size_t>(a)], images[s]);
      if (img[static_cast<std::size_t>(b)] == -1) {
        img[static_cast<std::size_t>(b)] = bi;
        queue.push_back(b);
      } else if (img[static_cast<std::size_t>(b)] != bi) {
        return std::nullopt;
      }
    }
  }
  for (int v : img)
    if (v == -1)
      throw std::invalid_argument("generators do not generate the domain");
  // Edge check over all (element, generator) pairs: together with img[0]=0
  // this proves multiplicativity for arbitrary pairs by word induction.
  for (int a = 0; a < g.size(); ++a)
    for (std::size_t s = 0; s < gens.size(); ++s)
      if (img[static_cast<std::size_t>(g.mul(a, gens[s]))] !=
          h.mul(img[static_cast<std::size_t>(a)], images[s]))
        return std::nullopt;
  return GroupMap(domain, codomain, std::move(img));
}

// ---------------------------------------------------------------------------
// realize_presentation

namespace {

int eval_word(const FiniteGroup& h, const Word& w, const std::vector<int>& gens) {
  int acc = 0;
  for (int e : w) {
    int x = e > 0 ? gens[static_cast<std::size_t>(e - 1)]
                  : h.inv(gens[static_cast<std::size_t>(-e - 1)]);
    acc = h.mul(acc, x);
  }
  return acc;
}

}  // namespace

std::vector<std::vector<int>> realize_presentation(
    const FiniteGroup& h, int num_gens, const std::vector<Word>& relators,
    std::size_t max_solutions, bool require_generate) {
  // Bucket the relators by the last generator they mention so each is
  // checked as soon as its generators are assigned.
  std::vector<std::vector<const Word*>> bucket(
      static_cast<std::size_t>(num_gens));
  for (const auto& w : relators) {
    int maxg = -1;
    for (int e : w) {
      int idx = (e > 0 ? e : -e) - 1;
      if (e == 0 || idx >= num_gens)
        throw std::invalid_argument("relator mentions a bad generator");
      maxg = std::max(maxg, idx);
    }
    if (maxg < 0) continue;  // empty relator is trivially satisfied
    bucket[static_cast<std::size_t>(maxg)].push_back(&w);
  }

  std::vector<std::vector<int>> solutions;
  std::vector<int> assign(static_cast<std::size_t>(num_gens), 0);
  auto dfs = [&](auto&& self, int depth) -> void {
    if (solutions.size() >= max_solutions) return;
    if (depth == num_gens) {
      if (require_generate &&
          static_cast<int>(closure(h, assign).size()) != h.size())
        return;
      solutions.push_back(assign);
      return;
    }
    for (int c = 0; c < h.size(); ++c) {
      assign[static_cast<std::size_t>(depth)] = c;
      bool ok = true;
      for (const Word* w : bucket[static_cast<std::size_t>(depth)])
        if (eval_word(h, *w, assign) != 0) { ok = false; break; }
      if (ok) self(self, depth + 1);
      if (solutions.size() >= max_solutions) return;
    }
  };
  dfs(dfs, 0);
  return solutions;
}

// ---------------------------------------------------------------------------
// Subgroup utilities

std::vector<int> closure(const FiniteGroup& g, const std::vector<int>& seeds) {
  std::vector<bool> in(static_cast<std::size_t>(g.size()), false);
  std::vector<int> queue{0};
  in[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (int s : seeds) {
      int b = g.mul(queue[qi], s);
      if (!in[static_cast<std::size_t>(b)]) {
        in[static_cast<std::size_t>(b)] = true;
        queue.push_back(b);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h) {
  std::vector<bool> in(static_cast<std::size_t>(g.size()), false);
  for (int x : h) in[static_cast<std::size_t>(x)] = true;
  if (h.empty() || !in[0]) return false;
  for (int a : h)
    for (int b : h)
      if (!in[static_cast<std::size_t>(g.mul(a, b))]) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& h) {
  if (!is_subgroup(g, h)) return false;
  if (static_cast<long long>(g.size()) * static_cast<long long>(h.size()) >
      50000000LL)
    throw capacity_error("normality check too large");
  std::vector<bool> in(static_cast<std::size_t>(g.size()), false);
  for (int x : h) in[static_cast<std::size_t>(x)] = true;
  auto gens = reduced_group_generators(g);
  for (int a : gens)
    for (int x : h)
      if (!in[static_cast<std::size_t>(g.conj(a, x))]) return false;
  return true;
}

std::vector<int> center_elements(const FiniteGroup& g) {
  auto gens = reduced_group_generators(g);
  std::vector<int> z;
  for (int a = 0; a < g.size(); ++a) {
    bool central = true;
    for (int s : gens)
      if (g.mul(a, s) != g.mul(s, a)) { central = false; break; }
    if (central) z.push_back(a);
  }
  return z;
}

std::vector<int> commutator_subgroup_elements(const FiniteGroup& g) {
  auto gens = reduced_group_generators(g);
  std::vector<int> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (i != j) seeds.push_back(g.commutator(gens[i], gens[j]));
  std::vector<int> sub = closure(g, seeds);
  // Close under conjugation by the generators until stable.
  for (;;) {
    std::vector<bool> in(static_cast<std::size_t>(g.size()), false);
    for (int x : sub) in[static_cast<std::size_t>(x)] = true;
    std::vector<int> extra;
    for (int s : gens)
      for (int x : sub) {
        int c = g.conj(s, x);
        if (!in[static_cast<std::size_t>(c)]) extra.push_back(c);
      }
    if (extra.empty()) break;
    for (int x : sub) extra.push_back(x);
    sub = closure(g, extra);
  }
  return sub;
}

std::vector<int> reduced_group_generators(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<bool> in(static_cast<std::size_t>(g.size()), false);
  in[0] = true;
  std::size_t covered = 1;
  std::vector<int> queue{0};
  while (covered < static_cast<std::size_t>(g.size())) {
    int next = -1;
    for (int a = 0; a < g.size(); ++a)
      if (!in[static_cast<std::size_t>(a)]) { next = a; break; }
    gens.push_back(next);
    // Grow the closure with the new generator.
    in[static_cast<std::size_t>(next)] = true;
    queue.push_back(next);
    ++covered;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (int s : gens) {
        int b = g.mul(queue[qi], s);
        if (!in[static_cast<std::size_t>(b)]) {
          in[static_cast<std::size_t>(b)] = true;
          queue.push_back(b);
          ++covered;
        }
      }
  }
  return gens;
}

std::pair<std::shared_ptr<TableGroup>, GroupMap> quotient_group(
    GroupPtr g, const std::vector<int>& normal_elements) {
  if (!is_normal(*g, normal_elements))
    throw std::invalid_argument("quotient needs a normal subgroup");
  std::vector<int> coset_of(static_cast<std::size_t>(g->size()), -1);
  std::vector<int> reps;
  for (int a = 0; a < g->size(); ++a) {
    if (coset_of[static_cast<std::size_t>(a)] != -1) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int h : normal_elements)
      coset_of[static_cast<std::size_t>(g->mul(a, h))] = id;
  }
  int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(static_cast<std::size_t>(m),
                                      std::vector<int>(static_cast<std::size_t>(m)));
  std::vector<std::string> names(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    names[static_cast<std::size_t>(i)] = g->element_name(reps[i]) + "N";
    for (int j = 0; j < m; ++j)
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          coset_of[static_cast<std::size_t>(g->mul(reps[i], reps[j]))];
  }
  auto q = std::make_shared<TableGroup>(std::move(table), std::move(names));
  GroupMap proj(g, q, std::move(coset_of));
  return {q, proj};
}

// ---------------------------------------------------------------------------
// Bridges

PermGroup regular_representation(const FiniteGroup& g) {
  if (g.size() > 65535) throw capacity_error("group too large for permutations");
  std::vector<Permutation> gens;
  for (int s : reduced_group_generators(g)) {
    std::vector<int> img(static_cast<std::size_t>(g.size()));
    for (int a = 0; a < g.size(); ++a)
      img[static_cast<std::size_t>(a)] = g.mul(s, a);
    gens.push_back(Permutation::from_images(img));
  }
  return PermGroup(g.size(), gens);
}

std::shared_ptr<TableGroup> table_from_perm_group(const PermGroup& g,
                                                  std::size_t cap) {
  auto elems = g.elements(cap);
  std::unordered_map<Permutation, int, PermHash> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i], static_cast<int>(i));
  int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          index.at(elems[static_cast<std::size_t>(i)].compose(
              elems[static_cast<std::size_t>(j)]));
  std::vector<std::string> names;
  for (const auto& e : elems) names.push_back(e.str());
  return std::make_shared<TableGroup>(std::move(table), std::move(names));
}

// ---------------------------------------------------------------------------
// small_group_iso

std::optional<GroupMap> small_group_iso(GroupPtr a, GroupPtr b) {
  if (a->size() != b->size()) return std::nullopt;
  int n = a->size();
  std::vector<std::uint64_t> ord_a(static_cast<std::size_t>(n)),
      ord_b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ord_a[static_cast<std::size_t>(i)] = a->element_order(i);
    ord_b[static_cast<std::size_t>(i)] = b->element_order(i);
  }
  {
    auto sa = ord_a, sb = ord_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  if (a->is_abelian() != b->is_abelian()) return std::nullopt;

  // Greedy generators of a, largest order first to keep branching low.
  std::vector<int> gens;
  std::vector<int> cl{0};
  std::vector<std::size_t> closure_sizes;
  while (static_cast<int>(cl.size()) < n) {
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int x : cl) in[static_cast<std::size_t>(x)] = true;
    int best = -1;
    for (int x = 0; x < n; ++x)
      if (!in[static_cast<std::size_t>(x)] &&
          (best == -1 || ord_a[static_cast<std::size_t>(x)] >
                             ord_a[static_cast<std::size_t>(best)]))
        best = x;
    gens.push_back(best);
    cl = closure(*a, gens);
    closure_sizes.push_back(cl.size());
  }

  std::vector<int> images(gens.size(), 0);
  std::optional<GroupMap> found;
  auto dfs = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gens.size()) {
      std::vector<int> sub(gens.begin(), gens.end());
      auto map = extend_map(a, sub, b, images);
      if (map && map->is_bijective()) {
        found = std::move(*map);
        return true;
      }
      return false;
    }
    for (int c = 0; c < n; ++c) {
      if (ord_b[static_cast<std::size_t>(c)] !=
          ord_a[static_cast<std::size_t>(gens[depth])])
        continue;
      images[depth] = c;
      std::vector<int> partial(images.begin(),
                               images.begin() + static_cast<long>(depth) + 1);
      if (closure(*b, partial).size() != closure_sizes[depth]) continue;
      if (self(self, depth + 1)) return true;
    }
    return false;
  };
  dfs(dfs, 0);
  return found;
}

}  // namespace qlat
