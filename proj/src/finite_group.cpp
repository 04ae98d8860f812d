#include "eqdeg/finite_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <regex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "eqdeg/errors.hpp"

namespace eqdeg {

FiniteGroup::FiniteGroup(int order, std::vector<int> mul, std::vector<std::string> names,
                         std::vector<int> generators, GroupShape shape)
    : order_(order),
      mul_(std::move(mul)),
      inv_(order, -1),
      names_(std::move(names)),
      generators_(std::move(generators)),
      shape_(shape) {
  if (order < 1 || order > kMaxOrder) throw InvalidParameter("finite-group", "group order out of range");
  if (static_cast<int>(mul_.size()) != order * order || static_cast<int>(names_.size()) != order)
    throw InvalidParameter("finite-group", "table size does not match the order");
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (mul_[a * order + b] == 0) inv_[a] = b;
  for (int a = 0; a < order; ++a)
    if (inv_[a] < 0) throw InvalidParameter("finite-group", "element without inverse");
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::optional<int> FiniteGroup::find(const std::string& element_name) const {
  for (int a = 0; a < order_; ++a)
    if (names_[a] == element_name) return a;
  return std::nullopt;
}

bool FiniteGroup::verify() const {
  for (int a = 0; a < order_; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) return false;
    if (mul(a, inv_[a]) != 0 || mul(inv_[a], a) != 0) return false;
  }
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) {
      int ab = mul(a, b);
      for (int c = 0; c < order_; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
    }
  return true;
}

std::vector<int> Subgroup::elements() const {
  std::vector<int> out;
  for (std::size_t i = members._Find_first(); i < members.size(); i = members._Find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

GroupPtr build_trivial() {
  return std::make_shared<FiniteGroup>(1, std::vector<int>{0}, std::vector<std::string>{"e"},
                                       std::vector<int>{}, GroupShape{GroupKind::Trivial, 1});
}

GroupPtr build_cyclic(int n) {
  if (n < 1) throw InvalidParameter("finite-group", "cyclic order must be positive");
  if (n == 1) return build_trivial();
  std::vector<int> mul(n * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
    names[a] = a == 0 ? "e" : a == 1 ? "c" : "c^" + std::to_string(a);
  }
  return std::make_shared<FiniteGroup>(n, std::move(mul), std::move(names), std::vector<int>{1},
                                       GroupShape{GroupKind::Cyclic, n});
}

GroupPtr build_dihedral(int N) {
  if (N < 1) throw InvalidParameter("finite-group", "dihedral order N must be at least 1");
  if (2 * N > kMaxOrder) throw InvalidParameter("finite-group", "dihedral order too large");
  int n = 2 * N;
  std::vector<int> mul(n * n);
  std::vector<std::string> names(n);
  // id k: gamma^k, id N+k: kappa gamma^k
  for (int x = 0; x < n; ++x) {
    int a = x / N, i = x % N;
    for (int y = 0; y < n; ++y) {
      int b = y / N, j = y % N;
      int rot = ((b ? -i : i) + j) % N;
      if (rot < 0) rot += N;
      mul[x * n + y] = ((a + b) % 2) * N + rot;
    }
    std::string r = i == 0 ? "" : i == 1 ? "g" : "g^" + std::to_string(i);
    names[x] = a ? "k" + r : (i == 0 ? "e" : r);
  }
  std::vector<int> gens;
  if (N > 1) gens.push_back(1);
  gens.push_back(N);
  return std::make_shared<FiniteGroup>(n, std::move(mul), std::move(names), std::move(gens),
                                       GroupShape{GroupKind::Dihedral, N});
}

GroupPtr adjoin_z2(const GroupPtr& g) {
  int m = g->order();
  int n = 2 * m;
  if (n > kMaxOrder) throw InvalidParameter("finite-group", "group too large to extend");
  std::vector<int> mul(n * n);
  std::vector<std::string> names(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) mul[x * n + y] = g->mul(x % m, y % m) + m * ((x / m + y / m) % 2);
    names[x] = "(" + g->name(x % m) + "," + (x < m ? "1" : "-1") + ")";
  }
  std::vector<int> gens = g->generators();
  gens.push_back(m);
  GroupShape shape;
  if (g->shape().kind == GroupKind::Dihedral) shape = {GroupKind::DihedralZ2, g->shape().n};
  else if (g->shape().kind == GroupKind::Trivial) shape = {GroupKind::Cyclic, 2};
  return std::make_shared<FiniteGroup>(n, std::move(mul), std::move(names), std::move(gens), shape);
}

GroupPtr parse_group(const std::string& spec) {
  static const std::regex re(R"(^\s*([DZ])(\d+)\s*(?:[xX]\s*Z2)?\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw InvalidParameter("finite-group", "unrecognised group '" + spec + "'");
  int n = std::stoi(m[2]);
  if (n < 1) throw InvalidParameter("finite-group", "group index must be positive");
  bool z2 = spec.find_first_of("xX") != std::string::npos;
  GroupPtr g = m[1] == "D" ? build_dihedral(n) : build_cyclic(n);
  return z2 ? adjoin_z2(g) : g;
}

ElementSet generate(const FiniteGroup& g, const ElementSet& seeds) {
  ElementSet out;
  out.set(0);
  std::vector<int> gens;
  for (int i = 0; i < g.order(); ++i)
    if (seeds.test(i)) gens.push_back(i);
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int s : gens) {
        int y = g.mul(x, s);
        if (!out.test(y)) {
          out.set(y);
          next.push_back(y);
        }
      }
    frontier.swap(next);
  }
  return out;
}

ElementSet conjugate_set(const FiniteGroup& g, const ElementSet& s, int by) {
  ElementSet out;
  for (int x = 0; x < g.order(); ++x)
    if (s.test(x)) out.set(g.conj(by, x));
  return out;
}

bool is_subgroup(const FiniteGroup& g, const ElementSet& s) {
  if (!s.test(0)) return false;
  for (int a = 0; a < g.order(); ++a) {
    if (!s.test(a)) continue;
    if (!s.test(g.inv(a))) return false;
    for (int b = 0; b < g.order(); ++b)
      if (s.test(b) && !s.test(g.mul(a, b))) return false;
  }
  return true;
}

bool set_less(const ElementSet& a, const ElementSet& b) {
  ElementSet d = a ^ b;
  if (d.none()) return false;
  std::size_t i = d._Find_first();
  // The set holding i has the smaller entry at that position, unless the other list ended.
  if (a.test(i)) return (b >> i).any();
  return !(a >> i).any();
}

namespace {

// Rotation count and tilde flag of a subset of D_N given by element ids < 2N.
struct DihedralPart {
  int rotations = 0;
  bool reflections = false;
  bool tilde = false;
};

DihedralPart analyse(int N, const std::vector<int>& xs) {
  DihedralPart p;
  std::set<int> seen(xs.begin(), xs.end());
  bool all_odd = true;
  for (int x : seen) {
    if (x < N) {
      ++p.rotations;
    } else {
      p.reflections = true;
      if ((x - N) % 2 == 0) all_odd = false;
    }
  }
  p.tilde = p.reflections && N % 2 == 0 && (N / p.rotations) % 2 == 0 && all_odd;
  return p;
}

std::string base_name(const DihedralPart& p) {
  return (p.reflections ? "D" : "Z") + std::to_string(p.rotations);
}

}  // namespace

std::string subgroup_name(const FiniteGroup& g, const ElementSet& s) {
  const GroupShape& sh = g.shape();
  int order = static_cast<int>(s.count());
  switch (sh.kind) {
    case GroupKind::Trivial:
      return "Z1";
    case GroupKind::Cyclic:
      return "Z" + std::to_string(order);
    case GroupKind::Dihedral: {
      std::vector<int> xs;
      for (int x = 0; x < g.order(); ++x)
        if (s.test(x)) xs.push_back(x);
      DihedralPart p = analyse(sh.n, xs);
      return base_name(p) + (p.tilde ? "t" : "");
    }
    case GroupKind::DihedralZ2: {
      int N = sh.n, m = 2 * N;
      std::vector<int> proj, kernel;
      bool minus = false;
      for (int x = 0; x < g.order(); ++x) {
        if (!s.test(x)) continue;
        proj.push_back(x % m);
        if (x < m) kernel.push_back(x);
        if (x >= m) minus = true;
      }
      DihedralPart k = analyse(N, proj);
      std::string base = base_name(k);
      if (!minus) return base + (k.tilde ? "t" : "");
      if (s.test(m)) return base + "p" + (k.tilde ? "t" : "");
      DihedralPart l = analyse(N, kernel);
      if (!k.reflections) return k.rotations == 2 ? "Z1m" : base + "d";
      if (!l.reflections) return base + "z" + (k.tilde ? "t" : "");
      return base + "d" + ((k.tilde || l.tilde) ? "t" : "");
    }
    case GroupKind::Other:
      break;
  }
  return "S" + std::to_string(order);
}

std::string literal_name(const std::string& class_name) {
  if (class_name == "Z1m") return "Z2m";
  std::string base = class_name, tail;
  auto hash = base.find('#');
  if (hash != std::string::npos) {
    tail = base.substr(hash);
    base = base.substr(0, hash);
  }
  if (base.size() > 1 && base.back() == 't') return "t" + base.substr(0, base.size() - 1) + tail;
  return class_name;
}

SubgroupLattice::SubgroupLattice(GroupPtr g) : g_(std::move(g)) {
  const FiniteGroup& G = *g_;
  std::unordered_set<ElementSet> seen;
  ElementSet trivial;
  trivial.set(0);
  std::vector<ElementSet> queue{trivial};
  seen.insert(trivial);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    ElementSet cur = queue[q];
    for (int x = 0; x < G.order(); ++x) {
      if (cur.test(x)) continue;
      ElementSet seeds = cur;
      seeds.set(x);
      ElementSet next = generate(G, seeds);
      // order divisibility holds by Lagrange; skip revisits
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  subgroups_ = std::move(queue);

  std::unordered_map<ElementSet, int> canon_index;
  std::vector<ElementSet> canon;
  std::vector<int> raw_class(subgroups_.size());
  for (std::size_t i = 0; i < subgroups_.size(); ++i) {
    ElementSet best = subgroups_[i];
    for (int y = 0; y < G.order(); ++y) {
      ElementSet c = conjugate_set(G, subgroups_[i], y);
      if (set_less(c, best)) best = c;
    }
    auto [it, inserted] = canon_index.emplace(best, static_cast<int>(canon.size()));
    if (inserted) canon.push_back(best);
    raw_class[i] = it->second;
  }
  std::vector<int> order(canon.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    std::size_t ca = canon[a].count(), cb = canon[b].count();
    if (ca != cb) return ca < cb;
    return set_less(canon[a], canon[b]);
  });
  std::vector<int> rank(canon.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);

  classes_.resize(canon.size());
  members_.resize(canon.size());
  class_index_.resize(subgroups_.size());
  for (std::size_t i = 0; i < subgroups_.size(); ++i) {
    int c = rank[raw_class[i]];
    class_index_[i] = c;
    members_[c].push_back(subgroups_[i]);
  }
  std::map<std::string, std::vector<int>> by_name;
  for (std::size_t c = 0; c < canon.size(); ++c) {
    auto& cls = classes_[c];
    cls.representative = Subgroup{g_, canon[order[c]]};
    cls.class_size = static_cast<int>(members_[c].size());
    std::sort(members_[c].begin(), members_[c].end(), set_less);
    cls.name = subgroup_name(G, cls.representative.members);
    by_name[cls.name].push_back(static_cast<int>(c));
  }
  for (auto& [name, ids] : by_name) {
    if (ids.size() < 2) continue;
    for (std::size_t i = 0; i < ids.size(); ++i) classes_[ids[i]].name = name + "#" + std::to_string(i + 1);
  }
}

int SubgroupLattice::class_of(const ElementSet& s) const {
  for (std::size_t i = 0; i < subgroups_.size(); ++i)
    if (subgroups_[i] == s) return class_index_[i];
  throw InvalidParameter("finite-group", "set is not a subgroup");
}

int SubgroupLattice::weyl_order(int c) const {
  const auto& cls = classes_.at(c);
  return g_->order() / (cls.class_size * cls.representative.order());
}

int SubgroupLattice::n_count(const ElementSet& h, int k_class) const {
  int count = 0;
  for (const auto& k : members_.at(k_class))
    if ((h & ~k).none()) ++count;
  return count;
}

std::optional<int> SubgroupLattice::find_class(const std::string& name) const {
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].name == name || literal_name(classes_[c].name) == name) return static_cast<int>(c);
  return std::nullopt;
}

std::shared_ptr<const SubgroupLattice> subgroup_lattice(const GroupPtr& g) {
  // keyed by the group object; groups are immutable once shared
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::pair<GroupPtr, std::shared_ptr<const SubgroupLattice>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g.get());
    if (it != cache.end()) return it->second.second;
  }
  auto lat = std::make_shared<const SubgroupLattice>(g);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(g.get(), std::make_pair(g, lat));
  return it->second.second;
}

nlohmann::json classes_to_json(const std::vector<SubgroupConjugacyClass>& classes) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : classes) {
    nlohmann::json rep = nlohmann::json::array();
    for (int x : c.representative.elements()) rep.push_back(c.representative.parent->name(x));
    out.push_back({{"name", c.name},
                   {"order", c.representative.order()},
                   {"class_size", c.class_size},
                   {"representative", rep}});
  }
  return out;
}

std::vector<SubgroupConjugacyClass> subgroup_conjugacy_classes(const GroupPtr& g) {
  return subgroup_lattice(g)->classes();
}

int weyl_order(const GroupPtr& g, const Subgroup& h) {
  if (!is_subgroup(*g, h.members)) throw InvalidParameter("finite-group", "not a subgroup");
  int normalizer = 0;
  for (int y = 0; y < g->order(); ++y)
    if (conjugate_set(*g, h.members, y) == h.members) ++normalizer;
  return normalizer / h.order();
}

int n_count(const GroupPtr& g, const Subgroup& h, const SubgroupConjugacyClass& k_class) {
  if (!is_subgroup(*g, h.members)) throw InvalidParameter("finite-group", "not a subgroup");
  std::unordered_set<ElementSet> conjugates;
  for (int y = 0; y < g->order(); ++y) conjugates.insert(conjugate_set(*g, k_class.representative.members, y));
  int count = 0;
  for (const auto& k : conjugates)
    if ((h.members & ~k).none()) ++count;
  return count;
}

// ---- characters of D_N ----

int dihedral_act(int N, int element, int i) {
  int k = element % N;
  int r = ((i + k) % N + N) % N;
  return element < N ? r : (N - r) % N;
}

std::vector<int> dihedral_irrep_codes(int N) {
  std::vector<int> codes;
  for (int j = 0; 2 * j < N; ++j) codes.push_back(j);
  if (N % 2 == 0) codes.push_back(N / 2);
  codes.push_back(kStar);
  if (N % 2 == 0) codes.push_back(kDoubleStar);
  return codes;
}

int dihedral_irrep_dim(int N, int code) {
  if (code == kStar || code == kDoubleStar || code == 0) return 1;
  if (N % 2 == 0 && code == N / 2) return 1;
  if (code < 0 || 2 * code > N) throw InvalidParameter("finite-group", "irreducible index out of range");
  return 2;
}

std::string dihedral_irrep_label(int N, int code) {
  (void)N;
  if (code == kStar) return "chi_*";
  if (code == kDoubleStar) return "chi_**";
  return "chi_" + std::to_string(code);
}

Cyclotomic dihedral_character(int N, int code, int element) {
  dihedral_irrep_dim(N, code);
  bool refl = element >= N;
  int k = element % N;
  int parity = k % 2 == 0 ? 1 : -1;
  if (code == 0) return Cyclotomic::integer(1);
  if (code == kStar) return Cyclotomic::integer(refl ? -1 : 1);
  if (code == kDoubleStar) return Cyclotomic::integer(refl ? -parity : parity);
  if (N % 2 == 0 && code == N / 2) return Cyclotomic::integer(parity);
  if (refl) return Cyclotomic::integer(0);
  return Cyclotomic::two_cos(N, static_cast<std::int64_t>(code) * k);
}

namespace {

std::string two_cos_symbol(int N, int code, int k) {
  // 2cos(2 pi q) with q = code*k/N reduced mod 1
  Rational q = frac(Rational(static_cast<std::int64_t>(code) * k, N));
  if (q.numerator() == 0) return "2";
  if (q == Rational(1, 2)) return "-2";
  return "2cos(2pi*" + to_string(q) + ")";
}

}  // namespace

CharacterTable dihedral_character_table(int N) {
  if (N < 1) throw InvalidParameter("finite-group", "dihedral order N must be at least 1");
  CharacterTable t;
  t.N = N;
  for (int k = 0; 2 * k <= N; ++k) {
    t.class_reps.push_back(k);
    t.class_sizes.push_back(k == 0 || 2 * k == N ? 1 : 2);
    t.class_labels.push_back(k == 0 ? "e" : k == 1 ? "g" : "g^" + std::to_string(k));
  }
  if (N % 2 == 1) {
    t.class_reps.push_back(N);
    t.class_sizes.push_back(N);
    t.class_labels.push_back("k");
  } else {
    t.class_reps.push_back(N);
    t.class_sizes.push_back(N / 2);
    t.class_labels.push_back("k");
    t.class_reps.push_back(N + 1);
    t.class_sizes.push_back(N / 2);
    t.class_labels.push_back("kg");
  }
  for (int code : dihedral_irrep_codes(N)) {
    IrrepRow row;
    row.j = code < 0 ? 0 : code;
    row.dim = dihedral_irrep_dim(N, code);
    row.label = dihedral_irrep_label(N, code);
    if (code == kStar) row.kind = DihedralIrrep::Star;
    else if (code == kDoubleStar) row.kind = DihedralIrrep::DoubleStar;
    else if (code == 0) row.kind = DihedralIrrep::Trivial;
    else if (row.dim == 1) row.kind = DihedralIrrep::Half;
    else row.kind = DihedralIrrep::Geometric;
    t.irreps.push_back(row);
    std::vector<CharacterEntry> values;
    for (int rep : t.class_reps) {
      Cyclotomic v = dihedral_character(N, code, rep);
      std::string sym = (row.kind == DihedralIrrep::Geometric && rep < N) ? two_cos_symbol(N, code, rep)
                                                                          : v.to_string();
      values.push_back({v, sym});
    }
    t.rows.push_back(std::move(values));
  }
  return t;
}

std::vector<IsotypicEntry> isotypic_multiplicities(int N) {
  if (N < 1) throw InvalidParameter("finite-group", "dihedral order N must be at least 1");
  std::vector<IsotypicEntry> out;
  for (int code : dihedral_irrep_codes(N)) {
    Cyclotomic sum = Cyclotomic::integer(0);
    for (int x = 0; x < 2 * N; ++x) {
      int fixed = 0;
      for (int i = 0; i < N; ++i)
        if (dihedral_act(N, x, i) == i) ++fixed;
      if (fixed == 0) continue;
      sum = sum + dihedral_character(N, code, x) * fixed;
    }
    std::int64_t total = sum.to_integer();
    if (total % (2 * N) != 0) throw InternalConsistency("finite-group", "non-integral multiplicity");
    int mult = static_cast<int>(total / (2 * N));
    if (mult > 0) out.push_back({code, mult, dihedral_irrep_dim(N, code)});
  }
  return out;
}

std::vector<int> isotypic_indices(int N) {
  std::vector<int> out;
  for (const auto& e : isotypic_multiplicities(N)) out.push_back(e.j);
  return out;
}

}  // namespace eqdeg
