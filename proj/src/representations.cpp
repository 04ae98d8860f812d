#include "eqdeg/representations.hpp"

#include <algorithm>
#include <numeric>

#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {

const char* kModule = "representations";

// Character values accumulated in the group ring of Z_C, reduced once at the end.
class RootSum {
 public:
  explicit RootSum(int conductor) : c_(conductor), g_(conductor, 0) {}

  // coefficient * (sum of zeta_C^e over the given exponents)
  void add(const std::vector<std::pair<std::int64_t, int>>& a, const std::vector<std::pair<std::int64_t, int>>& b,
           int sign) {
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        std::int64_t e = ((ea + eb) % c_ + c_) % c_;
        g_[e] += static_cast<std::int64_t>(ca) * cb * sign;
      }
  }

  Cyclotomic value() const { return Cyclotomic::from_group_ring(c_, g_); }

 private:
  std::int64_t c_;
  std::vector<std::int64_t> g_;
};

using Terms = std::vector<std::pair<std::int64_t, int>>;

// W_m factor at an O(2) element, exponents in units of 1/C.
Terms o2_terms(int m, const O2Element& x, int C) {
  if (m == 0) return {{0, 1}};
  if (x.reflection) return {};
  Rational e = x.q * m * C;
  if (e.denominator() != 1) throw InternalConsistency(kModule, "conductor too small for rotation");
  return {{e.numerator(), 1}, {-e.numerator(), 1}};
}

// D_N factor at a dihedral element id.
Terms gamma_terms(int N, int code, int element, int C) {
  bool refl = element >= N;
  int k = element % N;
  int parity = k % 2 == 0 ? 1 : -1;
  if (code == 0) return {{0, 1}};
  if (code == kStar) return {{0, refl ? -1 : 1}};
  if (code == kDoubleStar) return {{0, refl ? -parity : parity}};
  if (N % 2 == 0 && code == N / 2) return {{0, parity}};
  if (refl) return {};
  std::int64_t e = static_cast<std::int64_t>(code) * k * (C / N);
  return {{e, 1}, {-e, 1}};
}

}  // namespace

std::string to_string(const IrrepLabel& label) {
  std::string j = label.j == kStar ? "*" : label.j == kDoubleStar ? "**" : std::to_string(label.j);
  std::string out = "(" + std::to_string(label.m) + "," + j + ")";
  if (!label.antipodal) out += "[trivial Z2]";
  return out;
}

Representations::Representations(int N) : N_(N) {
  GroupPtr p = adjoin_z2(build_dihedral(N));
  exponent_ = 1;
  for (int y = 0; y < p->order(); ++y) exponent_ = std::lcm(exponent_, p->element_order(y));
  lat_ = std::make_shared<AmalgamLattice>(p);
}

std::shared_ptr<const Representations> Representations::for_dihedral(int N) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Representations>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  auto r = std::make_shared<const Representations>(N);
  cache.emplace(N, r);
  return r;
}

void Representations::validate(const IrrepLabel& label) const {
  if (label.m < 0) throw InvalidParameter(kModule, "mode m must be nonnegative");
  dihedral_irrep_dim(N_, label.j);
}

int Representations::dimension(const IrrepLabel& label) const {
  validate(label);
  return dihedral_irrep_dim(N_, label.j) * (label.m >= 1 ? 2 : 1);
}

Cyclotomic Representations::character(const IrrepLabel& label, const GroupElement& g) const {
  validate(label);
  int C = static_cast<int>(lcm64(g.o.q.denominator(), N_));
  int x = g.p % (2 * N_);
  int sign = label.antipodal && g.p >= 2 * N_ ? -1 : 1;
  RootSum acc(C);
  acc.add(o2_terms(label.m, g.o, C), gamma_terms(N_, label.j, x, C), sign);
  return acc.value();
}

int Representations::fixed_point_dim(const IrrepLabel& label, const Amalgam& h) const {
  validate(label);
  const FiniteGroup& P = lat_->ambient();
  std::int64_t order;
  Cyclotomic total;
  if (h.kind == O2Kind::Full) {
    if (label.m >= 1) return 0;
    RootSum acc(N_);
    for (int y = 0; y < P.order(); ++y)
      if (h.z.test(y)) acc.add({{0, 1}}, gamma_terms(N_, label.j, y % (2 * N_), N_),
                               label.antipodal && y >= 2 * N_ ? -1 : 1);
    total = acc.value();
    order = static_cast<std::int64_t>(h.z.count());
  } else {
    int C = static_cast<int>(lcm64(h.n, N_));
    RootSum acc(C);
    auto elems = lat_->realize_elements(h);
    for (const auto& e : elems) {
      if (e.o.reflection && label.m >= 1) continue;
      acc.add(o2_terms(label.m, e.o, C), gamma_terms(N_, label.j, e.p % (2 * N_), C),
              label.antipodal && e.p >= 2 * N_ ? -1 : 1);
    }
    total = acc.value();
    order = static_cast<std::int64_t>(elems.size());
  }
  if (!total.is_integer()) throw InternalConsistency(kModule, "character sum is not an integer");
  std::int64_t s = total.to_integer();
  if (s < 0 || s % order != 0) throw InternalConsistency(kModule, "character average is not a nonnegative integer");
  return static_cast<int>(s / order);
}

int Representations::fixed_point_dim(const IrrepLabel& label, int id) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(label, id);
  auto it = dim_cache_.find(key);
  if (it != dim_cache_.end()) return it->second;
  int d = fixed_point_dim(label, lat_->rep(id));
  dim_cache_.emplace(key, d);
  return d;
}

namespace {

void sort_by_size(const AmalgamLattice& L, std::vector<int>& ids) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    auto ra = L.size_rank(a), rb = L.size_rank(b);
    if (ra != rb) return ra > rb;
    return L.sort_key(a) < L.sort_key(b);
  });
}

}  // namespace

std::vector<int> Representations::compute_isotropy_m1(const IrrepLabel& label) const {
  const AmalgamLattice& L = *lat_;
  // stabilizer rotations of nonzero vectors lie in (1/E)Z, E the exponent of D_N x Z2
  std::vector<int> candidates;
  for (int n = 1; n <= exponent_; ++n)
    if (exponent_ % n == 0)
      for (int id : L.level_classes(n, true)) candidates.push_back(id);
  std::map<int, int> dims;
  for (int id : candidates) dims[id] = fixed_point_dim(label, id);
  std::vector<int> out{L.top()};
  for (int h : candidates) {
    int d = dims[h];
    if (d == 0) continue;
    bool isotropy = true;
    auto rank = L.size_rank(h);
    for (int k : candidates) {
      if (dims[k] != d || L.size_rank(k) <= rank) continue;
      if (L.rep(k).n % L.rep(h).n != 0) continue;
      if (L.subconjugate(h, k)) {
        isotropy = false;
        break;
      }
    }
    if (isotropy) out.push_back(h);
  }
  sort_by_size(L, out);
  return out;
}

std::vector<int> Representations::isotropy_types(const IrrepLabel& label) const {
  validate(label);
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = isotropy_cache_.find(label);
  if (it != isotropy_cache_.end()) return it->second;
  const AmalgamLattice& L = *lat_;
  std::vector<int> out;
  if (label.m == 0) {
    // O(2) acts trivially: isotropy groups are O(2) x K, K an isotropy group of V_j
    const SubgroupLattice& P = L.finite_lattice();
    std::vector<int> fulls;
    std::map<int, int> dims;
    for (const auto& cls : P.classes()) {
      int id = L.intern(L.make_full(cls.representative.members));
      fulls.push_back(id);
      dims[id] = fixed_point_dim(label, id);
    }
    out.push_back(L.top());
    for (int h : fulls) {
      if (h == L.top() || dims[h] == 0) continue;
      bool isotropy = true;
      for (int k : fulls)
        if (k != h && dims[k] == dims[h] && L.size_rank(k) > L.size_rank(h) && L.subconjugate(h, k)) {
          isotropy = false;
          break;
        }
      if (isotropy) out.push_back(h);
    }
    sort_by_size(L, out);
  } else if (label.m == 1) {
    out = compute_isotropy_m1(label);
  } else {
    for (int id : isotropy_types({1, label.j, label.antipodal})) out.push_back(L.fold_class(id, label.m));
    sort_by_size(L, out);
  }
  isotropy_cache_.emplace(label, out);
  return out;
}

MaximalSet Representations::maximal_orbit_types(const IrrepLabel& label) const {
  validate(label);
  if (label.m == 0) throw Unsupported(kModule, "maximal orbit types are defined for m >= 1 only");
  const AmalgamLattice& L = *lat_;
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = maximal_cache_.find(label);
  if (it != maximal_cache_.end()) return {label, it->second};
  std::vector<int> members;
  if (label.m == 1) {
    // maximal among the nonzero-vector orbit types of the whole mode-1 space: all isotypic
    // components of R^N together with the requested one
    std::vector<int> js = isotypic_indices(N_);
    if (std::find(js.begin(), js.end(), label.j) == js.end()) js.push_back(label.j);
    std::vector<int> others;
    for (int j : js)
      for (int id : isotropy_types({1, j, label.antipodal}))
        if (id != L.top()) others.push_back(id);
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    for (int h : isotropy_types(label)) {
      if (h == L.top()) continue;
      bool maximal = true;
      for (int k : others)
        if (k != h && L.size_rank(k) > L.size_rank(h) && L.subconjugate(h, k)) {
          maximal = false;
          break;
        }
      if (maximal) members.push_back(h);
    }
  } else {
    for (int id : maximal_orbit_types({1, label.j, label.antipodal}).members)
      members.push_back(L.fold_class(id, label.m));
  }
  std::sort(members.begin(), members.end(), [&](int a, int b) { return L.name(a) < L.name(b); });
  maximal_cache_.emplace(label, members);
  return {label, members};
}

std::optional<IrrepLabel> Representations::is_maximal_kind(int id, bool antipodal) const {
  const Amalgam& h = lat_->rep(id);
  if (h.kind != O2Kind::Dihedral) return std::nullopt;
  std::optional<IrrepLabel> best;
  for (int j : isotypic_indices(N_))
    for (int base : maximal_orbit_types({1, j, antipodal}).members) {
      int n1 = lat_->rep(base).n;
      if (h.n % n1 != 0) continue;
      int s = h.n / n1;
      if (lat_->fold_class(base, s) == id && (!best || s < best->m)) best = IrrepLabel{s, j, antipodal};
    }
  return best;
}

nlohmann::json Representations::to_json(const MaximalSet& set) const {
  nlohmann::json members = nlohmann::json::array();
  for (int id : set.members) members.push_back(lat_->name(id));
  return {{"m", set.label.m}, {"j", set.label.j}, {"members", members}};
}

}  // namespace eqdeg
