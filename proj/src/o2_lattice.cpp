#include "eqdeg/o2_lattice.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {

const char* kModule = "o2-lattice";

int first_bit(const ElementSet& s) {
  for (int i = 0; i < kMaxOrder; ++i)
    if (s.test(i)) return i;
  return -1;
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

}  // namespace

// ---- O(2) elements ----

O2Element o2_rotation(const Rational& q) { return {false, frac(q)}; }
O2Element o2_reflection(const Rational& q) { return {true, frac(q)}; }

O2Element o2_mul(const O2Element& a, const O2Element& b) {
  // rho_a kappa = kappa rho_-a
  if (!a.reflection && !b.reflection) return o2_rotation(a.q + b.q);
  if (!a.reflection && b.reflection) return o2_reflection(b.q - a.q);
  if (a.reflection && !b.reflection) return o2_reflection(a.q + b.q);
  return o2_rotation(b.q - a.q);
}

O2Element o2_inv(const O2Element& a) { return a.reflection ? a : o2_rotation(-a.q); }

std::string to_string(const O2Element& x) {
  return (x.reflection ? "kappa*rho(" : "rho(") + to_string(x.q) + ")";
}

int O2Subgroup::order() const {
  switch (kind) {
    case O2Kind::Dihedral: return 2 * n;
    case O2Kind::Cyclic: return n;
    default: return 0;
  }
}

bool O2Subgroup::contains(const O2Element& x) const {
  switch (kind) {
    case O2Kind::Full: return true;
    case O2Kind::SO2: return !x.reflection;
    case O2Kind::Cyclic: return !x.reflection && on_grid(x.q, n);
    case O2Kind::Dihedral: return on_grid(x.reflection ? x.q - offset : x.q, n);
  }
  return false;
}

std::vector<O2Element> O2Subgroup::elements() const {
  if (!finite()) throw Unsupported(kModule, "cannot enumerate an infinite subgroup of O(2)");
  std::vector<O2Element> out;
  for (int k = 0; k < n; ++k) out.push_back(o2_rotation(Rational(k, n)));
  if (kind == O2Kind::Dihedral)
    for (int t = 0; t < n; ++t) out.push_back(o2_reflection(offset + Rational(t, n)));
  return out;
}

std::string O2Subgroup::name() const {
  switch (kind) {
    case O2Kind::Full: return "O2";
    case O2Kind::SO2: return "SO2";
    case O2Kind::Dihedral: return "D" + std::to_string(n);
    case O2Kind::Cyclic: return "Z" + std::to_string(n);
  }
  return "?";
}

bool AmalgamLess::operator()(const Amalgam& a, const Amalgam& b) const {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.n != b.n) return a.n < b.n;
  if (a.off != b.off) return a.off < b.off;
  if (a.z != b.z) return set_less(a.z, b.z);
  if (a.r != b.r) return a.r < b.r;
  return a.s < b.s;
}

// ---- lattice ----

AmalgamLattice::AmalgamLattice(GroupPtr p) : p_(std::move(p)), lat_(subgroup_lattice(p_)) {
  ElementSet all;
  for (int y = 0; y < p_->order(); ++y) all.set(y);
  top_ = intern(make_full(all));
}

int AmalgamLattice::coset_rep(const ElementSet& z, int a) const {
  int best = p_->order();
  for (int b = 0; b < p_->order(); ++b)
    if (z.test(b)) best = std::min(best, p_->mul(a, b));
  return best;
}

ElementSet AmalgamLattice::coset_set(const ElementSet& z, int a) const {
  ElementSet out;
  for (int b = 0; b < p_->order(); ++b)
    if (z.test(b)) out.set(p_->mul(a, b));
  return out;
}

ElementSet AmalgamLattice::normalizer(const ElementSet& z) const {
  ElementSet out;
  for (int y = 0; y < p_->order(); ++y)
    if (conjugate_set(*p_, z, y) == z) out.set(y);
  return out;
}

int AmalgamLattice::power_rep(const ElementSet& z, int a, long k) const {
  long ord = p_->element_order(a);
  k = ((k % ord) + ord) % ord;
  int x = 0;
  for (long i = 0; i < k; ++i) x = p_->mul(x, a);
  return coset_rep(z, x);
}

int AmalgamLattice::theta(const Amalgam& h, const O2Element& x) const {
  if (h.kind == O2Kind::Full) return 0;
  if (!x.reflection) {
    if (!on_grid(x.q, h.n)) return -1;
    return power_rep(h.z, h.r, static_cast<long>((x.q * h.n).numerator()));
  }
  if (h.kind != O2Kind::Dihedral) return -1;
  Rational t = (x.q - h.off) * h.n;
  if (t.denominator() != 1) return -1;
  long k = static_cast<long>(t.numerator());
  return coset_rep(h.z, p_->mul(h.s, power_rep(h.z, h.r, k)));
}

bool AmalgamLattice::is_valid(const Amalgam& h) const {
  if (!is_subgroup(*p_, h.z)) return false;
  if (h.kind == O2Kind::Full) return true;
  if (h.kind == O2Kind::SO2) return false;
  if (h.n < 1) return false;
  ElementSet nz = normalizer(h.z);
  if (!nz.test(h.r) || power_rep(h.z, h.r, h.n) != 0) return false;
  if (h.kind == O2Kind::Dihedral) {
    if (!nz.test(h.s)) return false;
    if (coset_rep(h.z, p_->mul(h.s, h.s)) != 0) return false;
    int srs = p_->conj(h.s, h.r);
    if (coset_rep(h.z, srs) != coset_rep(h.z, p_->inv(h.r))) return false;
  }
  return true;
}

Amalgam AmalgamLattice::normalize(Amalgam h) const {
  if (h.kind == O2Kind::Full) {
    h.n = 0;
    h.off = Rational(0);
    h.r = h.s = 0;
    return h;
  }
  if (h.kind == O2Kind::SO2) throw Unsupported(kModule, "SO(2) kernels are not represented");
  h.r = coset_rep(h.z, h.r);
  if (h.kind == O2Kind::Cyclic) {
    h.off = Rational(0);
    h.s = 0;
  } else {
    h.off = mod_step(h.off, h.n);
    h.s = coset_rep(h.z, h.s);
  }
  return h;
}

Amalgam AmalgamLattice::make_full(const ElementSet& k) const {
  Amalgam h;
  h.kind = O2Kind::Full;
  h.n = 0;
  h.z = k;
  return h;
}

Amalgam AmalgamLattice::conjugate(const Amalgam& h, const O2Element& x, int y) const {
  Amalgam out = h;
  out.z = conjugate_set(*p_, h.z, y);
  if (h.kind == O2Kind::Full) return normalize(out);
  O2Element xi = o2_inv(x);
  auto pulled = [&](const O2Element& w) {
    int t = theta(h, o2_mul(o2_mul(xi, w), x));
    if (t < 0) throw InternalConsistency(kModule, "conjugated element left the subgroup");
    return p_->conj(y, t);
  };
  out.r = pulled(o2_rotation(Rational(1, h.n)));
  if (h.kind == O2Kind::Dihedral) {
    O2Element img = o2_mul(o2_mul(x, o2_reflection(h.off)), xi);
    out.off = mod_step(img.q, h.n);
    out.s = pulled(o2_reflection(out.off));
  }
  return normalize(out);
}

namespace {

// P-side fibre of x in h, empty when x is outside kO.
ElementSet fibre(const AmalgamLattice& lat, const Amalgam& h, const O2Element& x) {
  if (h.kind == O2Kind::Full) return h.z;
  int t = lat.theta(h, x);
  if (t < 0) return {};
  return lat.coset_set(h.z, t);
}

}  // namespace

Amalgam AmalgamLattice::intersect(const Amalgam& a, const Amalgam& b) const {
  if (a.kind == O2Kind::Full && b.kind == O2Kind::Full) return make_full(a.z & b.z);
  int g;
  if (a.kind == O2Kind::Full) g = b.n;
  else if (b.kind == O2Kind::Full) g = a.n;
  else g = std::gcd(a.n, b.n);

  auto mask = [&](const O2Element& x) { return fibre(*this, a, x) & fibre(*this, b, x); };

  Amalgam out;
  out.z = a.z & b.z;
  int step = g;
  for (int k = 1; k < g; ++k)
    if (mask(o2_rotation(Rational(k, g))).any()) {
      step = k;
      break;
    }
  out.n = g / step;
  out.r = 0;
  if (out.n > 1) {
    ElementSet m = mask(o2_rotation(Rational(1, out.n)));
    out.r = first_bit(m);
  }

  // a common reflection point c, if the two reflection sets meet at all
  std::optional<Rational> c;
  bool refl_a = a.kind != O2Kind::Cyclic, refl_b = b.kind != O2Kind::Cyclic;
  if (refl_a && refl_b) {
    if (a.kind == O2Kind::Full) c = b.off;
    else if (b.kind == O2Kind::Full) c = a.off;
    else
      for (int t = 0; t < a.n; ++t) {
        Rational cand = a.off + Rational(t, a.n);
        if (on_grid(cand - b.off, b.n)) {
          c = cand;
          break;
        }
      }
  }
  out.kind = O2Kind::Cyclic;
  if (c) {
    for (int k = 0; k < g; ++k) {
      Rational point = *c + Rational(k, g);
      if (mask(o2_reflection(point)).any()) {
        out.kind = O2Kind::Dihedral;
        out.off = mod_step(point, out.n);
        out.s = first_bit(mask(o2_reflection(out.off)));
        break;
      }
    }
  }
  return normalize(out);
}

bool AmalgamLattice::contains(const Amalgam& big, const Amalgam& small) const {
  if (small.kind == O2Kind::Full) return big.kind == O2Kind::Full && (small.z & ~big.z).none();
  if (big.kind == O2Kind::Full) {
    if ((small.z & ~big.z).any() || !big.z.test(small.r)) return false;
    return small.kind != O2Kind::Dihedral || big.z.test(small.s);
  }
  if (big.n % small.n != 0) return false;
  if (small.kind == O2Kind::Dihedral && big.kind != O2Kind::Dihedral) return false;
  if ((small.z & ~big.z).any()) return false;
  int tr = theta(big, o2_rotation(Rational(1, small.n)));
  if (tr < 0 || coset_rep(big.z, small.r) != tr) return false;
  if (small.kind == O2Kind::Dihedral) {
    int ts = theta(big, o2_reflection(small.off));
    if (ts < 0 || coset_rep(big.z, small.s) != ts) return false;
  }
  return true;
}

Amalgam AmalgamLattice::canonical(const Amalgam& h0) const {
  Amalgam h = normalize(h0);
  if (h.kind == O2Kind::Full) {
    int c = lat_->class_of(h.z);
    return make_full(lat_->classes()[c].representative.members);
  }
  std::vector<O2Element> xs;
  if (h.kind == O2Kind::Dihedral) {
    h = conjugate(h, o2_rotation(h.off / 2), 0);
    xs = {o2_rotation(Rational(0)), o2_rotation(Rational(1, 2 * h.n))};
  } else {
    xs = {o2_rotation(Rational(0)), o2_reflection(Rational(0))};
  }
  Amalgam best = h;
  AmalgamLess less;
  for (const auto& x : xs)
    for (int y = 0; y < p_->order(); ++y) {
      Amalgam c = conjugate(h, x, y);
      if (less(c, best)) best = c;
    }
  return best;
}

std::vector<O2Element> AmalgamLattice::finite_ko_elements(const Amalgam& h) const {
  return k_o(h).elements();
}

std::vector<GroupElement> AmalgamLattice::realize_elements(const Amalgam& h) const {
  if (h.kind == O2Kind::Full) throw Unsupported(kModule, "cannot enumerate an amalgam with infinite O(2) part");
  std::vector<GroupElement> out;
  for (const auto& x : finite_ko_elements(h)) {
    int t = theta(h, x);
    for (int b = 0; b < p_->order(); ++b)
      if (h.z.test(b)) out.push_back({x, p_->mul(t, b)});
  }
  return out;
}

int AmalgamLattice::m_of(const Amalgam& h) const {
  if (h.kind == O2Kind::Full) return 1;
  int x = h.r;
  int k = 1;
  while (coset_rep(h.z, x) != 0) {
    x = p_->mul(x, h.r);
    ++k;
  }
  return k;
}

Amalgam AmalgamLattice::fold(const Amalgam& h, int s) const {
  if (s < 1) throw InvalidParameter(kModule, "folding index must be positive");
  if (h.kind == O2Kind::Full) return h;
  Amalgam out = h;
  out.n = h.n * s;
  out.off = h.off / s;
  return normalize(out);
}

O2Subgroup AmalgamLattice::k_o(const Amalgam& h) const {
  if (h.kind == O2Kind::Full) return {O2Kind::Full, 0, Rational(0)};
  return {h.kind, h.n, h.off};
}

O2Subgroup AmalgamLattice::z_o(const Amalgam& h) const {
  if (h.kind == O2Kind::Full) return {O2Kind::Full, 0, Rational(0)};
  int m = m_of(h);
  O2Subgroup out{O2Kind::Cyclic, h.n / m, Rational(0)};
  if (h.kind == O2Kind::Dihedral)
    for (int t = 0; t < m; ++t) {
      Rational point = h.off + Rational(t, h.n);
      if (theta(h, o2_reflection(point)) == 0) {
        out.kind = O2Kind::Dihedral;
        out.offset = mod_step(point, out.n);
        break;
      }
    }
  return out;
}

ElementSet AmalgamLattice::k_gamma(const Amalgam& h) const {
  ElementSet seeds = h.z;
  seeds.set(h.r);
  if (h.kind == O2Kind::Dihedral) seeds.set(h.s);
  return generate(*p_, seeds);
}

std::vector<PairingEntry> AmalgamLattice::pairing(const Amalgam& h) const {
  std::vector<PairingEntry> out;
  if (h.kind == O2Kind::Full) {
    out.push_back({o2_rotation(Rational(0)), 0});
    return out;
  }
  int m = m_of(h);
  for (int k = 0; k < m; ++k) {
    O2Element x = o2_rotation(Rational(k, h.n));
    out.push_back({x, theta(h, x)});
  }
  if (h.kind == O2Kind::Dihedral && z_o(h).kind == O2Kind::Cyclic)
    for (int t = 0; t < m; ++t) {
      O2Element x = o2_reflection(h.off + Rational(t, h.n));
      out.push_back({x, theta(h, x)});
    }
  return out;
}

std::string AmalgamLattice::base_name(const Amalgam& h) const {
  auto pname = [&](const ElementSet& s) { return literal_name(lat_->classes()[lat_->class_of(s)].name); };
  if (h.kind == O2Kind::Full) {
    if (static_cast<int>(h.z.count()) == p_->order()) return "(G)";
    return "(O2 x " + pname(h.z) + ")";
  }
  ElementSet kg = k_gamma(h);
  std::string k1 = k_o(h).name();
  if (kg == h.z) return "(" + k1 + " x " + pname(kg) + ")";
  return "(" + k1 + " ^" + z_o(h).name() + " x^" + pname(h.z) + " " + pname(kg) + ")";
}

// ---- classes ----

int AmalgamLattice::intern(const Amalgam& h0) const {
  Amalgam h = normalize(h0);
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto raw = raw_index_.find(h);
  if (raw != raw_index_.end()) return raw->second;
  if (!is_valid(h)) throw InternalConsistency(kModule, "invalid amalgam data");
  Amalgam c = canonical(h);
  auto it = canon_index_.find(c);
  int id;
  if (it != canon_index_.end()) {
    id = it->second;
  } else {
    id = static_cast<int>(classes_.size());
    classes_.push_back(std::make_unique<ClassInfo>(ClassInfo{c, std::nullopt, std::nullopt}));
    canon_index_.emplace(c, id);
    raw_index_.emplace(c, id);
  }
  raw_index_.emplace(h, id);
  return id;
}

const Amalgam& AmalgamLattice::rep(int id) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (id < 0 || id >= static_cast<int>(classes_.size())) throw InvalidParameter(kModule, "unknown orbit type id");
  return classes_[id]->rep;
}

OrbitType AmalgamLattice::orbit_type(int id) const {
  return {id, rep(id), name(id), is_finite_weyl(id) ? weyl(id) : 0};
}

int AmalgamLattice::fold_class(int id, int s) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(id, s);
  auto it = fold_cache_.find(key);
  if (it != fold_cache_.end()) return it->second;
  int out = intern(fold(rep(id), s));
  fold_cache_.emplace(key, out);
  return out;
}

bool AmalgamLattice::is_finite_weyl(int id) const { return rep(id).kind != O2Kind::Cyclic; }

std::vector<int> AmalgamLattice::level_classes(int n, bool dihedral) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(n, dihedral);
  auto it = level_cache_.find(key);
  if (it != level_cache_.end()) return it->second;
  std::set<int> ids;
  for (const auto& cls : lat_->classes()) {
    const ElementSet& z = cls.representative.members;
    ElementSet nz = normalizer(z);
    std::vector<int> reps;
    for (int y = 0; y < p_->order(); ++y)
      if (nz.test(y) && coset_rep(z, y) == y) reps.push_back(y);
    for (int r : reps)
      for (int s : dihedral ? reps : std::vector<int>{0}) {
        Amalgam h;
        h.kind = dihedral ? O2Kind::Dihedral : O2Kind::Cyclic;
        h.n = n;
        h.z = z;
        h.r = r;
        h.s = s;
        if (is_valid(h)) ids.insert(intern(h));
      }
  }
  std::vector<int> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end(), [&](int a, int b) { return AmalgamLess{}(rep(a), rep(b)); });
  level_cache_.emplace(key, out);
  return out;
}

std::string AmalgamLattice::name(int id) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  rep(id);
  if (classes_[id]->name) return *classes_[id]->name;
  const Amalgam h = classes_[id]->rep;
  std::string base = base_name(h);
  if (h.kind != O2Kind::Full) {
    std::vector<int> same;
    for (int other : level_classes(h.n, h.kind == O2Kind::Dihedral))
      if (base_name(rep(other)) == base) same.push_back(other);
    if (same.size() > 1) {
      auto pos = std::find(same.begin(), same.end(), id) - same.begin();
      base += "#" + std::to_string(pos + 1);
    }
  }
  classes_[id]->name = base;
  return base;
}

std::optional<int> AmalgamLattice::parse(const std::string& text) const {
  std::string t = collapse_spaces(text);
  if (t == "(G)") return top_;
  if (t.size() < 4 || t.front() != '(') return std::nullopt;
  if (t.rfind("(O2 x ", 0) == 0) {
    auto close = t.find(')');
    if (close == std::string::npos || close + 1 != t.size()) return std::nullopt;
    auto cls = lat_->find_class(t.substr(6, close - 6));
    if (!cls) return std::nullopt;
    return intern(make_full(lat_->classes()[*cls].representative.members));
  }
  char kind = t[1];
  if (kind != 'D' && kind != 'Z') return std::nullopt;
  std::size_t i = 2;
  int n = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) n = n * 10 + (t[i++] - '0');
  if (i == 2 || n < 1 || n > 100000) return std::nullopt;
  for (int id : level_classes(n, kind == 'D'))
    if (name(id) == t) return id;
  return std::nullopt;
}

int AmalgamLattice::weyl(int id) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  rep(id);
  if (classes_[id]->weyl) return *classes_[id]->weyl;
  const Amalgam h = classes_[id]->rep;
  int w = 0;
  if (h.kind == O2Kind::Cyclic) throw Unsupported(kModule, "Weyl group of a cyclic amalgam is infinite");
  if (h.kind == O2Kind::Full) {
    w = lat_->weyl_order(lat_->class_of(h.z));
  } else {
    // N_O(2)(D_n) = D_2n; elements of kO are absorbed by the P-side count
    Amalgam h0 = normalize(h);
    int total = 0;
    for (const auto& x : {o2_rotation(Rational(0)), o2_rotation(Rational(1, 2 * h.n))}) {
      for (int y = 0; y < p_->order(); ++y)
        if (conjugate(h0, x, y) == h0) ++total;
    }
    if (total % static_cast<int>(h.z.count()) != 0) throw InternalConsistency(kModule, "normalizer count not divisible");
    w = total / static_cast<int>(h.z.count());
  }
  classes_[id]->weyl = w;
  return w;
}

int AmalgamLattice::finite_n_count(const Amalgam& l, const Amalgam& k) const {
  // distinct conjugates of k containing l
  std::set<Amalgam, AmalgamLess> found;
  if (k.kind == O2Kind::Dihedral) {
    if (k.n % l.n != 0) return 0;
    if (l.kind == O2Kind::Cyclic) throw Unsupported(kModule, "cyclic amalgams lie in infinitely many conjugates");
    Rational a0 = (k.off - l.off) / 2;
    for (int i = 0; i < 2; ++i) {
      O2Element x = o2_rotation(a0 + Rational(i, 2 * k.n));
      for (int y = 0; y < p_->order(); ++y) {
        Amalgam c = conjugate(k, x, y);
        if (contains(c, l)) found.insert(c);
      }
    }
  } else {
    if (l.kind == O2Kind::Dihedral || k.n % l.n != 0) return 0;
    for (const auto& x : {o2_rotation(Rational(0)), o2_reflection(Rational(0))})
      for (int y = 0; y < p_->order(); ++y) {
        Amalgam c = conjugate(k, x, y);
        if (contains(c, l)) found.insert(c);
      }
  }
  return static_cast<int>(found.size());
}

int AmalgamLattice::n_count(int l, int k) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(l, k);
  auto it = n_cache_.find(key);
  if (it != n_cache_.end()) return it->second;
  const Amalgam L = rep(l);
  const Amalgam K = rep(k);
  int out;
  if (K.kind == O2Kind::Full) {
    int kc = lat_->class_of(K.z);
    out = lat_->n_count(L.kind == O2Kind::Full ? L.z : k_gamma(L), kc);
  } else if (L.kind == O2Kind::Full) {
    out = 0;
  } else {
    out = finite_n_count(L, K);
  }
  n_cache_.emplace(key, out);
  return out;
}

bool AmalgamLattice::subconjugate_ex(int h, int k, bool o2_only) const {
  const Amalgam H = rep(h);
  const Amalgam K = rep(k);
  if (K.kind == O2Kind::Full) {
    ElementSet hk = H.kind == O2Kind::Full ? H.z : k_gamma(H);
    if (o2_only) return (hk & ~K.z).none();
    return lat_->n_count(hk, lat_->class_of(K.z)) > 0;
  }
  if (H.kind == O2Kind::Full) return false;
  if (K.n % H.n != 0) return false;
  if (H.kind == O2Kind::Dihedral && K.kind != O2Kind::Dihedral) return false;
  int ys = o2_only ? 1 : p_->order();
  std::vector<O2Element> xs;
  if (H.kind == O2Kind::Dihedral) {
    // move the reflections of H onto those of K
    Rational a0 = (H.off - K.off) / 2;
    xs = {o2_rotation(a0), o2_rotation(a0 + Rational(1, 2 * K.n))};
  } else {
    xs = {o2_rotation(Rational(0)), o2_reflection(Rational(0))};
  }
  for (const auto& x : xs)
    for (int y = 0; y < ys; ++y)
      if (contains(K, conjugate(H, x, y))) return true;
  return false;
}

std::vector<int> AmalgamLattice::product_candidates(int h, int k) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(std::min(h, k), std::max(h, k));
  auto it = product_cache_.find(key);
  if (it != product_cache_.end()) return it->second;
  const Amalgam H = rep(h);
  const Amalgam K = rep(k);
  if (H.kind == O2Kind::Cyclic || K.kind == O2Kind::Cyclic)
    throw Unsupported(kModule, "products are defined on orbit types with finite Weyl group");
  std::vector<O2Element> xs{o2_rotation(Rational(0))};
  if (H.kind == O2Kind::Dihedral && K.kind == O2Kind::Dihedral) {
    int L = static_cast<int>(lcm64(H.n, K.n));
    Rational a0 = (K.off - H.off) / 2;
    xs = {o2_rotation(a0), o2_rotation(a0 + Rational(1, 2 * L))};
  }
  std::set<int> ids;
  for (const auto& x : xs)
    for (int y = 0; y < p_->order(); ++y) {
      Amalgam c = intersect(H, conjugate(K, x, y));
      if (c.kind != O2Kind::Cyclic) ids.insert(intern(c));
    }
  std::vector<int> out(ids.begin(), ids.end());
  product_cache_.emplace(key, out);
  return out;
}

std::pair<int, long> AmalgamLattice::size_rank(int id) const {
  const Amalgam& h = rep(id);
  if (h.kind == O2Kind::Full) return {1, static_cast<long>(h.z.count())};
  return {0, static_cast<long>(k_o(h).order()) * static_cast<long>(h.z.count())};
}

std::string AmalgamLattice::sort_key(int id) const {
  const Amalgam& h = rep(id);
  std::ostringstream os;
  os << static_cast<int>(h.kind) << '/' << h.n << '/' << to_string(h.off) << '/';
  for (int y = 0; y < p_->order(); ++y)
    if (h.z.test(y)) os << y << ',';
  os << '/' << h.r << '/' << h.s;
  return os.str();
}

// ---- folding relations ----

bool boolean_B(int m, const std::vector<int>& index_set) {
  if (m < 1) throw InvalidParameter(kModule, "m must be positive");
  if (index_set.empty()) throw InvalidParameter(kModule, "index set must be nonempty");
  for (std::size_t a = 0; a < index_set.size(); ++a)
    for (std::size_t b = a + 1; b < index_set.size(); ++b) {
      int x = index_set[a], y = index_set[b];
      if (x < 1 || y < 1) throw InvalidParameter(kModule, "indices must be positive");
      int g = std::gcd(x, y);
      if (((x - y) / g) % m != 0 && ((x + y) / g) % m != 0) return false;
    }
  return true;
}

bool folding_relation(int m_of_h, int s0, int s1) {
  if (s0 < 1 || s1 < 1 || m_of_h < 1) throw InvalidParameter(kModule, "folding indices must be positive");
  if (s1 > s0) std::swap(s0, s1);
  if (s0 % s1 != 0) return false;
  return boolean_B(m_of_h, {s0, s1});
}

}  // namespace eqdeg
