#include "eqdeg/burnside.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {

const char* kModule = "burnside";

void order_ids(const OrbitLattice& lat, std::vector<int>& ids, TermOrder order) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    auto ra = lat.size_rank(a), rb = lat.size_rank(b);
    if (ra != rb) return ra > rb;
    return order == TermOrder::Ascending ? lat.sort_key(a) < lat.sort_key(b) : lat.sort_key(a) > lat.sort_key(b);
  });
}

struct ProductCache {
  std::mutex mu;
  // lattices are kept alive by the cache so the pointer key stays unique
  std::map<const OrbitLattice*, std::shared_ptr<const OrbitLattice>> owners;
  std::map<std::tuple<const OrbitLattice*, int, int, int>, std::map<int, std::int64_t>> products;
};

ProductCache& cache() {
  static ProductCache c;
  return c;
}

// Returns false when some division is inexact.
bool run_recurrence(const OrbitLattice& lat, int h, int k, std::vector<int> types, TermOrder order,
                    std::map<int, std::int64_t>& out) {
  order_ids(lat, types, order);
  std::int64_t wh = lat.weyl(h), wk = lat.weyl(k);
  std::vector<std::pair<int, std::int64_t>> done;
  out.clear();
  for (int l : types) {
    std::int64_t num = static_cast<std::int64_t>(lat.n_count(l, h)) * wh * lat.n_count(l, k) * wk;
    for (const auto& [t, nt] : done) {
      if (nt == 0) continue;
      int c = lat.n_count(l, t);
      if (c != 0) num -= nt * c * lat.weyl(t);
    }
    std::int64_t wl = lat.weyl(l);
    if (num % wl != 0) return false;
    std::int64_t nl = num / wl;
    done.emplace_back(l, nl);
    if (nl != 0) out[l] = nl;
  }
  return true;
}

}  // namespace

BurnsideElement::BurnsideElement(std::shared_ptr<const OrbitLattice> lattice) : lat_(std::move(lattice)) {}

std::int64_t BurnsideElement::coeff(int id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? 0 : it->second;
}

void BurnsideElement::add(int id, std::int64_t c) {
  if (c == 0) return;
  auto& v = terms_[id];
  v += c;
  if (v == 0) terms_.erase(id);
}

std::vector<int> BurnsideElement::ordered_ids() const {
  std::vector<int> ids;
  for (const auto& [id, c] : terms_) ids.push_back(id);
  if (lat_) order_ids(*lat_, ids, TermOrder::Ascending);
  return ids;
}

std::string BurnsideElement::to_text() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (int id : ordered_ids()) {
    std::int64_t c = terms_.at(id);
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    out += std::to_string(c < 0 ? -c : c) + lat_->name(id);
    first = false;
  }
  return out;
}

nlohmann::json BurnsideElement::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (int id : ordered_ids()) out.push_back({{"orbit_type", lat_->name(id)}, {"coeff", terms_.at(id)}});
  return out;
}

BurnsideElement unit(const std::shared_ptr<const OrbitLattice>& lattice) { return generator(lattice, lattice->top()); }

BurnsideElement generator(const std::shared_ptr<const OrbitLattice>& lattice, int id, std::int64_t c) {
  BurnsideElement e(lattice);
  e.add(id, c);
  return e;
}

BurnsideElement generator_product(const std::shared_ptr<const OrbitLattice>& lattice, int h, int k,
                                  TermOrder order) {
  if (h > k) std::swap(h, k);
  auto& c = cache();
  auto key = std::make_tuple(lattice.get(), h, k, static_cast<int>(order));
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.products.find(key);
    if (it != c.products.end()) {
      BurnsideElement e(lattice);
      for (const auto& [id, v] : it->second) e.add(id, v);
      return e;
    }
  }
  const OrbitLattice& lat = *lattice;
  std::map<int, std::int64_t> terms;
  if (h == lat.top() || k == lat.top()) {
    terms[h == lat.top() ? k : h] = 1;
  } else {
    std::vector<int> types = lat.product_candidates(h, k);
    if (!run_recurrence(lat, h, k, types, order, terms)) {
      // close the working set under pairwise intersections and retry once
      std::set<int> closed(types.begin(), types.end());
      for (int a : types)
        for (int b : types)
          for (int t : lat.product_candidates(a, b)) closed.insert(t);
      std::vector<int> wider(closed.begin(), closed.end());
      if (!run_recurrence(lat, h, k, wider, order, terms))
        throw LatticeIncomplete(kModule, "inexact division in the recurrence for " + lat.name(h) + " * " +
                                             lat.name(k));
    }
  }
  {
    std::lock_guard<std::mutex> lock(c.mu);
    c.owners.emplace(lattice.get(), lattice);
    c.products.emplace(key, terms);
  }
  BurnsideElement e(lattice);
  for (const auto& [id, v] : terms) e.add(id, v);
  return e;
}

BurnsideElement multiply(const BurnsideElement& a, const BurnsideElement& b, TermOrder order) {
  const auto& lat = a.lattice() ? a.lattice() : b.lattice();
  if (a.lattice() && b.lattice() && a.lattice() != b.lattice())
    throw InvalidParameter(kModule, "operands live in different lattices");
  BurnsideElement out(lat);
  for (const auto& [h, ch] : a.terms())
    for (const auto& [k, ck] : b.terms()) {
      BurnsideElement p = generator_product(lat, h, k, order);
      for (const auto& [l, cl] : p.terms()) out.add(l, ch * ck * cl);
    }
  return out;
}

BurnsideElement scale(const BurnsideElement& a, std::int64_t c) {
  BurnsideElement out(a.lattice());
  for (const auto& [id, v] : a.terms()) out.add(id, v * c);
  return out;
}

BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b) {
  BurnsideElement out = a.lattice() ? a : BurnsideElement(b.lattice());
  for (const auto& [id, v] : b.terms()) out.add(id, v);
  return out;
}

std::int64_t coeff(const BurnsideElement& a, int id) { return a.coeff(id); }

std::int64_t generator_product_coeff(int weyl_order, int m_of_h, int s0, int s1, int s) {
  if (s0 < 1 || s1 < 1 || s < 1) throw InvalidParameter(kModule, "folding indices must be positive");
  if (s != std::gcd(s0, s1)) return 0;
  // B_m on the pair {s0, s1}
  int g = std::gcd(s0, s1);
  bool b = s0 == s1 || ((s0 - s1) / g) % m_of_h == 0 || ((s0 + s1) / g) % m_of_h == 0;
  return b ? weyl_order : 0;
}

// ---- finite groups ----

FiniteOrbitLattice::FiniteOrbitLattice(GroupPtr g) : g_(std::move(g)), lat_(subgroup_lattice(g_)) {}

int FiniteOrbitLattice::top() const { return static_cast<int>(lat_->classes().size()) - 1; }

std::string FiniteOrbitLattice::name(int id) const { return "(" + lat_->classes().at(id).name + ")"; }

std::optional<int> FiniteOrbitLattice::parse(const std::string& text) const {
  std::string t = text;
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  return lat_->find_class(t);
}

int FiniteOrbitLattice::n_count(int l, int k) const {
  return lat_->n_count(lat_->classes().at(l).representative.members, k);
}

std::vector<int> FiniteOrbitLattice::product_candidates(int h, int k) const {
  const ElementSet& a = lat_->classes().at(h).representative.members;
  const ElementSet& b = lat_->classes().at(k).representative.members;
  std::set<int> out;
  for (int y = 0; y < g_->order(); ++y) out.insert(lat_->class_of(a & conjugate_set(*g_, b, y)));
  return {out.begin(), out.end()};
}

std::pair<int, long> FiniteOrbitLattice::size_rank(int id) const {
  return {0, static_cast<long>(lat_->classes().at(id).representative.order())};
}

std::string FiniteOrbitLattice::sort_key(int id) const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08d", id);
  return buf;
}

BurnsideElement brute_force_product(const std::shared_ptr<const FiniteOrbitLattice>& lattice, int h, int k) {
  const SubgroupLattice& sl = lattice->subgroups();
  const FiniteGroup& g = *sl.group();
  const ElementSet& H = sl.classes().at(h).representative.members;
  const ElementSet& K = sl.classes().at(k).representative.members;
  auto coset_reps = [&](const ElementSet& s) {
    std::vector<int> reps;
    ElementSet seen;
    for (int a = 0; a < g.order(); ++a) {
      if (seen.test(a)) continue;
      reps.push_back(a);
      for (int x = 0; x < g.order(); ++x)
        if (s.test(x)) seen.set(g.mul(a, x));
    }
    return reps;
  };
  std::map<int, std::int64_t> points;
  for (int a : coset_reps(H))
    for (int b : coset_reps(K)) {
      ElementSet stab = conjugate_set(g, H, a) & conjugate_set(g, K, b);
      ++points[sl.class_of(stab)];
    }
  BurnsideElement out(lattice);
  for (const auto& [l, count] : points) {
    std::int64_t orbit = g.order() / sl.classes()[l].representative.order();
    if (count % orbit != 0) throw InternalConsistency(kModule, "orbit size does not divide point count");
    out.add(l, count / orbit);
  }
  return out;
}

}  // namespace eqdeg
