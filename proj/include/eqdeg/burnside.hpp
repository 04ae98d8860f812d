#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eqdeg/finite_group.hpp"
#include "eqdeg/orbit_lattice.hpp"
#include "json.hpp"

namespace eqdeg {

// Sparse integer combination of orbit types of one lattice; zero coefficients are never stored.
class BurnsideElement {
 public:
  BurnsideElement() = default;
  explicit BurnsideElement(std::shared_ptr<const OrbitLattice> lattice);

  const std::shared_ptr<const OrbitLattice>& lattice() const { return lat_; }
  const std::map<int, std::int64_t>& terms() const { return terms_; }

  std::int64_t coeff(int id) const;
  void add(int id, std::int64_t c);
  bool operator==(const BurnsideElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const BurnsideElement& o) const { return !(*this == o); }

  // Ids ordered by decreasing size rank, then sort key.
  std::vector<int> ordered_ids() const;
  std::string to_text() const;
  nlohmann::json to_json() const;

 private:
  std::shared_ptr<const OrbitLattice> lat_;
  std::map<int, std::int64_t> terms_;
};

// Linear extensions of the orbit-type order used by the recurrence; ties are broken by the
// sort key ascending or descending.
enum class TermOrder { Ascending, Descending };

BurnsideElement unit(const std::shared_ptr<const OrbitLattice>& lattice);
BurnsideElement generator(const std::shared_ptr<const OrbitLattice>& lattice, int id, std::int64_t c = 1);

// (H)(K) through the recurrence over the classes of H ∩ gKg^-1.
BurnsideElement generator_product(const std::shared_ptr<const OrbitLattice>& lattice, int h, int k,
                                  TermOrder order = TermOrder::Ascending);
BurnsideElement multiply(const BurnsideElement& a, const BurnsideElement& b, TermOrder order = TermOrder::Ascending);
BurnsideElement scale(const BurnsideElement& a, std::int64_t c);
BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b);
std::int64_t coeff(const BurnsideElement& a, int id);

// |W(H)| [s = gcd(s0, s1)] [B_m(H)({s0, s1})]
std::int64_t generator_product_coeff(int weyl_order, int m_of_h, int s0, int s1, int s);

// All subgroup classes of a finite group as an orbit-type lattice.
class FiniteOrbitLattice : public OrbitLattice {
 public:
  explicit FiniteOrbitLattice(GroupPtr g);

  const SubgroupLattice& subgroups() const { return *lat_; }
  int top() const override;
  std::string name(int id) const override;
  std::optional<int> parse(const std::string& text) const override;
  int weyl(int id) const override { return lat_->weyl_order(id); }
  int n_count(int l, int k) const override;
  bool subconjugate(int h, int k) const override { return n_count(h, k) > 0; }
  std::vector<int> product_candidates(int h, int k) const override;
  std::pair<int, long> size_rank(int id) const override;
  std::string sort_key(int id) const override;

 private:
  GroupPtr g_;
  std::shared_ptr<const SubgroupLattice> lat_;
};

// Orbit counting on G/H x G/K.
BurnsideElement brute_force_product(const std::shared_ptr<const FiniteOrbitLattice>& lattice, int h, int k);

}  // namespace eqdeg
