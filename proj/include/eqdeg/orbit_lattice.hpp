#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqdeg {

// Orbit types of a group with finite Weyl group, addressed by integer ids.
// Implemented for finite groups (all subgroup classes) and for O(2) x P.
class OrbitLattice {
 public:
  virtual ~OrbitLattice() = default;

  virtual int top() const = 0;
  virtual std::string name(int id) const = 0;
  virtual std::optional<int> parse(const std::string& text) const = 0;
  virtual int weyl(int id) const = 0;
  // Number of subgroups in class k containing a fixed representative of class l.
  virtual int n_count(int l, int k) const = 0;
  virtual bool subconjugate(int h, int k) const = 0;
  // Orbit types (L) that can occur in (H)(K): classes of H ∩ gKg^-1 with finite Weyl group.
  virtual std::vector<int> product_candidates(int h, int k) const = 0;
  // Size rank: (infinite flag, order). Strictly larger for strict overgroups.
  virtual std::pair<int, long> size_rank(int id) const = 0;
  // Deterministic sort key used for term order.
  virtual std::string sort_key(int id) const = 0;
};

}  // namespace eqdeg
