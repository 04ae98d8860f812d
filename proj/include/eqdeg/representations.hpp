#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "eqdeg/o2_lattice.hpp"
#include "json.hpp"

namespace eqdeg {

// V_{m,j} = W_m (x) V_j with Gamma = D_N. j uses the D_N irrep codes (j >= 0, kStar, kDoubleStar).
// With antipodal set, (e,-1) acts by -1; otherwise the Z2 factor acts trivially.
struct IrrepLabel {
  int m = 1;
  int j = 0;
  bool antipodal = true;

  bool operator<(const IrrepLabel& o) const {
    return std::tie(m, j, antipodal) < std::tie(o.m, o.j, o.antipodal);
  }
  bool operator==(const IrrepLabel& o) const { return m == o.m && j == o.j && antipodal == o.antipodal; }
};

std::string to_string(const IrrepLabel& label);

struct MaximalSet {
  IrrepLabel label;
  std::vector<int> members;  // orbit type ids, sorted by name
};

// Representation theory of O(2) x D_N x Z2 over a shared orbit-type lattice.
class Representations {
 public:
  explicit Representations(int N);

  // Cached per N.
  static std::shared_ptr<const Representations> for_dihedral(int N);

  int gamma_n() const { return N_; }
  const AmalgamLattice& lattice() const { return *lat_; }
  std::shared_ptr<const AmalgamLattice> lattice_ptr() const { return lat_; }
  // Lowest common multiple of element orders of D_N x Z2.
  int exponent() const { return exponent_; }

  void validate(const IrrepLabel& label) const;
  int dimension(const IrrepLabel& label) const;
  Cyclotomic character(const IrrepLabel& label, const GroupElement& g) const;
  int fixed_point_dim(const IrrepLabel& label, const Amalgam& h) const;
  int fixed_point_dim(const IrrepLabel& label, int id) const;

  // Orbit types of V \ {0} with finite Weyl group, plus (G); sorted by decreasing size.
  std::vector<int> isotropy_types(const IrrepLabel& label) const;
  MaximalSet maximal_orbit_types(const IrrepLabel& label) const;
  // Witness (m, j) with minimal m over the isotypic indices of R^N.
  std::optional<IrrepLabel> is_maximal_kind(int id, bool antipodal = true) const;

  nlohmann::json to_json(const MaximalSet& set) const;

 private:
  int N_;
  int exponent_;
  std::shared_ptr<const AmalgamLattice> lat_;

  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<IrrepLabel, int>, int> dim_cache_;
  mutable std::map<IrrepLabel, std::vector<int>> isotropy_cache_;
  mutable std::map<IrrepLabel, std::vector<int>> maximal_cache_;

  std::vector<int> compute_isotropy_m1(const IrrepLabel& label) const;
};

}  // namespace eqdeg
