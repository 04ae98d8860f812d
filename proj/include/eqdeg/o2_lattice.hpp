#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eqdeg/exact.hpp"
#include "eqdeg/finite_group.hpp"
#include "eqdeg/orbit_lattice.hpp"

namespace eqdeg {

// rho_q (rotation by 2 pi q) or kappa rho_q; q kept in [0, 1).
struct O2Element {
  bool reflection = false;
  Rational q{0};

  bool operator==(const O2Element& o) const { return reflection == o.reflection && q == o.q; }
};

O2Element o2_rotation(const Rational& q);
O2Element o2_reflection(const Rational& q);
O2Element o2_mul(const O2Element& a, const O2Element& b);
O2Element o2_inv(const O2Element& a);
std::string to_string(const O2Element& x);

enum class O2Kind { Full, SO2, Dihedral, Cyclic };

struct O2Subgroup {
  O2Kind kind = O2Kind::Cyclic;
  int n = 1;
  Rational offset{0};  // reflections kappa rho_{offset + t/n}

  bool finite() const { return kind == O2Kind::Dihedral || kind == O2Kind::Cyclic; }
  int order() const;  // 0 when infinite
  bool contains(const O2Element& x) const;
  std::vector<O2Element> elements() const;
  std::string name() const;
};

struct GroupElement {
  O2Element o;
  int p = 0;  // element id of the finite factor
};

// Closed subgroup H of O(2) x P in generator form. For finite kinds kO is Z_n or D_n and
// theta(rho_{k/n}) = r^k z, theta(kappa rho_{off + t/n}) = s r^t z, where z = zGamma is the
// kernel on the P side and r, s are the least element ids of their z-cosets.
// Full stands for O(2) x z with trivial pairing.
struct Amalgam {
  O2Kind kind = O2Kind::Dihedral;
  int n = 1;
  Rational off{0};
  ElementSet z;
  int r = 0;
  int s = 0;

  bool operator==(const Amalgam& o) const {
    return kind == o.kind && n == o.n && off == o.off && z == o.z && r == o.r && s == o.s;
  }
};

struct AmalgamLess {
  bool operator()(const Amalgam& a, const Amalgam& b) const;
};

struct PairingEntry {
  O2Element o_rep;
  int p_rep;
};

struct OrbitType {
  int id = -1;
  Amalgam canonical;
  std::string name;
  int weyl = 0;  // 0 for infinite Weyl group
};

// Orbit types of O(2) x P with P a finite group (P = Gamma x Z2 in applications).
class AmalgamLattice : public OrbitLattice {
 public:
  explicit AmalgamLattice(GroupPtr p);

  const FiniteGroup& ambient() const { return *p_; }
  const GroupPtr& ambient_ptr() const { return p_; }
  const SubgroupLattice& finite_lattice() const { return *lat_; }

  // ---- amalgam-level operations (no interning) ----
  int coset_rep(const ElementSet& z, int a) const;
  ElementSet coset_set(const ElementSet& z, int a) const;
  ElementSet normalizer(const ElementSet& z) const;
  // Coset representative of theta(x), or -1 when x is not in kO.
  int theta(const Amalgam& h, const O2Element& x) const;
  bool is_valid(const Amalgam& h) const;
  Amalgam normalize(Amalgam h) const;
  Amalgam make_full(const ElementSet& k) const;
  Amalgam conjugate(const Amalgam& h, const O2Element& x, int y) const;
  Amalgam intersect(const Amalgam& a, const Amalgam& b) const;
  bool contains(const Amalgam& big, const Amalgam& small) const;
  Amalgam canonical(const Amalgam& h) const;
  std::vector<GroupElement> realize_elements(const Amalgam& h) const;
  int m_of(const Amalgam& h) const;
  Amalgam fold(const Amalgam& h, int s) const;
  O2Subgroup k_o(const Amalgam& h) const;
  O2Subgroup z_o(const Amalgam& h) const;
  ElementSet k_gamma(const Amalgam& h) const;
  ElementSet z_gamma(const Amalgam& h) const { return h.z; }
  std::vector<PairingEntry> pairing(const Amalgam& h) const;
  // Quadruple name without any "#i" disambiguation.
  std::string base_name(const Amalgam& h) const;

  // ---- classes ----
  int intern(const Amalgam& h) const;
  const Amalgam& rep(int id) const;
  OrbitType orbit_type(int id) const;
  int fold_class(int id, int s) const;
  int m_of_class(int id) const { return m_of(rep(id)); }
  bool is_finite_weyl(int id) const;
  // All classes whose kO is D_n (dihedral = true) or Z_n.
  std::vector<int> level_classes(int n, bool dihedral) const;
  // subconjugacy; with o2_only, conjugators are restricted to (a, e).
  bool subconjugate_ex(int h, int k, bool o2_only) const;

  // ---- OrbitLattice ----
  int top() const override { return top_; }
  std::string name(int id) const override;
  std::optional<int> parse(const std::string& text) const override;
  int weyl(int id) const override;
  int n_count(int l, int k) const override;
  bool subconjugate(int h, int k) const override { return subconjugate_ex(h, k, false); }
  std::vector<int> product_candidates(int h, int k) const override;
  std::pair<int, long> size_rank(int id) const override;
  std::string sort_key(int id) const override;

 private:
  struct ClassInfo {
    Amalgam rep;
    std::optional<std::string> name;
    std::optional<int> weyl;
  };

  GroupPtr p_;
  std::shared_ptr<const SubgroupLattice> lat_;
  int top_ = 0;

  mutable std::recursive_mutex mu_;
  mutable std::vector<std::unique_ptr<ClassInfo>> classes_;
  mutable std::map<Amalgam, int, AmalgamLess> canon_index_;
  mutable std::map<Amalgam, int, AmalgamLess> raw_index_;
  mutable std::map<std::pair<int, int>, int> n_cache_;
  mutable std::map<std::pair<int, int>, std::vector<int>> product_cache_;
  mutable std::map<std::pair<int, bool>, std::vector<int>> level_cache_;
  mutable std::map<std::pair<int, int>, int> fold_cache_;

  int power_rep(const ElementSet& z, int a, long k) const;
  int conj_elem(int y, int a) const { return p_->conj(y, a); }
  std::vector<O2Element> finite_ko_elements(const Amalgam& h) const;
  int finite_n_count(const Amalgam& l, const Amalgam& k) const;
};

// m | (x-y)/gcd(x,y) or m | (x+y)/gcd(x,y) for every pair in the set.
bool boolean_B(int m, const std::vector<int>& index_set);

// Exact subconjugacy of folds: (fold(h,s1)) <= (fold(h,s0)). Rotation subgroups force s1 | s0;
// given that, the condition reduces to the divisibility disjunction on m(h).
bool folding_relation(int m_of_h, int s0, int s1);

}  // namespace eqdeg
