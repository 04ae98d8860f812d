#pragma once

#include <bitset>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqdeg/exact.hpp"
#include "json.hpp"

namespace eqdeg {

constexpr int kMaxOrder = 512;
using ElementSet = std::bitset<kMaxOrder>;

enum class GroupKind { Trivial, Cyclic, Dihedral, DihedralZ2, Other };

// Structural tag used for naming subgroups; the tables are authoritative.
struct GroupShape {
  GroupKind kind = GroupKind::Other;
  int n = 0;  // N for D_N, n for Z_n
};

class FiniteGroup {
 public:
  FiniteGroup(int order, std::vector<int> mul, std::vector<std::string> names,
              std::vector<int> generators, GroupShape shape);

  int order() const { return order_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return mul_[a * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
  int element_order(int a) const;
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& generators() const { return generators_; }
  const GroupShape& shape() const { return shape_; }
  std::optional<int> find(const std::string& element_name) const;

  // Associativity, identity and inverses checked on every triple.
  bool verify() const;

 private:
  int order_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
  std::vector<int> generators_;
  GroupShape shape_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct Subgroup {
  GroupPtr parent;
  ElementSet members;

  int order() const { return static_cast<int>(members.count()); }
  bool contains(int x) const { return members.test(x); }
  std::vector<int> elements() const;
};

struct SubgroupConjugacyClass {
  Subgroup representative;
  int class_size = 0;
  std::string name;
};

GroupPtr build_trivial();
GroupPtr build_cyclic(int n);
GroupPtr build_dihedral(int N);
GroupPtr adjoin_z2(const GroupPtr& g);
// "D<N>", "D<N>xZ2", "Z<n>".
GroupPtr parse_group(const std::string& spec);

ElementSet generate(const FiniteGroup& g, const ElementSet& seeds);
ElementSet conjugate_set(const FiniteGroup& g, const ElementSet& s, int by);
bool is_subgroup(const FiniteGroup& g, const ElementSet& s);
// Lexicographic comparison of sorted element-id lists.
bool set_less(const ElementSet& a, const ElementSet& b);

// All subgroups of a group, grouped into conjugacy classes.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(GroupPtr g);

  const GroupPtr& group() const { return g_; }
  const std::vector<SubgroupConjugacyClass>& classes() const { return classes_; }
  const std::vector<ElementSet>& subgroups() const { return subgroups_; }
  // Class index of an arbitrary subgroup.
  int class_of(const ElementSet& s) const;
  // Members of a class, as subgroups.
  const std::vector<ElementSet>& class_members(int c) const { return members_[c]; }
  int weyl_order(int c) const;
  int n_count(const ElementSet& h, int k_class) const;
  std::optional<int> find_class(const std::string& name) const;

 private:
  GroupPtr g_;
  std::vector<ElementSet> subgroups_;
  std::vector<SubgroupConjugacyClass> classes_;
  std::vector<std::vector<ElementSet>> members_;
  std::vector<int> class_index_;  // parallel to subgroups_
};

std::shared_ptr<const SubgroupLattice> subgroup_lattice(const GroupPtr& g);

std::vector<SubgroupConjugacyClass> subgroup_conjugacy_classes(const GroupPtr& g);
int weyl_order(const GroupPtr& g, const Subgroup& h);
int n_count(const GroupPtr& g, const Subgroup& h, const SubgroupConjugacyClass& k_class);

// Array of {name, order, class_size, representative: [element names]}.
nlohmann::json classes_to_json(const std::vector<SubgroupConjugacyClass>& classes);

// Systematic subgroup name (Zk, Dk, Dkt, with p/z/d suffixes over D_N x Z2).
std::string subgroup_name(const FiniteGroup& g, const ElementSet& s);
// Name used inside orbit-type literals: tilde as a "t" prefix.
std::string literal_name(const std::string& class_name);

// Character values of D_N, exact.
enum class DihedralIrrep { Trivial, Geometric, Star, Half, DoubleStar };

struct IrrepRow {
  DihedralIrrep kind;
  int j;  // index for Geometric and Half (N/2); 0 for Trivial
  std::string label;
  int dim;
};

struct CharacterEntry {
  Cyclotomic value;
  std::string symbolic;
};

struct CharacterTable {
  int N = 0;
  std::vector<int> class_reps;     // element ids of D_N
  std::vector<int> class_sizes;
  std::vector<std::string> class_labels;
  std::vector<IrrepRow> irreps;
  std::vector<std::vector<CharacterEntry>> rows;
};

// Code for an irreducible of D_N: j >= 0 selects chi_j (j = N/2 the one-dimensional
// sign-on-rotations irrep for even N); kStar and kDoubleStar the remaining ones.
constexpr int kStar = -1;
constexpr int kDoubleStar = -2;

Cyclotomic dihedral_character(int N, int code, int element);
// Image of vertex i (0-based, mod N) under an element of D_N: gamma(i) = i+1, kappa(i) = -i.
int dihedral_act(int N, int element, int i);
int dihedral_irrep_dim(int N, int code);
std::vector<int> dihedral_irrep_codes(int N);
std::string dihedral_irrep_label(int N, int code);
CharacterTable dihedral_character_table(int N);

struct IsotypicEntry {
  int j;
  int multiplicity;
  int dim;
};

// Decomposition of the permutation representation of D_N on R^N.
std::vector<IsotypicEntry> isotypic_multiplicities(int N);
// Index set of irreducibles occurring in R^N.
std::vector<int> isotypic_indices(int N);

}  // namespace eqdeg
