#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "eqdeg/errors.hpp"
#include "eqdeg/finite_group.hpp"

using namespace eqdeg;

namespace {

// Naive closure: repeat products of all pairs until nothing new appears.
ElementSet naive_closure(const FiniteGroup& g, ElementSet s) {
  s.set(0);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < g.order(); ++a) {
      if (!s.test(a)) continue;
      for (int b = 0; b < g.order(); ++b)
        if (s.test(b) && !s.test(g.mul(a, b))) {
          s.set(g.mul(a, b));
          grew = true;
        }
    }
  }
  return s;
}

// Every subgroup of the groups tested is generated by at most three elements.
std::unordered_set<ElementSet> three_generated(const FiniteGroup& g) {
  std::unordered_set<ElementSet> out;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a; b < g.order(); ++b)
      for (int c = b; c < g.order(); ++c) {
        ElementSet s;
        s.set(a);
        s.set(b);
        s.set(c);
        out.insert(naive_closure(g, s));
      }
  return out;
}

ElementSet named(const FiniteGroup& g, std::initializer_list<const char*> names) {
  ElementSet s;
  for (const char* n : names) s.set(*g.find(n));
  return s;
}

}  // namespace

TEST_CASE("dihedral groups satisfy the defining relations") {
  auto d1 = build_dihedral(1);
  CHECK(d1->order() == 2);
  auto d8 = build_dihedral(8);
  CHECK(d8->order() == 16);
  CHECK(d8->element_order(1) == 8);
  auto d3 = build_dihedral(3);
  CHECK(d3->verify());
  int g = 1, k = 3;
  for (int i = 0; i < 3; ++i) CHECK(d3->mul(k, d3->mul(i, k)) == (3 - i) % 3);
  CHECK(d3->mul(k, d3->mul(g, k)) == d3->mul(g, g));
  CHECK_THROWS_AS(build_dihedral(0), InvalidParameter);
}

TEST_CASE("adjoining Z2 doubles the order and adds a central element") {
  auto g = adjoin_z2(build_dihedral(8));
  CHECK(g->order() == 32);
  CHECK(g->verify());
  auto z2 = adjoin_z2(build_trivial());
  CHECK(z2->order() == 2);
  auto d3z = adjoin_z2(build_dihedral(3));
  CHECK(d3z->order() == 12);
  int minus = *d3z->find("(e,-1)");
  for (int x = 0; x < 12; ++x) CHECK(d3z->mul(x, minus) == d3z->mul(minus, x));
}

TEST_CASE("subgroup class counts") {
  CHECK(subgroup_conjugacy_classes(build_cyclic(2)).size() == 2);
  // D4 has 10 subgroups falling into 8 conjugacy classes
  CHECK(subgroup_conjugacy_classes(build_dihedral(4)).size() == 8);
  CHECK(subgroup_lattice(build_dihedral(4))->subgroups().size() == 10);
  CHECK(subgroup_conjugacy_classes(adjoin_z2(build_dihedral(8))).size() == 38);
}

TEST_CASE("class names over D8 x Z2 match the published abbreviation list") {
  const std::vector<std::string> expected = {
      "Z1",  "Z2",  "D1t",  "D1z", "D1",  "Z1m", "Z1p",  "D1zt", "D1pt", "D1p",
      "D2",  "Z4",  "D2t",  "D2zt", "D2d", "Z4d", "D2dt", "D2z", "Z2p",  "Z4p",
      "D4dt", "D2p", "D4",  "D2pt", "D4z", "D4zt", "Z8",  "Z8d", "D4t",  "D4d",
      "D4p", "Z8p", "D8",   "D4pt", "D8d", "D8z", "D8dt", "D8p"};
  auto classes = subgroup_conjugacy_classes(adjoin_z2(build_dihedral(8)));
  std::multiset<std::string> got, want(expected.begin(), expected.end());
  for (const auto& c : classes) got.insert(c.name);
  CHECK(got == want);
}

TEST_CASE("named subgroups have the documented members") {
  auto g = adjoin_z2(build_dihedral(8));
  auto lat = subgroup_lattice(g);
  auto cls = [&](const char* name) { return *lat->find_class(name); };
  CHECK(lat->class_of(named(*g, {"(e,1)", "(g^4,-1)"})) == cls("Z1m"));
  CHECK(lat->class_of(named(*g, {"(e,1)", "(k,-1)"})) == cls("D1z"));
  CHECK(lat->class_of(named(*g, {"(e,1)", "(kg,-1)"})) == cls("D1zt"));
  CHECK(lat->class_of(named(*g, {"(e,1)", "(g^4,-1)", "(k,1)", "(kg^4,-1)"})) == cls("D2d"));
  CHECK(lat->class_of(named(*g, {"(e,1)", "(g^4,-1)", "(kg,1)", "(kg^5,-1)"})) == cls("D2dt"));
  CHECK(lat->class_of(named(*g, {"(e,1)", "(g^2,-1)", "(g^4,1)", "(g^6,-1)", "(kg,1)", "(kg^3,-1)",
                                 "(kg^5,1)", "(kg^7,-1)"})) == cls("D4dt"));
  CHECK(literal_name("D4pt") == "tD4p");
  CHECK(literal_name("Z1m") == "Z2m");
  CHECK(*lat->find_class("tD4p") == cls("D4pt"));
}

TEST_CASE("every subgroup lies in exactly one class") {
  for (auto g : {build_dihedral(4), adjoin_z2(build_dihedral(4)), adjoin_z2(build_dihedral(8)),
                 adjoin_z2(build_dihedral(3))}) {
    auto lat = subgroup_lattice(g);
    auto oracle = three_generated(*g);
    CHECK(lat->subgroups().size() == oracle.size());
    std::size_t total = 0;
    for (std::size_t c = 0; c < lat->classes().size(); ++c) {
      const auto& cls = lat->classes()[c];
      total += cls.class_size;
      CHECK(weyl_order(g, cls.representative) * cls.representative.order() * cls.class_size == g->order());
      CHECK(lat->weyl_order(static_cast<int>(c)) == weyl_order(g, cls.representative));
      for (const auto& m : lat->class_members(static_cast<int>(c))) CHECK(oracle.count(m) == 1);
    }
    CHECK(total == oracle.size());
    for (std::size_t c = 1; c < lat->classes().size(); ++c) {
      const auto& a = lat->classes()[c - 1].representative;
      const auto& b = lat->classes()[c].representative;
      CHECK((a.order() < b.order() || (a.order() == b.order() && set_less(a.members, b.members))));
    }
  }
}

TEST_CASE("Weyl orders and subgroup counts in D8") {
  auto d8 = build_dihedral(8);
  auto lat = subgroup_lattice(d8);
  ElementSet all;
  for (int x = 0; x < 16; ++x) all.set(x);
  ElementSet trivial;
  trivial.set(0);
  CHECK(weyl_order(d8, {d8, all}) == 1);
  CHECK(weyl_order(d8, {d8, trivial}) == 16);
  ElementSet kappa = named(*d8, {"e", "k"});
  CHECK(weyl_order(d8, {d8, kappa}) == 2);
  ElementSet notsub = named(*d8, {"e", "g"});
  CHECK_THROWS_AS(weyl_order(d8, {d8, notsub}), InvalidParameter);

  for (const auto& cls : lat->classes()) CHECK(n_count(d8, {d8, trivial}, cls) == cls.class_size);
  for (const auto& cls : lat->classes()) CHECK(n_count(d8, cls.representative, cls) == 1);
  // <g^4> is central, so it lies in every conjugate of <k, g^4>: {e, g^4, k, kg^4} has 2 conjugates.
  ElementSet c2 = named(*d8, {"e", "g^4"});
  int cls = lat->class_of(named(*d8, {"e", "g^4", "k", "kg^4"}));
  int brute = 0;
  std::unordered_set<ElementSet> conj;
  for (int y = 0; y < 16; ++y) conj.insert(conjugate_set(*d8, lat->classes()[cls].representative.members, y));
  for (const auto& k : conj)
    if ((c2 & ~k).none()) ++brute;
  CHECK(brute == 2);
  CHECK(n_count(d8, {d8, c2}, lat->classes()[cls]) == brute);
  CHECK(lat->n_count(c2, cls) == brute);

  // Weyl order divides |G|/|H| whenever defined.
  for (const auto& c : lat->classes()) CHECK((16 / c.representative.order()) % weyl_order(d8, c.representative) == 0);
}

TEST_CASE("character table of D8") {
  auto t = dihedral_character_table(8);
  CHECK(t.rows.size() == 7);
  int sumsq = 0;
  for (const auto& r : t.irreps) sumsq += r.dim * r.dim;
  CHECK(sumsq == 16);
  // chi_1(g) = sqrt(2) = z8 + z8^-1 exactly
  Cyclotomic root2 = Cyclotomic::zeta_power(8, 1) + Cyclotomic::zeta_power(8, 7);
  CHECK(t.rows[1][1].value == root2);
  CHECK(root2 * root2 == Cyclotomic::integer(2));
  CHECK(t.rows[1][1].symbolic == "2cos(2pi*1/8)");
  for (const auto& e : t.rows[0]) CHECK(e.value == Cyclotomic::integer(1));
}

TEST_CASE("character orthogonality is exact") {
  for (int N = 1; N <= 12; ++N) {
    auto t = dihedral_character_table(N);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      for (std::size_t j = 0; j < t.rows.size(); ++j) {
        Cyclotomic s = Cyclotomic::integer(0);
        for (std::size_t c = 0; c < t.class_reps.size(); ++c)
          s = s + t.rows[i][c].value * t.rows[j][c].value.conj() * t.class_sizes[c];
        CHECK(s == Cyclotomic::integer(i == j ? 2 * N : 0));
      }
  }
}

TEST_CASE("isotypic multiplicities of the permutation representation") {
  auto m8 = isotypic_multiplicities(8);
  REQUIRE(m8.size() == 5);
  std::vector<int> dims;
  for (std::size_t i = 0; i < m8.size(); ++i) {
    CHECK(m8[i].j == static_cast<int>(i));
    CHECK(m8[i].multiplicity == 1);
    dims.push_back(m8[i].dim);
  }
  CHECK(dims == std::vector<int>{1, 2, 2, 2, 1});
  auto m3 = isotypic_multiplicities(3);
  REQUIRE(m3.size() == 2);
  CHECK(m3[0].multiplicity == 1);
  CHECK(m3[1].multiplicity == 1);
  for (int N = 1; N <= 16; ++N) {
    int total = 0;
    for (const auto& e : isotypic_multiplicities(N)) total += e.multiplicity * e.dim;
    CHECK(total == N);
    // trace of the permutation matrix: kappa fixes 0 (and N/2 when N is even)
    int fixed_k = 0, fixed_kg = 0;
    for (int i = 0; i < N; ++i) {
      fixed_k += dihedral_act(N, N, i) == i;
      fixed_kg += dihedral_act(N, N + 1, i) == i;
    }
    CHECK(fixed_k == (N % 2 == 0 ? 2 : 1));
    CHECK(fixed_kg == (1 - (N % 2 == 0 ? 1 : -1)) / 2);
  }
}

TEST_CASE("class list JSON export") {
  auto j = classes_to_json(subgroup_conjugacy_classes(build_cyclic(2)));
  REQUIRE(j.size() == 2);
  CHECK(j[1]["name"] == "Z2");
  CHECK(j[1]["order"] == 2);
  CHECK(j[1]["representative"].size() == 2);
}
