#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "eqdeg/burnside.hpp"
#include "eqdeg/errors.hpp"
#include "eqdeg/representations.hpp"

using namespace eqdeg;

namespace {

std::shared_ptr<const FiniteOrbitLattice> finite(const std::string& spec) {
  return std::make_shared<const FiniteOrbitLattice>(parse_group(spec));
}

int id_of(const OrbitLattice& lat, const std::string& name) {
  auto id = lat.parse(name);
  REQUIRE_MESSAGE(id.has_value(), name);
  return *id;
}

void check_all_pairs(const std::shared_ptr<const FiniteOrbitLattice>& lat) {
  int n = static_cast<int>(lat->subgroups().classes().size());
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) {
      auto fast = generator_product(lat, h, k);
      auto slow = brute_force_product(lat, h, k);
      CHECK_MESSAGE(fast == slow, lat->name(h) << " * " << lat->name(k) << ": " << fast.to_text() << " vs "
                                               << slow.to_text());
    }
}

}  // namespace

TEST_CASE("small finite Burnside rings") {
  auto z2 = finite("Z2");
  int e = id_of(*z2, "(Z1)"), top = z2->top();
  CHECK(generator_product(z2, e, e).coeff(e) == 2);
  CHECK(generator_product(z2, e, e).terms().size() == 1);
  CHECK(generator_product(z2, e, top) == generator(z2, e));
  CHECK(generator_product(z2, top, top) == unit(z2));

  auto d3 = finite("D3");
  int e3 = id_of(*d3, "(Z1)");
  CHECK(generator_product(d3, e3, e3) == generator(d3, e3, 6));
}

TEST_CASE("recurrence matches orbit counting on every pair") {
  for (const char* spec : {"Z2", "Z4", "D3", "D4", "D4xZ2"}) {
    INFO(spec);
    check_all_pairs(finite(spec));
  }
}

TEST_CASE("recurrence matches orbit counting on sampled pairs of D8 x Z2") {
  auto lat = finite("D8xZ2");
  int n = static_cast<int>(lat->subgroups().classes().size());
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int t = 0; t < 60; ++t) {
    int h = pick(rng), k = pick(rng);
    CHECK_MESSAGE(generator_product(lat, h, k) == brute_force_product(lat, h, k),
                  lat->name(h) << " * " << lat->name(k));
  }
}

TEST_CASE("ring axioms and term-order invariance") {
  auto lat = finite("D4xZ2");
  int n = static_cast<int>(lat->subgroups().classes().size());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-3, 3);
  auto random_element = [&] {
    BurnsideElement a(lat);
    for (int i = 0; i < 3; ++i) a.add(pick(rng), coef(rng));
    return a;
  };
  for (int t = 0; t < 20; ++t) {
    auto a = random_element(), b = random_element(), c = random_element();
    CHECK(multiply(a, b) == multiply(b, a));
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    CHECK(multiply(a, unit(lat)) == a);
    CHECK(multiply(a, add(b, c)) == add(multiply(a, b), multiply(a, c)));
    CHECK(multiply(a, b, TermOrder::Ascending) == multiply(a, b, TermOrder::Descending));
  }
}

TEST_CASE("generator product coefficient of folded types") {
  CHECK(generator_product_coeff(2, 1, 2, 3, 1) == 2);
  CHECK(generator_product_coeff(2, 1, 2, 3, 2) == 0);
  CHECK(generator_product_coeff(1, 2, 2, 4, 2) == 0);
  CHECK(generator_product_coeff(1, 2, 1, 3, 1) == 1);
  CHECK(generator_product_coeff(2, 4, 2, 1, 1) == 0);
  CHECK_THROWS_AS(generator_product_coeff(2, 1, 0, 1, 1), InvalidParameter);
}

TEST_CASE("products of folded maximal types over O(2) x D8 x Z2") {
  auto reps = Representations::for_dihedral(8);
  std::shared_ptr<const OrbitLattice> lat = reps->lattice_ptr();
  const AmalgamLattice& L = reps->lattice();
  int checked = 0;
  for (int j : isotypic_indices(8))
    for (int base : reps->maximal_orbit_types({1, j, true}).members)
      for (int s0 = 1; s0 <= 4; ++s0)
        for (int s1 = 1; s1 <= 4; ++s1) {
          int a = L.fold_class(base, s0), b = L.fold_class(base, s1);
          auto prod = generator_product(lat, a, b);
          CHECK(prod == generator_product(lat, b, a));
          CHECK(prod == generator_product(lat, a, b, TermOrder::Descending));
          int g = std::gcd(s0, s1);
          std::int64_t expected = generator_product_coeff(L.weyl(base), L.m_of_class(base), s0, s1, g);
          CHECK_MESSAGE(prod.coeff(L.fold_class(base, g)) == expected,
                        L.name(a) << " * " << L.name(b) << " = " << prod.to_text());
          ++checked;
        }
  CHECK(checked > 100);
}

TEST_CASE("text and JSON output") {
  auto z2 = finite("Z2");
  int e = id_of(*z2, "(Z1)");
  BurnsideElement a = unit(z2);
  a.add(e, -2);
  CHECK(a.to_text() == "1(Z2) - 2(Z1)");
  auto j = a.to_json();
  REQUIRE(j.size() == 2);
  CHECK(j[0]["orbit_type"] == "(Z2)");
  CHECK(j[0]["coeff"] == 1);
  CHECK(j[1]["coeff"] == -2);
  CHECK(BurnsideElement(z2).to_text() == "0");
}
