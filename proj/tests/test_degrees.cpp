#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "eqdeg/degrees.hpp"
#include "eqdeg/errors.hpp"

using namespace eqdeg;

namespace {

AnalysisConfig single(int j, double mu, double beta = 1.0, int multiplicity = 1) {
  AnalysisConfig c;
  c.gamma_n = 8;
  c.beta = beta;
  c.eigenvalues = {{j, mu, multiplicity}};
  return c;
}

std::vector<int> maximal_bases(const Representations& reps, bool antipodal = true) {
  std::set<int> out;
  for (int j : isotypic_indices(reps.gamma_n()))
    for (int id : reps.maximal_orbit_types({1, j, antipodal}).members) out.insert(id);
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("operator eigenvalues") {
  auto c = single(2, -5.0);
  CHECK(operator_eigenvalue(0, 2, c) == doctest::Approx(-5.0));
  CHECK(operator_eigenvalue(1, 2, c) == doctest::Approx(-2.0));
  CHECK(operator_eigenvalue(3, 2, c) == doctest::Approx(0.4));
  CHECK(operator_eigenvalue(0, 2, single(2, -5.0, 0.5)) == doctest::Approx(-1.25));
  CHECK_THROWS_AS(operator_eigenvalue(2, 2, single(2, -4.0)), PreconditionViolation);
  CHECK_THROWS_AS(operator_eigenvalue(1, 2, single(2, -1.0 - 1e-14)), PreconditionViolation);
  CHECK_THROWS_AS(operator_eigenvalue(1, 3, c), InvalidParameter);
}

TEST_CASE("index sets") {
  auto none = sigma_sets(single(1, 0.5));
  CHECK(none.minus.empty());
  CHECK(none.zero.empty());
  auto s = sigma_sets(single(1, -5.0));
  REQUIRE(s.zero.size() == 3);
  for (int m = 0; m < 3; ++m) CHECK(s.zero[m].m == m);
  CHECK(s.zero[2].mu_mj == doctest::Approx(-0.2));
  auto even = sigma_sets(single(1, -5.0, 1.0, 2));
  CHECK(even.minus.size() == 3);
  CHECK(even.zero.empty());
  auto guarded = single(1, -50.0);
  guarded.truncation_guard = 3;
  CHECK_THROWS_AS(sigma_sets(guarded), InvalidParameter);
  CHECK_THROWS_AS(sigma_sets(single(1, -9.0)), PreconditionViolation);
}

TEST_CASE("config JSON round trip") {
  auto c = AnalysisConfig::from_json(nlohmann::json::parse(
      R"({"N": 8, "beta": 0.5, "eigenvalues": [{"j": 0, "mu": -2.5}, {"j": "**", "mu": 1, "multiplicity": 3}]})"));
  CHECK(c.gamma_n == 8);
  CHECK(c.eigenvalues.size() == 2);
  CHECK(c.eigenvalues[1].j == kDoubleStar);
  CHECK(c.eigenvalues[1].multiplicity == 3);
  auto back = AnalysisConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK_THROWS_AS(AnalysisConfig::from_json(nlohmann::json::parse(R"({"N": 8})")), InvalidParameter);
  CHECK_THROWS_AS(AnalysisConfig::from_json(nlohmann::json::parse(R"({"N": 8, "beta": -1, "eigenvalues": []})")),
                  InvalidParameter);
}

TEST_CASE("basic degrees of D8") {
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  auto d0 = basic_degree(*reps, {1, 0, false});
  CHECK(d0.to_text() == "1(G) - 1(D1 x D8p)");
  CHECK(d0.coeff(*L.parse("(D1 x D8p)")) == -1);
  CHECK(basic_degree(*reps, {1, 0}).to_text() == "1(G) - 1(D2 ^D1 x^D8 D8p)");
  CHECK(basic_degree(*reps, {1, kDoubleStar, false}).to_text() == "1(G) - 1(D2 ^D1 x^tD4p D8p)");
  auto d2 = basic_degree(*reps, {1, 2});
  CHECK(d2.terms().size() == 7);
  CHECK(d2.coeff(*L.parse("(D4 ^Z1 x^Z4d D8p)")) == -1);
  CHECK(d2.coeff(*L.parse("(D2 ^D1 x^Z4d Z4p)")) == 1);
  CHECK(basic_degree(*reps, {0, 0, false}) == generator(reps->lattice_ptr(), L.top(), -1));
}

TEST_CASE("basic degrees are involutions") {
  for (int N : {3, 4, 8}) {
    auto reps = Representations::for_dihedral(N);
    auto one = unit(reps->lattice_ptr());
    for (int m : {0, 1, 2})
      for (int j : dihedral_irrep_codes(N))
        for (bool a : {true, false}) {
          IrrepLabel label{m, j, a};
          auto d = basic_degree(*reps, label);
          CHECK_MESSAGE(multiply(d, d) == one, "N = " << N << " " << to_string(label) << ": " << d.to_text());
        }
  }
}

TEST_CASE("folding maps basic degrees to basic degrees") {
  auto reps = Representations::for_dihedral(8);
  for (int j : dihedral_irrep_codes(8))
    for (bool a : {true, false}) {
      auto d = basic_degree(*reps, {1, j, a});
      for (int s = 2; s <= 3; ++s) CHECK(fold(d, s) == basic_degree(*reps, {s, j, a}));
    }
}

TEST_CASE("degree invariant") {
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  CHECK(degree_invariant(single(4, 0.5)) == unit(reps->lattice_ptr()));
  // Sigma_0 = {(0,4), (1,4)}
  auto c = single(4, -3.0);
  auto inv = degree_invariant(c);
  CHECK(inv == multiply(basic_degree(*reps, {0, 4}), basic_degree(*reps, {1, 4})));
  CHECK(inv.coeff(*L.parse("(D2 ^D1 x^D8d D8p)")) == -1);
  // two mode-1 factors: -x0 exactly when the parities differ
  AnalysisConfig two;
  two.gamma_n = 8;
  two.eigenvalues = {{1, -2.0, 1}, {2, -2.0, 1}};
  auto prod = degree_invariant(two);
  for (int h : maximal_bases(*reps)) {
    int d1 = reps->fixed_point_dim({1, 1}, h), d2 = reps->fixed_point_dim({1, 2}, h);
    int expected = (d1 + d2) % 2 == 1 ? -x0_of(L.weyl(h)) : 0;
    CHECK_MESSAGE(prod.coeff(h) == expected, L.name(h));
  }
}

TEST_CASE("closed-form coefficients agree with products on small folds") {
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  auto lat = reps->lattice_ptr();
  auto js = isotypic_indices(8);
  int fixed_two = 0, fixed_many = 0, mixed = 0;
  for (int h : maximal_bases(*reps)) {
    // fixed folding, two and three factors
    for (int j1 : js)
      for (int j2 : js) {
        auto p = multiply(basic_degree(*reps, {1, j1}), basic_degree(*reps, {1, j2}));
        int odd = (reps->fixed_point_dim({1, j1}, h) + reps->fixed_point_dim({1, j2}, h)) % 2;
        CHECK(p.coeff(h) == (odd ? -x0_of(L.weyl(h)) : 0));
        ++fixed_two;
        for (int j3 : js) {
          auto q = multiply(p, basic_degree(*reps, {1, j3}));
          int odd3 = (odd + reps->fixed_point_dim({1, j3}, h)) % 2;
          CHECK(q.coeff(h) == (odd3 ? -x0_of(L.weyl(h)) : 0));
          ++fixed_many;
        }
      }
    // distinct foldings s <= 2 and the full theorem on {1, 2}
    for (int j1 : js)
      for (int j2 : js) {
        std::vector<FoldedFactor> factors{{1, j1}, {2, j2}};
        auto p = multiply(basic_degree(*reps, {1, j1}), basic_degree(*reps, {2, j2}));
        for (int s0 = 1; s0 <= 2; ++s0) {
          CHECK_MESSAGE(product_coeff(*reps, h, 1, s0, factors) == p.coeff(L.fold_class(h, s0)),
                        L.name(h) << " s0 = " << s0 << " j = " << j1 << ", " << j2);
          ++mixed;
        }
      }
  }
  CHECK(fixed_two >= 5);
  CHECK(fixed_many >= 5);
  CHECK(mixed >= 5);
  CHECK_THROWS_AS(product_coeff(*reps, maximal_bases(*reps)[0], 1, 1, {{1, 0}, {1, 2}}), InvalidParameter);
}

TEST_CASE("worked case for the j = 4 maximal type") {
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  int h = *L.parse("(D2 ^D1 x^D8d D8p)");
  CHECK(L.m_of_class(h) == 2);
  CHECK(reps->fixed_point_dim({1, 4}, h) % 2 == 1);
  CHECK(reps->fixed_point_dim({2, 4}, L.fold_class(h, 2)) % 2 == 1);
  std::int64_t c = product_coeff(*reps, h, 1, 1, {{1, 4}, {2, 4}});
  CHECK(c == -x0_of(L.weyl(h)));
  CHECK(c == multiply(basic_degree(*reps, {1, 4}), basic_degree(*reps, {2, 4})).coeff(h));
}

TEST_CASE("cross-type containment not covered by the closed form") {
  // (D8 ^Z1 x^Z2m D8p)#1 lies in the 3-fold of #2, since 3 * 3 = 1 mod 8
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  int h1 = *L.parse("(D8 ^Z1 x^Z2m D8p)#1"), h2 = *L.parse("(D8 ^Z1 x^Z2m D8p)#2");
  CHECK(L.subconjugate(h1, L.fold_class(h2, 3)));
  auto p = multiply(basic_degree(*reps, {1, 1}), basic_degree(*reps, {3, 3}));
  std::int64_t closed = product_coeff(*reps, h1, 1, 1, {{1, 1}, {3, 3}});
  MESSAGE("coefficient of " << L.name(h1) << ": product " << p.coeff(h1) << ", closed form " << closed);
  CHECK(p.coeff(h1) != closed);
}

TEST_CASE("fast coefficients match the invariant on configs with modes up to 2") {
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  auto bases = maximal_bases(*reps);
  std::vector<int> targets;
  for (int h : bases)
    for (int s0 = 1; s0 <= 4; ++s0) targets.push_back(L.fold_class(h, s0));
  std::mt19937 rng(2024);
  const double betas[] = {0.5, 1.0, 2.0};
  int configs = 0, nonzero = 0;
  while (configs < 12) {
    AnalysisConfig c;
    c.gamma_n = 8;
    c.beta = betas[configs % 3];
    std::uniform_real_distribution<double> mu(-8.9 / (c.beta * c.beta), 2.0);
    for (int j : isotypic_indices(8)) c.eigenvalues.push_back({j, mu(rng), 1});
    ++configs;
    auto inv = degree_invariant(c, &targets);
    for (int h : bases)
      for (int s0 = 1; s0 <= 4; ++s0) {
        std::int64_t fast = coeff_maximal_fast(*reps, h, s0, c);
        CHECK_MESSAGE(fast == inv.coeff(L.fold_class(h, s0)), L.name(h) << " s0 = " << s0);
        nonzero += fast != 0;
      }
  }
  CHECK(nonzero > 0);
}

TEST_CASE("report layout") {
  auto c = single(4, -3.0);
  auto r = degree_report(c);
  for (const char* key : {"sigma_minus", "sigma_zero", "invariant", "maximal_kind_nonzero"}) CHECK(r.contains(key));
  REQUIRE(r["maximal_kind_nonzero"].size() == 1);
  CHECK(r["maximal_kind_nonzero"][0]["orbit_type"] == "(D2 ^D1 x^D8d D8p)");
  CHECK(r["maximal_kind_nonzero"][0]["coeff"] == -1);
  CHECK(r["maximal_kind_nonzero"][0]["witness"][0]["j"] == 4);
}
