#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "eqdeg/errors.hpp"
#include "eqdeg/pendula.hpp"

using namespace eqdeg;

TEST_CASE("cycle laplacian spectrum") {
  auto spec = cycle_laplacian(8);
  const double r2 = std::sqrt(2.0);
  const double expected[] = {0.0, 2.0 - r2, 2.0, 2.0 + r2, 4.0};
  REQUIRE(spec.spectrum.size() == 5);
  for (int j = 0; j < 5; ++j) {
    CHECK(spec.spectrum[j].j == j);
    CHECK(spec.spectrum[j].z_value == doctest::Approx(expected[j]).epsilon(1e-14));
    CHECK(spec.spectrum[j].z.to_double() == doctest::Approx(expected[j]).epsilon(1e-14));
  }
  CHECK(spec.spectrum[2].z == Cyclotomic::integer(2, 8));
  auto four = cycle_laplacian(4);
  CHECK(four.spectrum[1].z == Cyclotomic::integer(2, 4));
  CHECK(four.spectrum[2].z == Cyclotomic::integer(4, 4));
  for (int n : {3, 5, 8, 12}) CHECK(cycle_laplacian(n).spectrum[0].z == Cyclotomic::integer(0, n));
  CHECK_THROWS_AS(cycle_laplacian(2), InvalidParameter);
}

TEST_CASE("matrix is symmetric, circulant, with zero row sums") {
  for (int n : {3, 4, 8}) {
    auto spec = cycle_laplacian(n);
    for (int i = 0; i < n; ++i) {
      int sum = 0;
      for (int k = 0; k < n; ++k) {
        sum += spec.matrix[i][k];
        CHECK(spec.matrix[i][k] == spec.matrix[k][i]);
        CHECK(spec.matrix[i][k] == spec.matrix[(i + 1) % n][(k + 1) % n]);
      }
      CHECK(sum == 0);
      CHECK(spec.matrix[i][i] == -2);
    }
  }
}

TEST_CASE("eigenvectors hold exactly") {
  // L v_j = -z_j v_j for v_j = (zeta^{jk})_k, in Z[zeta_N]
  for (int n : {3, 5, 8}) {
    auto spec = cycle_laplacian(n);
    for (const auto& e : spec.spectrum)
      for (int i = 0; i < n; ++i) {
        Cyclotomic lv(n);
        for (int k = 0; k < n; ++k)
          if (spec.matrix[i][k] != 0) lv = lv + Cyclotomic::zeta_power(n, e.j * k) * spec.matrix[i][k];
        CHECK(lv == -(e.z * Cyclotomic::zeta_power(n, e.j * i)));
      }
  }
}

TEST_CASE("pendula configs") {
  auto sys = pendula_system(8, 0.99, 2);
  const double r2 = std::sqrt(2.0);
  const double mu[] = {-1.0, -(3.0 - r2), -3.0, -(3.0 + r2), -5.0};
  REQUIRE(sys.analysis.eigenvalues.size() == 5);
  for (int j = 0; j < 5; ++j) {
    CHECK(sys.analysis.eigenvalues[j].mu == doctest::Approx(mu[j]).epsilon(1e-14));
    CHECK(sys.analysis.eigenvalues[j].multiplicity == 1);
  }
  CHECK(sys.linear_part[0][0] == -3.0);
  CHECK(sys.linear_part[0][1] == 1.0);
  for (int n : {3, 6, 8}) CHECK(pendula_config(n, 0.7, 4).eigenvalues[0].mu == -1.0);

  // beta = 1 puts mode 1 of the constant component on resonance
  try {
    pendula_config(8, 1.0, 2);
    FAIL("expected a resonance error");
  } catch (const PreconditionViolation& e) {
    CHECK(std::string(e.what()).find("(m=1, j=0)") != std::string::npos);
  }
  // beta^2 (z_2 + 1) = 3 beta^2 = 4
  CHECK_THROWS_AS(pendula_config(8, 2.0 / std::sqrt(3.0), 2), PreconditionViolation);
  CHECK_THROWS_AS(pendula_config(8, 0.5, 3), InvalidParameter);
  CHECK_THROWS_AS(pendula_config(8, 0.5, 0), InvalidParameter);
  CHECK_THROWS_AS(pendula_config(8, -1.0, 2), InvalidParameter);
  CHECK_THROWS_AS(pendula_config(2, 0.5, 2), InvalidParameter);
}

TEST_CASE("user supplied coupling") {
  const int n = 8;
  RealMatrix cycle(n, std::vector<double>(n, 0.0));
  RealMatrix second = cycle;
  for (int i = 0; i < n; ++i) {
    cycle[i][i] = -2;
    cycle[i][(i + 1) % n] = cycle[i][(i + n - 1) % n] = 1;
    second[i][i] = -2;
    second[i][(i + 2) % n] = second[i][(i + n - 2) % n] = 1;
  }
  auto a = pendula_system(n, 0.8, 2, cycle).analysis, b = pendula_config(n, 0.8, 2);
  for (int j = 0; j < 5; ++j) CHECK(a.eigenvalues[j].mu == doctest::Approx(b.eigenvalues[j].mu));
  // second-neighbour coupling sees z_{2j}
  auto c = pendula_system(n, 0.8, 2, second).analysis;
  auto z = cycle_laplacian(n).spectrum;
  for (int j = 0; j < 5; ++j) {
    int j2 = std::min(2 * j % n, n - 2 * j % n);
    CHECK(c.eigenvalues[j].mu == doctest::Approx(-(z[j2].z_value + 1.0)));
  }
  RealMatrix broken = cycle;
  broken[0][1] = 2;
  CHECK_THROWS_AS(pendula_system(n, 0.8, 2, broken), InvalidParameter);
  CHECK_THROWS_AS(pendula_system(n, 0.8, 2, RealMatrix(3, std::vector<double>(3))), InvalidParameter);

  auto j = nlohmann::json::parse(R"({"N": 8, "beta": 0.8, "q": 2, "coupling": "cycle"})");
  CHECK(is_pendula_json(j));
  CHECK(pendula_system_from_json(j).analysis.to_json() == b.to_json());
  CHECK_THROWS_AS(pendula_system_from_json(nlohmann::json::parse(R"({"N": 8, "beta": 0.8, "coupling": "star"})")),
                  InvalidParameter);
}

TEST_CASE("existence report") {
  AnalysisConfig positive;
  positive.eigenvalues = {{0, 1.0, 1}, {4, 0.3, 1}};
  CHECK(existence_report(positive).entries.empty());

  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  auto config = pendula_config(8, 0.99, 2);
  auto report = existence_report(*reps, config);
  REQUIRE_FALSE(report.entries.empty());
  std::set<std::pair<int, int>> seen;
  for (const auto& e : report.entries) {
    CHECK(e.coeff != 0);
    CHECK(e.coeff == e.invariant_coeff);
    CHECK(reps->is_maximal_kind(e.orbit_type, true).has_value());
    seen.insert({e.orbit_type, e.j});
  }
  CHECK(report.metadata["closed_form_disagreements"] == 0);
  // every member of the maximal sets for j = 2, 4 appears with -x0; for j = 1, 3 the members are
  // reported unless shared with the other index
  auto m1 = reps->maximal_orbit_types({1, 1}).members, m3 = reps->maximal_orbit_types({1, 3}).members;
  std::set<int> shared;
  for (int h : m1)
    if (std::count(m3.begin(), m3.end(), h)) shared.insert(h);
  CHECK(shared.size() == 2);
  for (int j = 1; j <= 4; ++j)
    for (int h : reps->maximal_orbit_types({1, j}).members) {
      bool expect = !shared.count(h);
      CHECK_MESSAGE(seen.count({h, j}) == static_cast<std::size_t>(expect), L.name(h) << " j = " << j);
      if (expect)
        for (const auto& e : report.entries)
          if (e.orbit_type == h) CHECK(e.coeff == -x0_of(L.weyl(h)));
    }
  CHECK(seen.count({*L.parse("(D2 ^D1 x^D8d D8p)"), 4}) == 1);
}

TEST_CASE("report depends only on the signs of m^2 + beta^2 mu") {
  auto reps = Representations::for_dihedral(8);
  auto base = pendula_config(8, 0.99, 2);
  auto scaled = base;
  scaled.beta = 2.0 * base.beta;
  for (auto& e : scaled.eigenvalues) e.mu /= 4.0;
  auto a = existence_report(*reps, base).to_json(), b = existence_report(*reps, scaled).to_json();
  CHECK(a["entries"] == b["entries"]);
}
