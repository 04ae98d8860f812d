// Acceptance run: one PASS/FAIL line per criterion, followed by indented diagnostics.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "eqdeg/burnside.hpp"
#include "eqdeg/degrees.hpp"
#include "eqdeg/errors.hpp"
#include "eqdeg/fixtures.hpp"
#include "eqdeg/pendula.hpp"
#ifdef EQDEG_HAVE_SOLVER
#include "eqdeg/galerkin.hpp"
#endif

using namespace eqdeg;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> notes;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<int> maximal_bases(const Representations& reps, std::initializer_list<bool> actions) {
  std::set<int> out;
  for (bool a : actions)
    for (int j : isotypic_indices(reps.gamma_n()))
      for (int id : reps.maximal_orbit_types({1, j, a}).members) out.insert(id);
  return {out.begin(), out.end()};
}

Outcome fixtures_criterion() {
  auto t0 = Clock::now();
  Outcome o;
  auto set = load_fixtures(default_fixture_path());
  auto reps = Representations::for_dihedral(8);
  int maximal = 0, degree = 0;
  for (const auto& c : compare_fixtures(set, *reps, false)) {
    maximal += c.maximal_match;
    degree += c.degree_match;
    o.notes.push_back(fmt::format("j={} with V_j, Z2 antipodal: maximal {}, degree {}; computed {}", c.j,
                                  c.maximal_match ? "match" : "differ", c.degree_match ? "match" : "differ",
                                  c.computed_degree));
  }
  int mapped_max = 0, mapped_deg = 0, mapped_sign = 0;
  for (const auto& c : compare_fixtures(set, *reps, true)) {
    mapped_max += c.maximal_match;
    mapped_deg += c.degree_match;
    mapped_sign += c.degree_sign_match;
    o.notes.push_back(fmt::format("j={} via {}: maximal {}, degree {}, signs {}", c.j, to_string(c.label),
                                  c.maximal_match ? "match" : "differ", c.degree_match ? "match" : "differ",
                                  c.degree_sign_match ? "match" : "differ"));
  }
  o.notes.push_back(fmt::format("matching irreducibles: {}/5 maximal sets, {}/5 degrees exact, {}/5 up to sign", mapped_max,
                                mapped_deg, mapped_sign));
  o.notes.push_back(
      "listed +-2 coefficients sit on types without (e,-1), where |W(H)| >= 2 forces |n_H| <= 1 at a maximal type; "
      "a -2 there would break deg^2 = (G)");
  double secs = seconds_since(t0);
  o.pass = maximal == 5 && degree == 5 && secs < 60;
  o.summary = fmt::format("{}/5 maximal sets and {}/5 basic degrees reproduced exactly by V_(1,j) ({:.1f} s)", maximal,
                          degree, secs);
  return o;
}

Outcome involution_criterion() {
  Outcome o;
  int checked = 0, bad = 0;
  for (int n : {3, 4, 8}) {
    auto reps = Representations::for_dihedral(n);
    auto one = unit(reps->lattice_ptr());
    for (int m : {0, 1, 2})
      for (int j : dihedral_irrep_codes(n))
        for (bool a : {true, false}) {
          auto d = basic_degree(*reps, {m, j, a});
          ++checked;
          if (multiply(d, d) != one) {
            ++bad;
            o.notes.push_back(fmt::format("D{} {}: square is not (G)", n, to_string(IrrepLabel{m, j, a})));
          }
        }
  }
  o.pass = bad == 0 && checked > 0;
  o.summary = fmt::format("{} basic degrees over D3, D4, D8 (m = 0..2, both Z2 actions), {} failures", checked, bad);
  return o;
}

Outcome burnside_criterion(std::uint64_t seed) {
  Outcome o;
  int pairs = 0, bad = 0;
  for (const char* spec : {"Z2", "D3", "D4"}) {
    auto lat = std::make_shared<const FiniteOrbitLattice>(parse_group(spec));
    int n = static_cast<int>(lat->subgroups().classes().size());
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        ++pairs;
        bad += generator_product(lat, h, k) != brute_force_product(lat, h, k);
      }
  }
  auto big = std::make_shared<const FiniteOrbitLattice>(parse_group("D8xZ2"));
  int n = static_cast<int>(big->subgroups().classes().size());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  int sampled = 0;
  for (; sampled < 60; ++sampled) {
    int h = pick(rng), k = pick(rng);
    bool ok = generator_product(big, h, k) == brute_force_product(big, h, k);
    bad += !ok;
    if (!ok) o.notes.push_back(big->name(h) + " * " + big->name(k) + " differs");
  }
  o.pass = bad == 0;
  o.summary = fmt::format("{} exhaustive pairs (Z2, D3, D4) and {} sampled D8xZ2 pairs (seed {}), {} mismatches", pairs,
                          sampled, seed, bad);
  return o;
}

Outcome folding_criterion() {
  Outcome o;
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  int cases = 0, bad = 0, counterexamples = 0;
  bool named_case = false;
  for (int h : maximal_bases(*reps, {true, false}))
    for (int s0 = 1; s0 <= 6; ++s0)
      for (int s1 = 1; s1 <= 6; ++s1) {
        bool closed = folding_relation(L.m_of_class(h), s0, s1);
        // the relation normalizes to s1 <= s0, so the oracle nests the smaller fold in the larger
        int hi = std::max(s0, s1), lo = std::min(s0, s1);
        bool oracle = L.subconjugate(L.fold_class(h, lo), L.fold_class(h, hi));
        ++cases;
        if (closed != oracle) {
          ++bad;
          o.notes.push_back(fmt::format("{} s0={} s1={}: relation {}, oracle {}", L.name(h), s0, s1, closed, oracle));
        }
        if (s0 % s1 == 0 && !oracle) {
          ++counterexamples;
          if (L.m_of_class(h) == 4 && s0 == 2 && s1 == 1) named_case = true;
        }
      }
  o.notes.push_back(fmt::format("{} cases with s1 | s0 where the folds are not nested; m=4, (2,1) among them: {}",
                                counterexamples, named_case ? "yes" : "no"));
  o.pass = bad == 0 && cases >= 100 && counterexamples > 0 && named_case;
  o.summary = fmt::format("{} (type, s0, s1) cases, {} disagreements, {} counterexamples to universal nesting", cases,
                          bad, counterexamples);
  return o;
}

Outcome fast_formula_criterion(std::uint64_t seed) {
  auto t0 = Clock::now();
  Outcome o;
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  auto bases = maximal_bases(*reps, {true});
  std::vector<int> targets;
  for (int h : bases)
    for (int s0 = 1; s0 <= 4; ++s0) targets.push_back(L.fold_class(h, s0));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mu(-10.0, 2.0), beta(0.5, 1.5);
  int configs = 0, compared = 0, bad = 0, bad_configs = 0;
  while (configs < 24) {
    AnalysisConfig c;
    c.gamma_n = 8;
    c.beta = beta(rng);
    for (int j : isotypic_indices(8)) c.eigenvalues.push_back({j, mu(rng), 1});
    BurnsideElement inv(reps->lattice_ptr());
    try {
      inv = degree_invariant(c, &targets);
    } catch (const PreconditionViolation&) {
      continue;  // resonant draw
    }
    ++configs;
    int before = bad;
    for (int h : bases)
      for (int s0 = 1; s0 <= 4; ++s0) {
        ++compared;
        std::int64_t fast = coeff_maximal_fast(*reps, h, s0, c), exact = inv.coeff(L.fold_class(h, s0));
        if (fast != exact) {
          ++bad;
          o.notes.push_back(fmt::format("config {} (beta {:.4f}, |Sigma_0| = {}): {} fast {} vs product {}", configs,
                                        c.beta, sigma_sets(c).zero.size(), L.name(L.fold_class(h, s0)), fast, exact));
        }
      }
    bad_configs += bad != before;
  }
  double secs = seconds_since(t0);
  if (bad > 0)
    o.notes.push_back(
        "(D8 ^Z1 x^Z2m D8p)#1 lies in the 3- and 5-folds of #2 (3*3 = 5*5 = 1 mod 8); the closed form only accounts "
        "for folds of the type itself, so configs with both (1,1) and (3,3) in Sigma_0 pick up an extra +2");
  o.pass = bad == 0 && configs >= 20 && secs < 300;
  o.summary = fmt::format("{} seeded configs (seed {}), {} coefficients compared, {} mismatches in {} configs ({:.1f} s)",
                          configs, seed, compared, bad, bad_configs, secs);
  return o;
}

std::vector<std::string> pendula_report_notes(const Representations& reps, double beta, bool& complete) {
  std::vector<std::string> notes;
  const AmalgamLattice& L = reps.lattice();
  auto config = pendula_config(8, beta, 2);
  auto report = existence_report(reps, config);
  auto z = cycle_laplacian(8).spectrum;
  complete = !report.entries.empty();
  int missing = 0;
  for (int j : isotypic_indices(8)) {
    if (beta * beta * (z[j].z_value + 1.0) <= 1.0) continue;
    for (int h : reps.maximal_orbit_types({1, j}).members) {
      bool found = false;
      for (const auto& e : report.entries)
        if (e.orbit_type == h && e.j == j && e.m == 1 && e.coeff == -x0_of(L.weyl(h))) found = true;
      if (!found) {
        ++missing;
        std::int64_t c = coeff_maximal_fast(reps, h, 1, config);
        std::vector<int> target{h};
        notes.push_back(fmt::format("beta={}: j={} {} has coefficient {} (product {})", beta, j, L.name(h), c,
                                    degree_invariant(config, &target).coeff(h)));
      }
    }
  }
  complete = complete && missing == 0;
  notes.push_back(fmt::format("beta={}: {} entries, {} maximal members without a -x0 entry", beta,
                              report.entries.size(), missing));
  return notes;
}

Outcome pendula_criterion() {
  Outcome o;
  auto reps = Representations::for_dihedral(8);
  try {
    bool complete = false;
    o.notes = pendula_report_notes(*reps, 1.0, complete);
    o.pass = complete;
    o.summary = complete ? "every maximal member has a -x0 entry" : "report incomplete";
  } catch (const ValidationError& e) {
    o.pass = false;
    o.summary = std::string("N=8, beta=1, q=2 rejected: ") + e.what();
    bool complete = false;
    auto diag = pendula_report_notes(*reps, 0.99, complete);
    o.notes.insert(o.notes.end(), diag.begin(), diag.end());
    o.notes.push_back(
        "mu_0 = -1 = -1^2/beta^2 at beta = 1, so the (1,0) component is resonant and the degree is undefined; "
        "beta = 0.99 keeps the same active set j = 1..4");
  }
  return o;
}

#ifdef EQDEG_HAVE_SOLVER
Outcome solver_criterion(std::uint64_t seed) {
  auto t0 = Clock::now();
  Outcome o;
  auto reps = Representations::for_dihedral(8);
  const AmalgamLattice& L = reps->lattice();
  int h = reps->maximal_orbit_types({1, 4}).members.at(0);
  // the ODE is fine at beta = 1; only the degree needs non-resonance
  auto sys = pendula_system(8, 1.0, 2, std::nullopt, false);
  auto run = verify_solution(*reps, sys, h, 8, 1e-10, seed);
  double secs = seconds_since(t0);
  bool ok_residual = run.coarse.residual_norm < 1e-8 && run.coarse.non_stationary;
  bool ok_iso = run.defect <= 1e-6 && run.isotropy_at_least_predicted;
  bool ok_modes = run.amplitude_change < 1e-6;
  o.pass = ok_residual && ok_iso && ok_modes && secs < 120;
  o.summary = fmt::format(
      "{}: residual {:.2e} (non-stationary {}), generator defect {:.1e}, isotropy {}, mode-1 amplitude change M=8->16 "
      "{:.2e} ({:.1f} s)",
      L.name(h), run.coarse.residual_norm, run.coarse.non_stationary, run.defect, run.isotropy.name,
      run.amplitude_change, secs);
  auto refined = verify_solution(*reps, sys, h, 16, 1e-10, seed);
  o.notes.push_back(fmt::format("mode-1 amplitude {:.10f}; M=16->32 change {:.2e}", run.coarse.state.mode_norm(1),
                                refined.amplitude_change));
  std::string tail;
  for (int k = 7; k <= 15; k += 2) tail += fmt::format(" |c_{}| = {:.2e}", k, refined.coarse.state.mode_norm(k));
  o.notes.push_back("odd harmonics decay by about 0.14 per step:" + tail);
  o.notes.push_back("the M=8 truncation drops |c_9| ~ 2e-3, which moves the mode-1 amplitude by ~4e-5");
  return o;
}
#endif

Outcome standalone_criterion(const std::string& source, const std::string& work) {
  Outcome o;
  std::filesystem::create_directories(work);
  std::string log = work + "/standalone.log";
  std::string configure = fmt::format("cmake -S '{}' -B '{}' -DEQDEG_BUILD_SOLVER=OFF -DCMAKE_BUILD_TYPE=Release > '{}' 2>&1",
                                      source, work, log);
  std::string build = fmt::format(
      "cmake --build '{}' --target test_burnside test_degrees test_o2_lattice test_finite_group -j 4 >> '{}' 2>&1", work,
      log);
  std::string listing = fmt::format("ctest --test-dir '{}' -N 2>/dev/null | grep -q galerkin", work);
  std::string run = fmt::format(
      "ctest --test-dir '{}' -R '^(burnside|degrees|o2_lattice|finite_group)$' --output-on-failure >> '{}' 2>&1", work,
      log);
  bool configured = std::system(configure.c_str()) == 0;
  bool built = configured && std::system(build.c_str()) == 0;
  bool solver_absent = configured && std::system(listing.c_str()) != 0;
  bool ran = built && std::system(run.c_str()) == 0;
  o.pass = configured && built && solver_absent && ran;
  o.summary = fmt::format("build without the solver: configure {}, build {}, solver absent {}, suites {}",
                          configured ? "ok" : "failed", built ? "ok" : "failed", solver_absent ? "yes" : "no",
                          ran ? "pass" : "fail");
  o.notes.push_back("involution and fast-formula suites: degrees; oracle products: burnside; folding: o2_lattice");
  o.notes.push_back("log: " + log);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = 20240601;
  bool skip_standalone = false;
  std::string work = EQDEG_BINARY_DIR "/standalone";
  app.add_option("--seed", seed, "seed for sampled pairs, random configs and solver perturbation");
  app.add_flag("--skip-standalone", skip_standalone, "do not run the nested build for criterion 8");
  app.add_option("--standalone-dir", work, "build directory for criterion 8");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 D8 fixture reproduction", fixtures_criterion},
      {"2 involution suite", involution_criterion},
      {"3 Burnside oracle equivalence", [&] { return burnside_criterion(seed); }},
      {"4 folding relation vs subconjugacy", folding_criterion},
      {"5 fast-formula equivalence", [&] { return fast_formula_criterion(seed); }},
      {"6 D8 pendula end-to-end", pendula_criterion},
#ifdef EQDEG_HAVE_SOLVER
      {"7 numerical confirmation", [&] { return solver_criterion(seed); }},
#else
      {"7 numerical confirmation", [] { return Outcome{false, "built without the solver", {}}; }},
#endif
      {"8 property suites without the solver",
       [&] {
         if (skip_standalone) return Outcome{false, "skipped (--skip-standalone)", {}};
         return standalone_criterion(EQDEG_SOURCE_DIR, work);
       }},
  };

  int passed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    passed += o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.summary << '\n';
    for (const auto& note : o.notes) std::cout << "      " << note << '\n';
    std::cout.flush();
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed\n";
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
