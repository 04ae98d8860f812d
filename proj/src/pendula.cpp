#include "eqdeg/pendula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "eqdeg/errors.hpp"
#include "eqdeg/finite_group.hpp"

namespace eqdeg {

namespace {

constexpr const char* kModule = "pendula";
constexpr double kMatrixTolerance = 1e-9;

void check_size(int n) {
  if (n < 3) throw InvalidParameter(kModule, fmt::format("cycle needs N >= 3, got {}", n));
}

RealMatrix to_real(const std::vector<std::vector<int>>& m) {
  RealMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m[i].begin(), m[i].end());
  return out;
}

void check_equivariant(const RealMatrix& lap, int n) {
  if (static_cast<int>(lap.size()) != n)
    throw InvalidParameter(kModule, fmt::format("laplacian has {} rows, expected {}", lap.size(), n));
  for (const auto& row : lap)
    if (static_cast<int>(row.size()) != n) throw InvalidParameter(kModule, "laplacian must be square");
  // gamma = element 1, kappa = element N
  for (int g : {1, n})
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (std::abs(lap[dihedral_act(n, g, i)][dihedral_act(n, g, k)] - lap[i][k]) > kMatrixTolerance)
          throw InvalidParameter(kModule, fmt::format("laplacian does not commute with the {} permutation",
                                                      g == 1 ? "rotation" : "reflection"));
}

// Eigenvalue of an equivariant matrix on the V_j component, read off the cosine vector.
double component_eigenvalue(const RealMatrix& lap, int n, int j) {
  std::vector<double> c(n), s(n);
  for (int k = 0; k < n; ++k) {
    double angle = 2.0 * std::numbers::pi * j * k / n;
    c[k] = std::cos(angle);
    s[k] = std::sin(angle);
  }
  double lambda = 0.0;
  for (int k = 0; k < n; ++k) lambda += lap[0][k] * c[k];
  for (int i = 0; i < n; ++i) {
    double lc = 0.0, ls = 0.0;
    for (int k = 0; k < n; ++k) {
      lc += lap[i][k] * c[k];
      ls += lap[i][k] * s[k];
    }
    if (std::abs(lc - lambda * c[i]) > kMatrixTolerance || std::abs(ls - lambda * s[i]) > kMatrixTolerance)
      throw InternalConsistency(kModule, fmt::format("V_{} is not an eigenspace of the laplacian", j));
  }
  return lambda;
}

}  // namespace

LaplacianSpec cycle_laplacian(int n) {
  check_size(n);
  LaplacianSpec out;
  out.n = n;
  out.matrix.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    out.matrix[i][i] = -2;
    out.matrix[i][(i + 1) % n] += 1;
    out.matrix[i][(i + n - 1) % n] += 1;
  }
  for (int j : isotypic_indices(n)) {
    LaplacianEigen e;
    e.j = j;
    e.z = Cyclotomic::integer(2, n) - Cyclotomic::two_cos(n, j);
    e.z_value = 4.0 * std::pow(std::sin(std::numbers::pi * j / n), 2);
    e.eigenvector = j == 0 ? "(1, 1, ..., 1)"
                    : 2 * j == n
                        ? "(1, -1, 1, ..., -1)"
                        : fmt::format("real and imaginary parts of (1, g^{0}, g^{{2*{0}}}, ...), g = exp(2 pi i / {1})",
                                      j, n);
    out.spectrum.push_back(e);
  }
  return out;
}

PendulaSystem pendula_system(int n, double beta, int q, const std::optional<RealMatrix>& laplacian,
                             bool check_resonance) {
  check_size(n);
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter(kModule, "beta must be positive");
  if (q < 2 || q % 2 != 0) throw InvalidParameter(kModule, fmt::format("q must be even and >= 2, got {}", q));

  RealMatrix lap = laplacian ? *laplacian : to_real(cycle_laplacian(n).matrix);
  if (laplacian) check_equivariant(lap, n);

  PendulaSystem sys;
  sys.n = n;
  sys.beta = beta;
  sys.q = q;
  // A = L - Id, so A has eigenvalue -(z_j + 1) where L has -z_j
  sys.linear_part = lap;
  for (int i = 0; i < n; ++i) sys.linear_part[i][i] -= 1.0;

  sys.analysis.gamma_n = n;
  sys.analysis.beta = beta;
  std::vector<std::string> resonant;
  for (int j : isotypic_indices(n)) {
    double z = laplacian ? -component_eigenvalue(lap, n, j) : cycle_laplacian(n).spectrum[j].z_value;
    double mu = -(z + 1.0);
    double t = -beta * beta * mu;
    if (t > 0.0) {
      double m = std::round(std::sqrt(t));
      if (m >= 1.0 && std::abs(m * m - t) <= kSignEpsilon * std::max(1.0, t))
        resonant.push_back(fmt::format("(m={}, j={})", static_cast<int>(m), j));
    }
    sys.analysis.eigenvalues.push_back({j, mu, 1});
  }
  if (check_resonance && !resonant.empty()) {
    std::string list;
    for (const auto& r : resonant) list += (list.empty() ? "" : ", ") + r;
    throw PreconditionViolation(
        kModule, fmt::format("resonance m^2 = beta^2 (z_j + 1) at {} for N = {}, beta = {}", list, n, beta));
  }
  return sys;
}

AnalysisConfig pendula_config(int n, double beta, int q) { return pendula_system(n, beta, q).analysis; }

bool is_pendula_json(const nlohmann::json& j) {
  return j.is_object() && (j.contains("q") || j.contains("coupling") || j.contains("laplacian")) &&
         !j.contains("eigenvalues");
}

PendulaSystem pendula_system_from_json(const nlohmann::json& j, bool check_resonance) {
  try {
    int n = j.at("N").get<int>();
    double beta = j.at("beta").get<double>();
    int q = j.value("q", 2);
    std::string coupling = j.value("coupling", std::string("cycle"));
    std::optional<RealMatrix> lap;
    if (j.contains("laplacian")) {
      lap = j.at("laplacian").get<RealMatrix>();
    } else if (coupling != "cycle") {
      throw InvalidParameter(kModule, "coupling '" + coupling + "' needs an explicit \"laplacian\"");
    }
    auto sys = pendula_system(n, beta, q, lap, check_resonance);
    if (j.contains("antipodal")) sys.analysis.antipodal = j.at("antipodal").get<bool>();
    if (j.contains("truncation_guard")) sys.analysis.truncation_guard = j.at("truncation_guard").get<int>();
    return sys;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(kModule, std::string("malformed pendula config: ") + e.what());
  }
}

nlohmann::json ExistenceReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : entries)
    list.push_back({{"orbitType", e.name},
                    {"m", e.m},
                    {"j", e.j},
                    {"coeff", e.coeff},
                    {"invariant_coeff", e.invariant_coeff},
                    {"guarantee", e.guarantee}});
  return {{"entries", list}, {"metadata", metadata}};
}

ExistenceReport existence_report(const AnalysisConfig& config) {
  auto reps = Representations::for_dihedral(config.gamma_n);
  return existence_report(*reps, config);
}

ExistenceReport existence_report(const Representations& reps, const AnalysisConfig& config) {
  if (reps.gamma_n() != config.gamma_n) throw InvalidParameter(kModule, "config and representations disagree on N");
  const AmalgamLattice& L = reps.lattice();
  SigmaSets sets = sigma_sets(config);

  struct Candidate {
    int h, base, m, j;
  };
  std::vector<Candidate> candidates;
  std::vector<int> targets;
  for (const auto& idx : sets.zero) {
    if (idx.m < 1) continue;
    auto bases = reps.maximal_orbit_types({1, idx.j, config.antipodal}).members;
    for (int h : reps.maximal_orbit_types({idx.m, idx.j, config.antipodal}).members) {
      auto it = std::find_if(bases.begin(), bases.end(), [&](int b) { return L.fold_class(b, idx.m) == h; });
      if (it == bases.end())
        throw InternalConsistency(kModule, L.name(h) + " is not a folded maximal type of mode 1");
      candidates.push_back({h, *it, idx.m, idx.j});
      targets.push_back(h);
    }
  }

  BurnsideElement invariant = degree_invariant(config, &targets);
  ExistenceReport report;
  for (const auto& c : candidates) {
    std::int64_t coeff = coeff_maximal_fast(reps, c.base, c.m, config);
    if (coeff == 0) continue;
    ExistenceEntry e;
    e.orbit_type = c.h;
    e.name = L.name(c.h);
    e.m = c.m;
    e.j = c.j;
    e.coeff = coeff;
    e.invariant_coeff = invariant.coeff(c.h);
    e.guarantee = fmt::format("non-stationary 2pi/{}-periodic solution u with (G_u) >= {}", c.m, e.name);
    report.entries.push_back(e);
  }

  int disagreements = 0;
  for (const auto& e : report.entries) disagreements += e.coeff != e.invariant_coeff;
  report.metadata = {
      {"N", config.gamma_n},
      {"beta", config.beta},
      {"antipodal", config.antipodal},
      {"sigma_zero_size", sets.zero.size()},
      {"closed_form_disagreements", disagreements},
      {"linear_part_convention",
       "A has eigenvalue mu_j = -(z_j + 1) on V_j, i.e. A = L - Id for the cycle matrix L with diagonal -2; "
       "A = -(L + Id) would instead give z_j - 1"},
  };
  return report;
}

}  // namespace eqdeg
