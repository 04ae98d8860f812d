#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqdeg/degrees.hpp"
#include "eqdeg/exact.hpp"
#include "json.hpp"

namespace eqdeg {

using RealMatrix = std::vector<std::vector<double>>;

struct LaplacianEigen {
  int j = 0;
  // 4 sin^2(pi j / N) = 2 - zeta^j - zeta^-j, zeta = exp(2 pi i / N)
  Cyclotomic z;
  double z_value = 0.0;
  std::string eigenvector;
};

struct LaplacianSpec {
  int n = 0;
  std::vector<std::vector<int>> matrix;
  std::vector<LaplacianEigen> spectrum;
};

// Cycle graph Laplacian with diagonal -2 and +1 on the two cyclic neighbours; eigenvalue -z_j on v_j.
LaplacianSpec cycle_laplacian(int n);

// Coupled pendula u'' = |u|^q u + A u, rescaled to period 2 pi by beta.
struct PendulaSystem {
  int n = 8;
  double beta = 1.0;
  int q = 2;
  // A, with eigenvalue mu_j = -(z_j + 1) on the V_j component
  RealMatrix linear_part;
  AnalysisConfig analysis;
};

// Builds the system for the cycle coupling, or for `laplacian` when given (it must commute with the
// D_N permutation action). Throws PreconditionViolation listing every resonant (m, j) unless
// check_resonance is off; the ODE itself is well defined at resonance, its degree invariant is not.
PendulaSystem pendula_system(int n, double beta, int q, const std::optional<RealMatrix>& laplacian = std::nullopt,
                             bool check_resonance = true);
AnalysisConfig pendula_config(int n, double beta, int q);

// {"N", "beta", "q", "coupling": "cycle", "laplacian": [[...]]}
PendulaSystem pendula_system_from_json(const nlohmann::json& j, bool check_resonance = true);

// True when the config file describes a pendula system rather than raw eigenvalues.
bool is_pendula_json(const nlohmann::json& j);

struct ExistenceEntry {
  int orbit_type = 0;
  std::string name;
  int m = 0;
  int j = 0;
  std::int64_t coeff = 0;
  // coefficient of the same type in the (upward restricted) product of basic degrees
  std::int64_t invariant_coeff = 0;
  std::string guarantee;
};

struct ExistenceReport {
  std::vector<ExistenceEntry> entries;
  nlohmann::json metadata;

  nlohmann::json to_json() const;
};

// One entry per (m, j) in Sigma_0 with m >= 1 and H in the maximal set of V_{m,j}, whenever the
// closed-form coefficient of (H) is nonzero.
ExistenceReport existence_report(const AnalysisConfig& config);
ExistenceReport existence_report(const Representations& reps, const AnalysisConfig& config);

}  // namespace eqdeg
