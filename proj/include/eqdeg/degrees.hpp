#pragma once

#include <optional>
#include <vector>

#include "eqdeg/burnside.hpp"
#include "eqdeg/representations.hpp"
#include "json.hpp"

namespace eqdeg {

// Eigenvalue mu_j of the linear part on the V_j-isotypic component, with multiplicity m_j.
struct EigenEntry {
  int j = 0;
  double mu = 0.0;
  int multiplicity = 1;
};

struct AnalysisConfig {
  int gamma_n = 8;
  double beta = 1.0;
  std::vector<EigenEntry> eigenvalues;
  std::optional<int> truncation_guard;
  // (e, -1) acts by -1 on every component
  bool antipodal = true;

  // {"N", "beta", "eigenvalues": [{"j", "mu", "multiplicity"}], "truncation_guard", "antipodal"}
  static AnalysisConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SpectralIndex {
  int m = 0;
  int j = 0;
  double mu_mj = 0.0;
};

struct SigmaSets {
  std::vector<SpectralIndex> minus;
  std::vector<SpectralIndex> zero;
};

// Sign decisions closer to zero than this are treated as resonant.
constexpr double kSignEpsilon = 1e-12;

// (m^2 + beta^2 mu_j) / (1 + m^2); throws PreconditionViolation at resonance.
double operator_eigenvalue(int m, int j, const AnalysisConfig& config);
SigmaSets sigma_sets(const AnalysisConfig& config);

// deg of -Id on the unit ball of V_{m,j}, by the top-down recurrence over its orbit types.
BurnsideElement basic_degree(const Representations& reps, const IrrepLabel& label);

// Product of basic degrees over Sigma_0, in increasing (m, j) order. With `upward_of` set, every
// factor and partial product is truncated to orbit types lying above one of the given types;
// coefficients on that upward-closed set are exact.
BurnsideElement degree_invariant(const AnalysisConfig& config, const std::vector<int>* upward_of = nullptr);

// Termwise s-folding of an element over the O(2) lattice.
BurnsideElement fold(const BurnsideElement& a, int s);

// 1 when |W(H)| = 2, 2 when |W(H)| = 1.
int x0_of(int weyl_order);

struct FoldedFactor {
  int s = 1;
  int j = 0;
};

// Closed-form coefficient of (^{s0}H) in the product of deg V_{s_k m, j_k}, where H is of maximal
// kind with witness mode m. The s_k must be distinct.
std::int64_t product_coeff(const Representations& reps, int h, int m, int s0, const std::vector<FoldedFactor>& factors,
                           bool antipodal = true);

// Closed-form coefficient of (^{s0}H) in degree_invariant(config), H of maximal kind.
std::int64_t coeff_maximal_fast(const Representations& reps, int h, int s0, const AnalysisConfig& config);

// {"sigma_minus", "sigma_zero", "invariant", "maximal_kind_nonzero"}
nlohmann::json degree_report(const AnalysisConfig& config, int max_fold = 4);

}  // namespace eqdeg
