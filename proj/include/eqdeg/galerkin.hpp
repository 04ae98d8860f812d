#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "eqdeg/o2_lattice.hpp"
#include "eqdeg/pendula.hpp"
#include "eqdeg/representations.hpp"
#include "json.hpp"

namespace eqdeg {

// u(t) = a_0 + sum_{k=1..M} a_k cos(kt) + b_k sin(kt), u(t) in R^N.
// Layout of coeffs: a_0, then a_1, b_1, a_2, b_2, ... (N entries each).
struct GalerkinState {
  int n = 0;
  int modes = 0;
  Eigen::VectorXd coeffs;

  GalerkinState() = default;
  GalerkinState(int n_, int modes_);

  static int size_for(int n, int modes) { return n * (2 * modes + 1); }
  int a_index(int k, int i) const { return k == 0 ? i : n * (2 * k - 1) + i; }
  int b_index(int k, int i) const { return n * 2 * k + i; }
  double a(int k, int i) const { return coeffs(a_index(k, i)); }
  double b(int k, int i) const { return coeffs(b_index(k, i)); }
  // Euclidean norm of (a_k, b_k); a_0 for k = 0.
  double mode_norm(int k) const;
  // Same function with M' modes (truncating or zero padding).
  GalerkinState resized(int new_modes) const;
  Eigen::VectorXd evaluate(double t) const;
};

// (rho_q, p) u(t) = eps(p) P_x u(t - 2 pi q) and (kappa rho_q, p) u(t) = eps(p) P_x u(-t - 2 pi q),
// where P_x permutes coordinates by the D_N part of p and eps = -1 on the Z2 generator.
GalerkinState act(const GroupElement& g, const GalerkinState& u);

struct SymmetricBasis {
  int n = 0;
  int modes = 0;
  // orthonormal columns spanning the states fixed by the orbit type representative
  Eigen::MatrixXd columns;
  std::vector<int> mode_of_column;
};

// Throws DegenerateSymmetry when the fixed space is zero.
SymmetricBasis symmetric_basis(const Representations& reps, int orbit_type, int modes);

struct GalerkinProblem {
  int n = 8;
  double beta = 1.0;
  int q = 2;
  Eigen::MatrixXd a;
  // f(u) = |u|^q u when true, f = 0 otherwise
  bool nonlinear = true;
  // collocation points per period; 0 selects 4M + 4
  int collocation = 0;

  static GalerkinProblem from_system(const PendulaSystem& sys);
};

// Fourier coefficients of u'' - beta^2 f(u) - beta^2 A u.
Eigen::VectorXd residual(const GalerkinState& u, const GalerkinProblem& problem);
// Derivative of residual at u in direction v.
Eigen::VectorXd linearized_residual(const GalerkinState& u, const Eigen::VectorXd& v, const GalerkinProblem& problem);

struct NewtonResult {
  GalerkinState state;
  double residual_norm = 0.0;
  int iterations = 0;
  bool non_stationary = false;
};

// Damped Newton iteration inside the span of `basis`. Throws ConvergenceFailure after max_iter steps.
NewtonResult newton_solve(const GalerkinState& initial, const GalerkinProblem& problem, const SymmetricBasis& basis,
                          double tol, int max_iter = 60);

// amplitude along the lowest nonzero mode basis vector, plus a seeded perturbation of relative size 1e-3
GalerkinState seed_state(const SymmetricBasis& basis, double amplitude = 0.5, std::uint64_t seed = 0);

struct IsotropyResult {
  int orbit_type = -1;
  std::string name;
  // elements of the (phase-normalised) isotropy group found on the rational grid
  std::vector<GroupElement> fixing;
  // time shift applied before enumerating, in units of the period
  double phase_shift = 0.0;
};

IsotropyResult isotropy_check(const Representations& reps, const GalerkinState& u, double tol);

// max |g u - u| over the given elements
double max_defect(const GalerkinState& u, const std::vector<GroupElement>& elements);

nlohmann::json solution_json(const GalerkinState& u, double residual_norm, const std::string& isotropy);
// "t,u0,...,u{N-1}" sampled at `points` equispaced times on [0, 2 pi)
std::string time_series_csv(const GalerkinState& u, int points = 256);

struct VerificationRun {
  std::string orbit_type;
  int modes = 0;
  std::uint64_t seed = 0;
  NewtonResult coarse;
  NewtonResult fine;
  IsotropyResult isotropy;
  double defect = 0.0;
  bool isotropy_at_least_predicted = false;
  double amplitude_change = 0.0;

  nlohmann::json to_json() const;
};

// Solves with M modes from the seeded state, then with 2M modes from the converged one.
VerificationRun verify_solution(const Representations& reps, const PendulaSystem& system, int orbit_type, int modes,
                                double tol, std::uint64_t seed = 0);

}  // namespace eqdeg
