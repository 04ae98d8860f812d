#include "eqdeg/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "eqdeg/errors.hpp"
#include "eqdeg/finite_group.hpp"

namespace eqdeg {

namespace {

constexpr const char* kModule = "galerkin";
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double to_double(const Rational& q) { return boost::rational_cast<double>(q); }

GalerkinState act_real(bool reflection, double q, int p, const GalerkinState& u) {
  const int n = u.n;
  const int x = p % (2 * n);
  const double eps = p >= 2 * n ? -1.0 : 1.0;
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = dihedral_act(n, x, i);
  GalerkinState out(n, u.modes);
  for (int i = 0; i < n; ++i) out.coeffs(out.a_index(0, sigma[i])) = eps * u.a(0, i);
  for (int k = 1; k <= u.modes; ++k) {
    double phi = kTwoPi * k * q;
    double c = std::cos(phi), s = std::sin(phi);
    for (int i = 0; i < n; ++i) {
      double a = u.a(k, i), b = u.b(k, i);
      double a2 = a * c - b * s, b2 = a * s + b * c;
      if (reflection) b2 = -b2;
      out.coeffs(out.a_index(k, sigma[i])) = eps * a2;
      out.coeffs(out.b_index(k, sigma[i])) = eps * b2;
    }
  }
  return out;
}

double defect_real(bool reflection, double q, int p, const GalerkinState& u) {
  return (act_real(reflection, q, p, u).coeffs - u.coeffs).lpNorm<Eigen::Infinity>();
}

struct Collocation {
  int points;
  Eigen::MatrixXd cos_table;  // points x (M+1)
  Eigen::MatrixXd sin_table;

  Collocation(int modes, int requested) {
    points = requested > 0 ? requested : 4 * modes + 4;
    cos_table.resize(points, modes + 1);
    sin_table.resize(points, modes + 1);
    for (int t = 0; t < points; ++t)
      for (int k = 0; k <= modes; ++k) {
        double angle = kTwoPi * t * k / points;
        cos_table(t, k) = std::cos(angle);
        sin_table(t, k) = std::sin(angle);
      }
  }

  // points x N samples of the state
  Eigen::MatrixXd synthesize(const GalerkinState& u) const {
    Eigen::MatrixXd out(points, u.n);
    for (int i = 0; i < u.n; ++i) {
      Eigen::VectorXd col = Eigen::VectorXd::Constant(points, u.a(0, i));
      for (int k = 1; k <= u.modes; ++k) col += u.a(k, i) * cos_table.col(k) + u.b(k, i) * sin_table.col(k);
      out.col(i) = col;
    }
    return out;
  }

  // discrete Fourier projection of sampled values onto modes 0..M
  GalerkinState project(const Eigen::MatrixXd& samples, int modes) const {
    GalerkinState out(static_cast<int>(samples.cols()), modes);
    for (int i = 0; i < out.n; ++i) {
      out.coeffs(out.a_index(0, i)) = samples.col(i).mean();
      for (int k = 1; k <= modes; ++k) {
        out.coeffs(out.a_index(k, i)) = 2.0 * samples.col(i).dot(cos_table.col(k)) / points;
        out.coeffs(out.b_index(k, i)) = 2.0 * samples.col(i).dot(sin_table.col(k)) / points;
      }
    }
    return out;
  }
};

// -k^2 c_k - beta^2 A c_k on every mode block
Eigen::VectorXd linear_part(const GalerkinState& u, const GalerkinProblem& p) {
  Eigen::VectorXd out(u.coeffs.size());
  const double b2 = p.beta * p.beta;
  for (int blk = 0; blk < 2 * u.modes + 1; ++blk) {
    int k = (blk + 1) / 2;
    Eigen::VectorXd c = u.coeffs.segment(blk * u.n, u.n);
    out.segment(blk * u.n, u.n) = -static_cast<double>(k) * k * c - b2 * (p.a * c);
  }
  return out;
}

void check_problem(const GalerkinState& u, const GalerkinProblem& p) {
  if (u.n != p.n || p.a.rows() != p.n || p.a.cols() != p.n)
    throw InvalidParameter(kModule, "state and problem dimensions disagree");
  if (p.nonlinear && (p.q < 2 || p.q % 2 != 0)) throw InvalidParameter(kModule, "q must be even and >= 2");
}

int lowest_mode_column(const SymmetricBasis& basis) {
  int best = -1;
  for (int c = 0; c < static_cast<int>(basis.mode_of_column.size()); ++c)
    if (basis.mode_of_column[c] >= 1 && (best < 0 || basis.mode_of_column[c] < basis.mode_of_column[best])) best = c;
  return best;
}

}  // namespace

GalerkinState::GalerkinState(int n_, int modes_) : n(n_), modes(modes_), coeffs(Eigen::VectorXd::Zero(size_for(n_, modes_))) {
  if (n_ < 1 || modes_ < 0) throw InvalidParameter(kModule, "invalid state shape");
}

double GalerkinState::mode_norm(int k) const {
  if (k < 0 || k > modes) return 0.0;
  if (k == 0) return coeffs.segment(0, n).norm();
  return coeffs.segment(a_index(k, 0), 2 * n).norm();
}

GalerkinState GalerkinState::resized(int new_modes) const {
  GalerkinState out(n, new_modes);
  int keep = size_for(n, std::min(modes, new_modes));
  out.coeffs.head(keep) = coeffs.head(keep);
  return out;
}

Eigen::VectorXd GalerkinState::evaluate(double t) const {
  Eigen::VectorXd out = coeffs.segment(0, n);
  for (int k = 1; k <= modes; ++k)
    out += std::cos(k * t) * coeffs.segment(a_index(k, 0), n) + std::sin(k * t) * coeffs.segment(b_index(k, 0), n);
  return out;
}

GalerkinState act(const GroupElement& g, const GalerkinState& u) {
  return act_real(g.o.reflection, to_double(g.o.q), g.p, u);
}

SymmetricBasis symmetric_basis(const Representations& reps, int orbit_type, int modes) {
  if (modes < 0) throw InvalidParameter(kModule, "mode count must be nonnegative");
  const AmalgamLattice& L = reps.lattice();
  const int n = reps.gamma_n();
  const Amalgam& h = L.rep(orbit_type);
  std::vector<GroupElement> elems;
  int top_mode = modes;
  if (h.kind == O2Kind::Full) {
    // O(2) kills every mode k >= 1; only the finite part acts on constants
    for (int p = 0; p < L.ambient().order(); ++p)
      if (h.z.test(p)) elems.push_back({o2_rotation(Rational(0)), p});
    top_mode = 0;
  } else {
    elems = L.realize_elements(h);
  }

  SymmetricBasis out;
  out.n = n;
  out.modes = modes;
  std::vector<Eigen::VectorXd> cols;
  for (int k = 0; k <= top_mode; ++k) {
    int start = k == 0 ? 0 : n * (2 * k - 1);
    int size = k == 0 ? n : 2 * n;
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(size, size);
    for (int c = 0; c < size; ++c) {
      GalerkinState e(n, k);
      e.coeffs(start + c) = 1.0;
      for (const auto& g : elems) proj.col(c) += act(g, e).coeffs.segment(start, size);
    }
    proj /= static_cast<double>(elems.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (proj + proj.transpose()));
    for (int c = 0; c < size; ++c)
      if (es.eigenvalues()(c) > 0.5) {
        Eigen::VectorXd full = Eigen::VectorXd::Zero(GalerkinState::size_for(n, modes));
        full.segment(start, size) = es.eigenvectors().col(c);
        cols.push_back(full);
        out.mode_of_column.push_back(k);
      }
  }
  if (cols.empty())
    throw DegenerateSymmetry(kModule, fmt::format("no nonzero state with {} modes is fixed by {}", modes,
                                                  L.name(orbit_type)));
  out.columns.resize(GalerkinState::size_for(n, modes), static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.columns.col(static_cast<int>(c)) = cols[c];
  return out;
}

GalerkinProblem GalerkinProblem::from_system(const PendulaSystem& sys) {
  GalerkinProblem p;
  p.n = sys.n;
  p.beta = sys.beta;
  p.q = sys.q;
  p.a.resize(sys.n, sys.n);
  for (int i = 0; i < sys.n; ++i)
    for (int k = 0; k < sys.n; ++k) p.a(i, k) = sys.linear_part[i][k];
  return p;
}

Eigen::VectorXd residual(const GalerkinState& u, const GalerkinProblem& problem) {
  check_problem(u, problem);
  Eigen::VectorXd out = linear_part(u, problem);
  if (!problem.nonlinear) return out;
  Collocation grid(u.modes, problem.collocation);
  Eigen::MatrixXd samples = grid.synthesize(u);
  Eigen::MatrixXd f = samples.array().pow(problem.q + 1).matrix();
  out -= problem.beta * problem.beta * grid.project(f, u.modes).coeffs;
  return out;
}

Eigen::VectorXd linearized_residual(const GalerkinState& u, const Eigen::VectorXd& v, const GalerkinProblem& problem) {
  check_problem(u, problem);
  GalerkinState dv(u.n, u.modes);
  dv.coeffs = v;
  Eigen::VectorXd out = linear_part(dv, problem);
  if (!problem.nonlinear) return out;
  Collocation grid(u.modes, problem.collocation);
  Eigen::MatrixXd us = grid.synthesize(u), vs = grid.synthesize(dv);
  Eigen::MatrixXd df = ((problem.q + 1) * us.array().pow(problem.q) * vs.array()).matrix();
  out -= problem.beta * problem.beta * grid.project(df, u.modes).coeffs;
  return out;
}

NewtonResult newton_solve(const GalerkinState& initial, const GalerkinProblem& problem, const SymmetricBasis& basis,
                          double tol, int max_iter) {
  if (!(tol > 0.0)) throw InvalidParameter(kModule, "tolerance must be positive");
  if (basis.n != initial.n || basis.modes != initial.modes)
    throw InvalidParameter(kModule, "initial state and symmetric basis disagree on shape");
  const Eigen::MatrixXd& Q = basis.columns;
  // keep the iterate inside the fixed space
  Eigen::VectorXd x = Q.transpose() * initial.coeffs;
  if ((Q * x - initial.coeffs).norm() > 1e-8 * std::max(1.0, initial.coeffs.norm()))
    throw InvalidParameter(kModule, "initial state is not in the symmetric subspace");

  GalerkinState u = initial;
  auto eval = [&](const Eigen::VectorXd& y) {
    u.coeffs = Q * y;
    return residual(u, problem);
  };
  Eigen::VectorXd r = eval(x);
  double norm = r.norm();
  int it = 0;
  while (norm >= tol) {
    if (it == max_iter)
      throw ConvergenceFailure(kModule, fmt::format("no convergence in {} Newton steps, residual {:.3e}", max_iter, norm),
                               norm);
    u.coeffs = Q * x;
    Eigen::MatrixXd J(Q.cols(), Q.cols());
    for (int c = 0; c < Q.cols(); ++c) J.col(c) = Q.transpose() * linearized_residual(u, Q.col(c), problem);
    Eigen::VectorXd step = J.colPivHouseholderQr().solve(-(Q.transpose() * r));
    double lambda = 1.0;
    Eigen::VectorXd x_new, r_new;
    for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
      x_new = x + lambda * step;
      r_new = eval(x_new);
      if (r_new.norm() < (1.0 - 1e-4 * lambda) * norm) break;
    }
    x = x_new;
    r = r_new;
    norm = r.norm();
    ++it;
  }
  NewtonResult out;
  out.state = initial;
  out.state.coeffs = Q * x;
  out.residual_norm = norm;
  out.iterations = it;
  for (int k = 1; k <= out.state.modes; ++k)
    if (out.state.mode_norm(k) > 10.0 * tol) out.non_stationary = true;
  return out;
}

GalerkinState seed_state(const SymmetricBasis& basis, double amplitude, std::uint64_t seed) {
  GalerkinState u(basis.n, basis.modes);
  int c0 = lowest_mode_column(basis);
  if (c0 < 0) throw DegenerateSymmetry(kModule, "symmetric subspace has no non-stationary direction");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1e-3 * amplitude);
  Eigen::VectorXd x(basis.columns.cols());
  for (int c = 0; c < x.size(); ++c) x(c) = noise(rng);
  x(c0) += amplitude;
  u.coeffs = basis.columns * x;
  return u;
}

double max_defect(const GalerkinState& u, const std::vector<GroupElement>& elements) {
  double worst = 0.0;
  for (const auto& g : elements) worst = std::max(worst, (act(g, u).coeffs - u.coeffs).lpNorm<Eigen::Infinity>());
  return worst;
}

IsotropyResult isotropy_check(const Representations& reps, const GalerkinState& u0, double tol) {
  const AmalgamLattice& L = reps.lattice();
  const int n = u0.n;
  if (n != reps.gamma_n()) throw InvalidParameter(kModule, "state size differs from N");
  const int order = L.ambient().order();
  IsotropyResult out;

  std::vector<int> active;
  for (int k = 1; k <= u0.modes; ++k)
    if (u0.mode_norm(k) > tol) active.push_back(k);
  if (active.empty()) {
    ElementSet z;
    for (int p = 0; p < order; ++p)
      if (defect_real(false, 0.0, p, u0) <= tol) {
        z.set(p);
        out.fixing.push_back({o2_rotation(Rational(0)), p});
      }
    out.orbit_type = L.intern(L.make_full(z));
    out.name = L.name(out.orbit_type);
    return out;
  }

  // Move a fixing reflection, if any, to kappa itself so the group sits on a rational grid.
  GalerkinState u = u0;
  const int k0 = active.front();
  bool moved = false;
  for (int p = 0; p < order && !moved; ++p) {
    const int x = p % (2 * n);
    const double eps = p >= 2 * n ? -1.0 : 1.0;
    int best = 0;
    auto coef = [&](int i) { return std::complex<double>(u0.a(k0, i), -u0.b(k0, i)); };
    for (int i = 1; i < n; ++i)
      if (std::abs(coef(i)) > std::abs(coef(best))) best = i;
    // fixed means c_{sigma(i)} = eps e^{i phi} conj(c_i) with phi = 2 pi k0 q
    std::complex<double> ratio = eps * coef(dihedral_act(n, x, best)) / std::conj(coef(best));
    double phi = std::arg(ratio);
    for (int l = 0; l < k0 && !moved; ++l) {
      double q = (phi / kTwoPi + l) / k0;
      if (defect_real(true, q, p, u0) > tol) continue;
      for (double psi : {q / 2, -q / 2, q / 2 + 0.5 / k0, -q / 2 + 0.5 / k0}) {
        GalerkinState w = act_real(false, psi, 0, u0);
        if (defect_real(true, 0.0, p, w) <= tol) {
          u = w;
          out.phase_shift = psi;
          moved = true;
          break;
        }
      }
    }
  }

  int g = 0;
  for (int k : active) g = std::gcd(g, k);
  const int grid = 2 * n * g;
  std::vector<ElementSet> rotations(grid), reflections(grid);
  for (int l = 0; l < grid; ++l)
    for (int p = 0; p < order; ++p) {
      double q = static_cast<double>(l) / grid;
      if (defect_real(false, q, p, u) <= tol) {
        rotations[l].set(p);
        out.fixing.push_back({o2_rotation(Rational(l, grid)), p});
      }
      if (defect_real(true, q, p, u) <= tol) {
        reflections[l].set(p);
        out.fixing.push_back({o2_reflection(Rational(l, grid)), p});
      }
    }

  Amalgam h;
  h.z = rotations[0];
  int first_rot = 0;
  for (int l = 1; l < grid && !first_rot; ++l)
    if (rotations[l].any()) first_rot = l;
  h.n = first_rot ? grid / first_rot : 1;
  h.r = first_rot ? static_cast<int>(rotations[first_rot]._Find_first()) : 0;
  h.kind = O2Kind::Cyclic;
  for (int l = 0; l < grid; ++l)
    if (reflections[l].any()) {
      h.kind = O2Kind::Dihedral;
      h.off = Rational(l, grid);
      h.s = static_cast<int>(reflections[l]._Find_first());
      break;
    }
  out.orbit_type = L.intern(h);
  out.name = L.name(out.orbit_type);
  return out;
}

nlohmann::json solution_json(const GalerkinState& u, double residual_norm, const std::string& isotropy) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int k = 0; k <= u.modes; ++k) {
    std::vector<double> a(u.n), b(u.n);
    for (int i = 0; i < u.n; ++i) {
      a[i] = u.a(k, i);
      b[i] = k == 0 ? 0.0 : u.b(k, i);
    }
    coeffs.push_back({{"k", k}, {"a", a}, {"b", b}});
  }
  return {{"N", u.n}, {"modes", u.modes}, {"coeffs", coeffs}, {"residual_norm", residual_norm}, {"isotropy", isotropy}};
}

std::string time_series_csv(const GalerkinState& u, int points) {
  std::string out = "t";
  for (int i = 0; i < u.n; ++i) out += fmt::format(",u{}", i);
  out += '\n';
  for (int s = 0; s < points; ++s) {
    double t = kTwoPi * s / points;
    Eigen::VectorXd v = u.evaluate(t);
    out += fmt::format("{:.17g}", t);
    for (int i = 0; i < u.n; ++i) out += fmt::format(",{:.17g}", v(i));
    out += '\n';
  }
  return out;
}

nlohmann::json VerificationRun::to_json() const {
  return {{"orbit_type", orbit_type},
          {"modes", modes},
          {"seed", seed},
          {"residual_norm", coarse.residual_norm},
          {"iterations", coarse.iterations},
          {"non_stationary", coarse.non_stationary},
          {"isotropy", isotropy.name},
          {"isotropy_at_least_predicted", isotropy_at_least_predicted},
          {"max_generator_defect", defect},
          {"mode1_amplitude", coarse.state.mode_norm(1)},
          {"mode1_amplitude_doubled_modes", fine.state.mode_norm(1)},
          {"amplitude_change", amplitude_change},
          {"fine_residual_norm", fine.residual_norm},
          {"solution", solution_json(coarse.state, coarse.residual_norm, isotropy.name)}};
}

VerificationRun verify_solution(const Representations& reps, const PendulaSystem& system, int orbit_type, int modes,
                                double tol, std::uint64_t seed) {
  if (modes < 1) throw InvalidParameter(kModule, "need at least one Fourier mode");
  if (system.n != reps.gamma_n()) throw InvalidParameter(kModule, "system and representations disagree on N");
  const AmalgamLattice& L = reps.lattice();
  GalerkinProblem problem = GalerkinProblem::from_system(system);
  SymmetricBasis coarse_basis = symmetric_basis(reps, orbit_type, modes);

  VerificationRun run;
  run.orbit_type = L.name(orbit_type);
  run.modes = modes;
  run.seed = seed;
  bool found = false;
  double last_residual = 0.0;
  // larger seeds when Newton falls back onto the trivial branch
  for (double amplitude : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    try {
      run.coarse = newton_solve(seed_state(coarse_basis, amplitude, seed), problem, coarse_basis, tol);
    } catch (const ConvergenceFailure& e) {
      last_residual = e.final_residual;
      continue;
    }
    if (run.coarse.non_stationary) {
      found = true;
      break;
    }
  }
  if (!found)
    throw ConvergenceFailure(kModule, "no non-stationary solution found in the fixed space of " + run.orbit_type,
                             last_residual);

  run.isotropy = isotropy_check(reps, run.coarse.state, std::max(1e-6, 100.0 * tol));
  run.defect = max_defect(run.coarse.state, L.realize_elements(L.rep(orbit_type)));
  run.isotropy_at_least_predicted = L.subconjugate(orbit_type, run.isotropy.orbit_type);

  SymmetricBasis fine_basis = symmetric_basis(reps, orbit_type, 2 * modes);
  run.fine = newton_solve(run.coarse.state.resized(2 * modes), problem, fine_basis, tol);
  run.amplitude_change = std::abs(run.fine.state.mode_norm(1) - run.coarse.state.mode_norm(1));
  return run;
}

}  // namespace eqdeg
