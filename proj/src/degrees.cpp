#include "eqdeg/degrees.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {

const char* kModule = "degrees";

const EigenEntry& find_entry(const AnalysisConfig& c, int j) {
  for (const auto& e : c.eigenvalues)
    if (e.j == j) return e;
  throw InvalidParameter(kModule, "no eigenvalue configured for isotypic index " + std::to_string(j));
}

void validate(const AnalysisConfig& c) {
  if (c.gamma_n < 1) throw InvalidParameter(kModule, "N must be positive");
  if (!(c.beta > 0) || !std::isfinite(c.beta)) throw InvalidParameter(kModule, "beta must be positive");
  std::set<int> seen;
  for (const auto& e : c.eigenvalues) {
    dihedral_irrep_dim(c.gamma_n, e.j);
    if (!seen.insert(e.j).second) throw InvalidParameter(kModule, "repeated isotypic index " + std::to_string(e.j));
    if (e.multiplicity < 1) throw InvalidParameter(kModule, "multiplicity must be positive");
    if (!std::isfinite(e.mu)) throw InvalidParameter(kModule, "eigenvalue must be finite");
  }
  if (c.truncation_guard && *c.truncation_guard < 1) throw InvalidParameter(kModule, "truncation guard must be positive");
}

// m^2 + beta^2 mu, checked against the resonance band.
double numerator_checked(int m, const EigenEntry& e, double beta) {
  double b2mu = beta * beta * e.mu;
  double v = static_cast<double>(m) * m + b2mu;
  double scale = std::max({1.0, static_cast<double>(m) * m, std::abs(b2mu)});
  if (std::abs(v) <= kSignEpsilon * scale)
    throw PreconditionViolation(kModule, "non-resonance fails at (m, j) = (" + std::to_string(m) + ", " +
                                             std::to_string(e.j) + "): mu_j = -m^2/beta^2");
  return v;
}

nlohmann::json index_json(const SpectralIndex& s) { return {{"m", s.m}, {"j", s.j}, {"mu_mj", s.mu_mj}}; }

// Keep only terms lying above some target.
BurnsideElement restrict_up(const BurnsideElement& a, const AmalgamLattice& L, const std::vector<int>& targets) {
  BurnsideElement out(a.lattice());
  for (const auto& [id, c] : a.terms())
    for (int t : targets)
      if (t == id || L.subconjugate(t, id)) {
        out.add(id, c);
        break;
      }
  return out;
}

}  // namespace

AnalysisConfig AnalysisConfig::from_json(const nlohmann::json& j) {
  AnalysisConfig c;
  try {
    c.gamma_n = j.at("N").get<int>();
    c.beta = j.at("beta").get<double>();
    for (const auto& e : j.at("eigenvalues")) {
      EigenEntry entry;
      const auto& jv = e.at("j");
      if (jv.is_string()) {
        std::string s = jv.get<std::string>();
        entry.j = s == "*" ? kStar : s == "**" ? kDoubleStar : std::stoi(s);
      } else {
        entry.j = jv.get<int>();
      }
      entry.mu = e.at("mu").get<double>();
      entry.multiplicity = e.value("multiplicity", 1);
      c.eigenvalues.push_back(entry);
    }
    if (j.contains("truncation_guard")) c.truncation_guard = j.at("truncation_guard").get<int>();
    c.antipodal = j.value("antipodal", true);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(kModule, std::string("malformed analysis config: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidParameter(kModule, "malformed isotypic index");
  }
  validate(c);
  return c;
}

nlohmann::json AnalysisConfig::to_json() const {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : eigenvalues) ev.push_back({{"j", e.j}, {"mu", e.mu}, {"multiplicity", e.multiplicity}});
  nlohmann::json out = {{"N", gamma_n}, {"beta", beta}, {"eigenvalues", ev}, {"antipodal", antipodal}};
  if (truncation_guard) out["truncation_guard"] = *truncation_guard;
  return out;
}

double operator_eigenvalue(int m, int j, const AnalysisConfig& config) {
  validate(config);
  if (m < 0) throw InvalidParameter(kModule, "mode m must be nonnegative");
  return numerator_checked(m, find_entry(config, j), config.beta) / (1.0 + static_cast<double>(m) * m);
}

SigmaSets sigma_sets(const AnalysisConfig& config) {
  validate(config);
  SigmaSets out;
  for (const auto& e : config.eigenvalues) {
    for (int m = 0;; ++m) {
      double v = numerator_checked(m, e, config.beta);
      if (v > 0) break;
      if (config.truncation_guard && m > *config.truncation_guard)
        throw InvalidParameter(kModule, "truncation guard binds for isotypic index " + std::to_string(e.j));
      SpectralIndex idx{m, e.j, v / (1.0 + static_cast<double>(m) * m)};
      out.minus.push_back(idx);
      if (e.multiplicity % 2 == 1) out.zero.push_back(idx);
    }
  }
  auto by_mj = [](const SpectralIndex& a, const SpectralIndex& b) { return std::tie(a.m, a.j) < std::tie(b.m, b.j); };
  std::sort(out.minus.begin(), out.minus.end(), by_mj);
  std::sort(out.zero.begin(), out.zero.end(), by_mj);
  return out;
}

BurnsideElement basic_degree(const Representations& reps, const IrrepLabel& label) {
  reps.validate(label);
  const AmalgamLattice& L = reps.lattice();
  std::shared_ptr<const OrbitLattice> lat = reps.lattice_ptr();
  std::vector<int> types = reps.isotropy_types(label);
  std::vector<std::pair<int, std::int64_t>> done;
  BurnsideElement out(lat);
  for (int h : types) {
    std::int64_t num = reps.fixed_point_dim(label, h) % 2 == 0 ? 1 : -1;
    for (const auto& [k, nk] : done) {
      if (nk == 0) continue;
      int c = L.n_count(h, k);
      if (c != 0) num -= nk * c * L.weyl(k);
    }
    std::int64_t w = L.weyl(h);
    if (num % w != 0)
      throw LatticeIncomplete(kModule, "inexact division at " + L.name(h) + " in the basic degree of " + to_string(label));
    done.emplace_back(h, num / w);
    out.add(h, num / w);
  }
  return out;
}

BurnsideElement degree_invariant(const AnalysisConfig& config, const std::vector<int>* upward_of) {
  SigmaSets sets = sigma_sets(config);
  auto reps = Representations::for_dihedral(config.gamma_n);
  const AmalgamLattice& L = reps->lattice();
  BurnsideElement acc = unit(reps->lattice_ptr());
  for (const auto& idx : sets.zero) {
    BurnsideElement d = basic_degree(*reps, {idx.m, idx.j, config.antipodal});
    if (upward_of) d = restrict_up(d, L, *upward_of);
    acc = multiply(acc, d);
    if (upward_of) acc = restrict_up(acc, L, *upward_of);
  }
  return acc;
}

BurnsideElement fold(const BurnsideElement& a, int s) {
  auto lat = std::dynamic_pointer_cast<const AmalgamLattice>(a.lattice());
  if (!lat) throw InvalidParameter(kModule, "folding needs an element of the O(2) lattice");
  if (s < 1) throw InvalidParameter(kModule, "folding index must be positive");
  BurnsideElement out(a.lattice());
  for (const auto& [id, c] : a.terms()) out.add(lat->fold_class(id, s), c);
  return out;
}

int x0_of(int weyl_order) {
  if (weyl_order == 2) return 1;
  if (weyl_order == 1) return 2;
  throw InvalidParameter(kModule, "x0 is defined for |W(H)| in {1, 2}, got " + std::to_string(weyl_order));
}

namespace {

// Closed form over odd folds: -x0 [odd(s0)] + 2 x0 sum over I of (-2)^{|I|-2} [B(I)] [s0 = gcd I].
std::int64_t closed_form(int x0, int mh, int s0, bool s0_odd, const std::vector<int>& odd_folds) {
  std::int64_t total = s0_odd ? -x0 : 0;
  int n = static_cast<int>(odd_folds.size());
  if (n > 24) throw InvalidParameter(kModule, "too many folds for subset enumeration");
  std::int64_t sum = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int size = std::popcount(mask);
    if (size < 2) continue;
    std::vector<int> subset;
    int g = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) {
        subset.push_back(odd_folds[i]);
        g = std::gcd(g, odd_folds[i]);
      }
    if (g != s0 || !boolean_B(mh, subset)) continue;
    std::int64_t term = 1;
    for (int i = 0; i < size - 2; ++i) term *= -2;
    sum += term;
  }
  return total + 2 * x0 * sum;
}

}  // namespace

std::int64_t product_coeff(const Representations& reps, int h, int m, int s0, const std::vector<FoldedFactor>& factors,
                           bool antipodal) {
  if (m < 1 || s0 < 1) throw InvalidParameter(kModule, "mode and folding index must be positive");
  const AmalgamLattice& L = reps.lattice();
  std::set<int> seen;
  bool s0_odd = false;
  std::vector<int> odd_folds;
  for (const auto& f : factors) {
    if (f.s < 1) throw InvalidParameter(kModule, "folding index must be positive");
    if (!seen.insert(f.s).second) throw InvalidParameter(kModule, "folding indices of the factors must be distinct");
    int dim = reps.fixed_point_dim({f.s * m, f.j, antipodal}, L.fold_class(h, f.s));
    if (dim % 2 == 1) {
      odd_folds.push_back(f.s);
      if (f.s == s0) s0_odd = true;
    }
  }
  return closed_form(x0_of(L.weyl(h)), L.m_of_class(h), s0, s0_odd, odd_folds);
}

std::int64_t coeff_maximal_fast(const Representations& reps, int h, int s0, const AnalysisConfig& config) {
  if (s0 < 1) throw InvalidParameter(kModule, "folding index must be positive");
  if (reps.gamma_n() != config.gamma_n) throw InvalidParameter(kModule, "config and representations disagree on N");
  const AmalgamLattice& L = reps.lattice();
  auto witness = reps.is_maximal_kind(h, config.antipodal);
  if (!witness) throw InvalidParameter(kModule, L.name(h) + " is not of maximal kind");
  int m0 = witness->m;
  SigmaSets sets = sigma_sets(config);
  // n^s(H) counts (m0 s, j) in Sigma_0 with dim V^{^sH} odd; other modes have no term at ^sH
  std::map<int, int> counts;
  for (const auto& idx : sets.zero)
    if (idx.m >= 1 && idx.m % m0 == 0) {
      int s = idx.m / m0;
      if (reps.fixed_point_dim({idx.m, idx.j, config.antipodal}, L.fold_class(h, s)) % 2 == 1) ++counts[s];
    }
  std::vector<int> odd_folds;
  bool s0_odd = false;
  for (const auto& [s, n] : counts)
    if (n % 2 == 1) {
      odd_folds.push_back(s);
      if (s == s0) s0_odd = true;
    }
  return closed_form(x0_of(L.weyl(h)), L.m_of_class(h), s0, s0_odd, odd_folds);
}

nlohmann::json degree_report(const AnalysisConfig& config, int max_fold) {
  SigmaSets sets = sigma_sets(config);
  auto reps = Representations::for_dihedral(config.gamma_n);
  const AmalgamLattice& L = reps->lattice();
  nlohmann::json out;
  out["sigma_minus"] = nlohmann::json::array();
  out["sigma_zero"] = nlohmann::json::array();
  for (const auto& s : sets.minus) out["sigma_minus"].push_back(index_json(s));
  for (const auto& s : sets.zero) out["sigma_zero"].push_back(index_json(s));
  out["invariant"] = degree_invariant(config).to_json();

  std::set<int> bases;
  for (int j : isotypic_indices(config.gamma_n))
    for (int id : reps->maximal_orbit_types({1, j, config.antipodal}).members) bases.insert(id);
  for (const auto& e : config.eigenvalues)
    for (int id : reps->maximal_orbit_types({1, e.j, config.antipodal}).members) bases.insert(id);
  std::vector<int> ordered(bases.begin(), bases.end());
  std::sort(ordered.begin(), ordered.end(), [&](int a, int b) { return L.name(a) < L.name(b); });

  nlohmann::json nonzero = nlohmann::json::array();
  for (int s0 = 1; s0 <= max_fold; ++s0)
    for (int h : ordered) {
      std::int64_t c = coeff_maximal_fast(*reps, h, s0, config);
      if (c == 0) continue;
      int folded = L.fold_class(h, s0);
      nlohmann::json witness = nlohmann::json::array();
      for (const auto& idx : sets.zero)
        if (idx.m == s0 && reps->fixed_point_dim({idx.m, idx.j, config.antipodal}, folded) % 2 == 1)
          witness.push_back({{"m", idx.m}, {"j", idx.j}});
      nonzero.push_back({{"orbit_type", L.name(folded)}, {"coeff", c}, {"witness", witness}});
    }
  out["maximal_kind_nonzero"] = nonzero;
  return out;
}

}  // namespace eqdeg
