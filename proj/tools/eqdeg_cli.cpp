// Command-line front end: eqdeg <verb> [options]. Exit codes: 0 success, 2 invalid input,
// 3 computational failure (including fixture mismatches).
#include <fstream>
#include <iostream>
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

struct Globals {
  bool json = false;
  std::uint64_t seed = 0;
  int modes = 8;
  double tol = 1e-10;
  std::string config;
  std::string out;
};

int parse_code(const std::string& s) {
  if (s == "*") return kStar;
  if (s == "**") return kDoubleStar;
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidParameter("cli", "isotypic index must be an integer, '*' or '**', got '" + s + "'");
}

std::string code_text(int code) { return code == kStar ? "*" : code == kDoubleStar ? "**" : std::to_string(code); }

nlohmann::json read_json(const std::string& path) {
  if (path.empty()) throw InvalidParameter("cli", "--config <path> is required");
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cli", "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter("cli", path + ": " + e.what());
  }
}

int parse_type(const OrbitLattice& L, const std::string& name) {
  auto id = L.parse(name);
  if (!id) throw InvalidParameter("cli", "unknown orbit type " + name);
  return *id;
}

std::string pad(const std::string& s, std::size_t width) { return s.size() >= width ? s : s + std::string(width - s.size(), ' '); }

std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) line += c + 1 == r.size() ? r[c] : pad(r[c], width[c] + 2);
    out += line + '\n';
  }
  return out;
}

std::string element_text(const BurnsideElement& e) { return e.to_text() + '\n'; }

// Orbit-type lattice of O(2) x D_N x Z2 or of a finite group given by --group.
std::shared_ptr<const OrbitLattice> lattice_for(int n, const std::string& group) {
  if (!group.empty()) return std::make_shared<const FiniteOrbitLattice>(parse_group(group));
  return Representations::for_dihedral(n)->lattice_ptr();
}

AnalysisConfig analysis_from(const nlohmann::json& j) {
  return is_pendula_json(j) ? pendula_system_from_json(j).analysis : AnalysisConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant degree computations for O(2) x D_N x Z2 and coupled pendula"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--seed", g.seed, "seed for randomised steps");
  app.add_option("--modes", g.modes, "Fourier truncation order M")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "analysis or pendula config JSON");
  app.add_option("--out", g.out, "write output to this file");

  int n = 8, m = 1, s = 2, s0 = 1, s1 = 1;
  std::string j_text = "", group, type_a, type_b, fixtures_path, orbit_type;
  bool trivial_z2 = false, mapped = false;

  auto* ccs = app.add_subcommand("ccs", "conjugacy classes of subgroups of a finite group");
  ccs->add_option("group", group, "D<N>, D<N>xZ2 or Z<n>")->required();

  auto* chars = app.add_subcommand("character-table", "exact character table of D_N");
  chars->add_option("N", n)->required()->check(CLI::PositiveNumber);

  auto* maximal = app.add_subcommand("maximal-orbit-types", "maximal orbit types of V_{m,j}");
  auto* basic = app.add_subcommand("basic-degree", "basic degree of V_{m,j}");
  for (auto* sub : {maximal, basic}) {
    sub->add_option("--N", n, "dihedral order")->check(CLI::Range(1, 64));
    sub->add_option("--m", m, "Fourier mode");
    sub->add_option("--j", j_text, "isotypic index (integer, * or **); all of R^N when omitted");
    sub->add_flag("--trivial-z2", trivial_z2, "let the Z2 factor act trivially");
  }

  auto* mul = app.add_subcommand("burnside-mul", "product of two generators of the Burnside ring");
  mul->add_option("lhs", type_a)->required();
  mul->add_option("rhs", type_b)->required();
  mul->add_option("--N", n, "dihedral order of O(2) x D_N x Z2");
  mul->add_option("--group", group, "use a finite group instead");

  auto* fold_cmd = app.add_subcommand("fold", "s-folding of an orbit type");
  fold_cmd->add_option("type", type_a)->required();
  fold_cmd->add_option("--s", s)->check(CLI::PositiveNumber);
  fold_cmd->add_option("--N", n);

  auto* rel = app.add_subcommand("folding-relation", "whether fold(H, s1) is subconjugate to fold(H, s0)");
  rel->add_option("type", type_a)->required();
  rel->add_option("--s0", s0)->check(CLI::PositiveNumber);
  rel->add_option("--s1", s1)->check(CLI::PositiveNumber);
  rel->add_option("--N", n);

  auto* analyze = app.add_subcommand("analyze", "degree invariant and existence report for --config");
  auto* verify = app.add_subcommand("verify-solution", "Galerkin solve in a fixed-point space for --config");
  verify->add_option("--orbit-type", orbit_type, "defaults to the maximal type of V_{1,N/2}");

  auto* fixtures = app.add_subcommand("fixtures-check", "compare with the shipped D8 fixture lists");
  fixtures->add_option("--fixtures", fixtures_path);
  fixtures->add_flag("--mapped", mapped, "use the irreducibles that match each listed set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream out;
  int status = 0;
  try {
    auto label = [&](int code) { return IrrepLabel{m, code, !trivial_z2}; };
    auto codes = [&]() { return j_text.empty() ? isotypic_indices(n) : std::vector<int>{parse_code(j_text)}; };

    if (*ccs) {
      auto lat = subgroup_lattice(parse_group(group));
      const auto& classes = lat->classes();
      if (g.json) {
        out << nlohmann::json{{"group", group}, {"count", classes.size()}, {"classes", classes_to_json(classes)}}.dump(2)
            << '\n';
      } else {
        std::vector<std::vector<std::string>> rows{{"class", "order", "size", "weyl"}};
        for (std::size_t c = 0; c < classes.size(); ++c)
          rows.push_back({classes[c].name, std::to_string(classes[c].representative.order()),
                          std::to_string(classes[c].class_size), std::to_string(lat->weyl_order(static_cast<int>(c)))});
        out << aligned(rows) << classes.size() << " classes\n";
      }
    } else if (*chars) {
      auto t = dihedral_character_table(n);
      if (g.json) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < t.irreps.size(); ++r) {
          std::vector<std::string> vals;
          for (const auto& v : t.rows[r]) vals.push_back(v.symbolic);
          rows.push_back({{"irrep", t.irreps[r].label}, {"dim", t.irreps[r].dim}, {"values", vals}});
        }
        out << nlohmann::json{{"N", n}, {"classes", t.class_labels}, {"sizes", t.class_sizes}, {"irreps", rows}}.dump(2)
            << '\n';
      } else {
        std::vector<std::vector<std::string>> rows{{""}};
        for (std::size_t c = 0; c < t.class_labels.size(); ++c)
          rows[0].push_back(fmt::format("{} ({})", t.class_labels[c], t.class_sizes[c]));
        for (std::size_t r = 0; r < t.irreps.size(); ++r) {
          std::vector<std::string> row{t.irreps[r].label};
          for (const auto& v : t.rows[r]) row.push_back(v.symbolic);
          rows.push_back(row);
        }
        out << aligned(rows);
      }
    } else if (*maximal) {
      auto reps = Representations::for_dihedral(n);
      nlohmann::json list = nlohmann::json::array();
      for (int code : codes()) {
        auto set = reps->maximal_orbit_types(label(code));
        if (g.json) {
          list.push_back(reps->to_json(set));
        } else {
          out << to_string(set.label) << ":";
          for (int id : set.members) out << ' ' << reps->lattice().name(id);
          out << '\n';
        }
      }
      if (g.json) out << list.dump(2) << '\n';
    } else if (*basic) {
      auto reps = Representations::for_dihedral(n);
      nlohmann::json list = nlohmann::json::array();
      for (int code : codes()) {
        auto d = basic_degree(*reps, label(code));
        if (g.json)
          list.push_back({{"label", to_string(label(code))}, {"m", m}, {"j", code_text(code)}, {"degree", d.to_json()}});
        else
          out << to_string(label(code)) << ": " << d.to_text() << '\n';
      }
      if (g.json) out << list.dump(2) << '\n';
    } else if (*mul) {
      auto lat = lattice_for(n, group);
      auto p = generator_product(lat, parse_type(*lat, type_a), parse_type(*lat, type_b));
      out << (g.json ? p.to_json().dump(2) + '\n' : element_text(p));
    } else if (*fold_cmd) {
      auto reps = Representations::for_dihedral(n);
      const auto& L = reps->lattice();
      int f = L.fold_class(parse_type(L, type_a), s);
      if (g.json)
        out << nlohmann::json{{"type", L.name(parse_type(L, type_a))}, {"s", s}, {"folded", L.name(f)}}.dump(2) << '\n';
      else
        out << L.name(f) << '\n';
    } else if (*rel) {
      auto reps = Representations::for_dihedral(n);
      const auto& L = reps->lattice();
      int h = parse_type(L, type_a);
      bool closed = folding_relation(L.m_of_class(h), s0, s1);
      bool oracle = L.subconjugate(L.fold_class(h, s1), L.fold_class(h, s0));
      if (g.json)
        out << nlohmann::json{{"type", L.name(h)}, {"m", L.m_of_class(h)}, {"s0", s0}, {"s1", s1},
                              {"relation", closed}, {"subconjugate", oracle}}
                   .dump(2)
            << '\n';
      else
        out << fmt::format("m = {}: relation {}, subconjugate {}\n", L.m_of_class(h), closed, oracle);
      if (closed != oracle) throw InternalConsistency("cli", "closed-form folding relation disagrees with the lattice");
    } else if (*analyze) {
      auto config = analysis_from(read_json(g.config));
      auto report = degree_report(config);
      auto existence = existence_report(config);
      if (g.json) {
        report["existence"] = existence.to_json();
        out << report.dump(2) << '\n';
      } else {
        out << "Sigma_0:";
        for (const auto& e : report["sigma_zero"]) out << fmt::format(" ({},{})", e["m"].get<int>(), e["j"].dump());
        out << "\ninvariant: " << degree_invariant(config).to_text() << "\n";
        std::vector<std::vector<std::string>> rows{{"orbit type", "m", "j", "coeff"}};
        for (const auto& e : existence.entries)
          rows.push_back({e.name, std::to_string(e.m), code_text(e.j), std::to_string(e.coeff)});
        out << aligned(rows) << existence.entries.size() << " existence entries\n";
      }
    } else if (*verify) {
#ifdef EQDEG_HAVE_SOLVER
      auto sys = pendula_system_from_json(read_json(g.config), false);
      auto reps = Representations::for_dihedral(sys.n);
      const auto& L = reps->lattice();
      int h = orbit_type.empty() ? reps->maximal_orbit_types({1, isotypic_indices(sys.n).back()}).members.at(0)
                                 : parse_type(L, orbit_type);
      auto run = verify_solution(*reps, sys, h, g.modes, g.tol, g.seed);
      if (!g.out.empty()) {
        std::ofstream csv(g.out + ".csv");
        csv << time_series_csv(run.coarse.state);
      }
      if (g.json)
        out << run.to_json().dump(2) << '\n';
      else
        out << fmt::format(
            "orbit type {}\nresidual {:.3e} after {} steps, non-stationary {}\nisotropy {} (>= predicted: {}), "
            "generator defect {:.3e}\nmode-1 amplitude {:.12f}, change with {} modes {:.3e}\n",
            run.orbit_type, run.coarse.residual_norm, run.coarse.iterations, run.coarse.non_stationary,
            run.isotropy.name, run.isotropy_at_least_predicted, run.defect, run.coarse.state.mode_norm(1),
            2 * g.modes, run.amplitude_change);
#else
      throw Unsupported("cli", "built without the Galerkin solver");
#endif
    } else if (*fixtures) {
      auto set = load_fixtures(fixtures_path.empty() ? default_fixture_path() : fixtures_path);
      auto reps = Representations::for_dihedral(8);
      auto result = compare_fixtures(set, *reps, mapped);
      bool all = true;
      nlohmann::json list = nlohmann::json::array();
      for (const auto& c : result) {
        bool ok = c.maximal_match && c.degree_match;
        all = all && ok;
        if (g.json)
          list.push_back(to_json(c));
        else
          out << fmt::format("{} j={} via {}: maximal {}, degree {} (signs {})\n", ok ? "PASS" : "FAIL", c.j,
                             to_string(c.label), c.maximal_match ? "match" : "differ",
                             c.degree_match ? "match" : "differ", c.degree_sign_match ? "match" : "differ");
      }
      if (g.json) out << nlohmann::json{{"pass", all}, {"comparisons", list}}.dump(2) << '\n';
      else out << (all ? "PASS" : "FAIL") << '\n';
      if (!all) status = 3;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (g.out.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(g.out);
    if (!file) {
      std::cerr << "error: cannot write " << g.out << '\n';
      return 2;
    }
    file << out.str();
  }
  return status;
}
