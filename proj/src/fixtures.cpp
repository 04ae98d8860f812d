#include "eqdeg/fixtures.hpp"

#include <algorithm>
#include <fstream>

#include "eqdeg/degrees.hpp"
#include "eqdeg/errors.hpp"

#ifndef EQDEG_DATA_DIR
#define EQDEG_DATA_DIR "data"
#endif

namespace eqdeg {

namespace {

const char* kModule = "fixtures";

int parse_code(const nlohmann::json& v) {
  if (v.is_number_integer()) return v.get<int>();
  std::string s = v.get<std::string>();
  if (s == "*") return kStar;
  if (s == "**") return kDoubleStar;
  return std::stoi(s);
}

using Signature = std::vector<std::pair<std::string, std::int64_t>>;

Signature signature(Signature terms, bool signs_only) {
  for (auto& [name, c] : terms) {
    name = base_orbit_name(name);
    if (signs_only) c = c > 0 ? 1 : -1;
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

}  // namespace

std::string default_fixture_path() { return std::string(EQDEG_DATA_DIR) + "/d8_fixtures.json"; }

FixtureSet load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter(kModule, "cannot open fixture file " + path);
  FixtureSet f;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    f.class_names = j.at("class_names").get<std::vector<std::string>>();
    f.normalizations = j.value("normalizations", std::vector<std::string>{});
    for (const auto& [k, v] : j.at("maximal_orbit_types").items())
      f.maximal[std::stoi(k)] = v.get<std::vector<std::string>>();
    for (const auto& [k, v] : j.at("basic_degrees").items())
      for (const auto& term : v) f.degrees[std::stoi(k)].emplace_back(term.at(0).get<std::string>(), term.at(1).get<std::int64_t>());
    for (const auto& [k, v] : j.at("matching_irreps").items())
      f.matching[std::stoi(k)] = IrrepLabel{1, parse_code(v.at("j")), v.at("antipodal").get<bool>()};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(kModule, std::string("malformed fixture file: ") + e.what());
  }
  return f;
}

std::string base_orbit_name(const std::string& name) {
  auto pos = name.rfind(")#");
  return pos == std::string::npos ? name : name.substr(0, pos + 1);
}

std::vector<FixtureComparison> compare_fixtures(const FixtureSet& fixtures, const Representations& reps, bool mapped) {
  const AmalgamLattice& L = reps.lattice();
  std::vector<FixtureComparison> out;
  for (const auto& [j, names] : fixtures.maximal) {
    FixtureComparison c;
    c.j = j;
    c.label = mapped ? fixtures.matching.at(j) : IrrepLabel{1, j, true};
    MaximalSet set = reps.maximal_orbit_types(c.label);
    std::vector<std::string> got, want;
    for (int id : set.members) {
      c.computed_maximal.push_back(L.name(id));
      got.push_back(base_orbit_name(L.name(id)));
    }
    for (const auto& n : names) want.push_back(base_orbit_name(n));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    c.maximal_match = got == want;

    BurnsideElement deg = basic_degree(reps, c.label);
    c.computed_degree = deg.to_text();
    Signature computed;
    for (int id : deg.ordered_ids()) computed.emplace_back(L.name(id), deg.coeff(id));
    auto it = fixtures.degrees.find(j);
    if (it != fixtures.degrees.end()) {
      c.degree_match = signature(computed, false) == signature(it->second, false);
      c.degree_sign_match = signature(computed, true) == signature(it->second, true);
    }
    out.push_back(c);
  }
  return out;
}

nlohmann::json to_json(const FixtureComparison& c) {
  return {{"j", c.j},
          {"irrep", to_string(c.label)},
          {"maximal_match", c.maximal_match},
          {"degree_match", c.degree_match},
          {"degree_sign_match", c.degree_sign_match},
          {"computed_maximal", c.computed_maximal},
          {"computed_degree", c.computed_degree}};
}

}  // namespace eqdeg
