#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqdeg/representations.hpp"
#include "json.hpp"

namespace eqdeg {

// Published D8 maximal orbit types and m = 1 basic degrees, as shipped in data/d8_fixtures.json.
struct FixtureSet {
  std::vector<std::string> class_names;
  std::map<int, std::vector<std::string>> maximal;
  std::map<int, std::vector<std::pair<std::string, std::int64_t>>> degrees;
  // irreducible whose computed data reproduces the listed maximal set
  std::map<int, IrrepLabel> matching;
  std::vector<std::string> normalizations;
};

FixtureSet load_fixtures(const std::string& path);
// Directory of the shipped data files, fixed at build time.
std::string default_fixture_path();

// Name without a trailing "#i" class disambiguator.
std::string base_orbit_name(const std::string& name);

struct FixtureComparison {
  int j = 0;
  IrrepLabel label;
  bool maximal_match = false;
  bool degree_match = false;
  // degree agrees after replacing every coefficient by its sign
  bool degree_sign_match = false;
  std::vector<std::string> computed_maximal;
  std::string computed_degree;
};

// Compare the fixtures with V_{1,j}. With `mapped` the matching irreducibles are used instead of
// V_j with the antipodal Z2 action.
std::vector<FixtureComparison> compare_fixtures(const FixtureSet& fixtures, const Representations& reps, bool mapped);

nlohmann::json to_json(const FixtureComparison& c);

}  // namespace eqdeg
