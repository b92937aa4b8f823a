#pragma once

#include <string>
#include <tuple>

#include "k3/fermat.hpp"
#include "k3/lattice.hpp"

namespace k3 {

// (e0, e1, e2, coefficient): affine polynomial in (w,x,y) with z = 1, or a ternary form
using Term3 = std::tuple<int, int, int, GF9>;
using TermList = std::vector<Term3>;

struct Fixtures {
  std::string dir;
  IntMatrix N, T;
  std::vector<int> basis_labels;
  std::map<std::string, RatVec> vectors;  // S coordinates (22) or S⊕T coordinates (26)
  std::map<std::string, IntMatrix> matrices;
  std::map<std::string, TermList> polys;
  FramePins pins;

  const RatVec& vec(const std::string& k) const;
  const TermList& poly(const std::string& k) const;
};

// explicit path, else $K3_DATA_DIR, else the build-time default
std::string resolve_data_dir(const std::string& explicit_dir = "");
Fixtures load_fixtures(const std::string& dir);

// degree-D homogenization in (w,x,y,z), D the largest total degree in the list
HomogeneousPoly homogenize(const TermList& t);
HomogeneousPoly homogenize(const TermList& t, int D);
GF9 gf9_from_json(const nlohmann::json& j);

}  // namespace k3
