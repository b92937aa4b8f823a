#include "k3/data.hpp"

#include <cstdlib>
#include <fstream>

#ifndef K3_DEFAULT_DATA_DIR
#define K3_DEFAULT_DATA_DIR "data"
#endif

namespace k3 {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

TermList terms_from_json(const nlohmann::json& j) {
  TermList t;
  for (const auto& e : j) t.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), gf9_from_json(e[3]));
  return t;
}

}  // namespace

GF9 gf9_from_json(const nlohmann::json& j) { return GF9::make(j[0].get<int>(), j[1].get<int>()); }

const RatVec& Fixtures::vec(const std::string& k) const {
  auto it = vectors.find(k);
  if (it == vectors.end()) throw Error(ErrorCode::BadInput, "missing fixture vector " + k);
  return it->second;
}

const TermList& Fixtures::poly(const std::string& k) const {
  auto it = polys.find(k);
  if (it == polys.end()) throw Error(ErrorCode::BadInput, "missing fixture polynomial " + k);
  return it->second;
}

std::string resolve_data_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* e = std::getenv("K3_DATA_DIR"); e && *e) return e;
  return K3_DEFAULT_DATA_DIR;
}

HomogeneousPoly homogenize(const TermList& t) {
  int D = 0;
  for (const auto& [a, b, c, co] : t) D = std::max(D, a + b + c);
  return homogenize(t, D);
}

HomogeneousPoly homogenize(const TermList& t, int D) {
  std::map<std::array<int, 4>, GF9> acc;
  for (const auto& [a, b, c, co] : t) {
    if (a + b + c > D) throw Error(ErrorCode::BadInput, "term exceeds homogenization degree");
    acc[{a, b, c, D - a - b - c}] += co;
  }
  HomogeneousPoly p;
  for (const auto& [e, c] : acc)
    if (!c.is_zero()) p.terms.emplace_back(e, c);
  return p;
}

Fixtures load_fixtures(const std::string& dir) {
  Fixtures fx;
  fx.dir = dir;
  auto lat = read_json(dir + "/lattice.json");
  fx.N = int_matrix_from_json(lat["N"]);
  fx.T = int_matrix_from_json(lat["T"]);
  fx.basis_labels = lat["basis_lines"].get<std::vector<int>>();
  Lattice ST(block_diag(fx.N, fx.T));
  for (const auto& [k, v] : lat["vectors"].items()) {
    RatVec x = vector_from_json(v);
    if (v.value("basis", "lattice") == "dual") x = ST.from_dual_coordinates(x);
    fx.vectors[k] = x;
  }
  for (const auto& [k, v] : lat["matrices"].items()) fx.matrices[k] = int_matrix_from_json(v);

  auto pol = read_json(dir + "/polynomials.json");
  for (const auto& [k, v] : pol.items()) fx.polys[k] = terms_from_json(v);

  auto pins = read_json(dir + "/pins.json");
  auto map_of = [&](const nlohmann::json& names) {
    HomogeneousMap m;
    for (const auto& n : names) m.push_back(homogenize(fx.poly(n.get<std::string>())));
    return m;
  };
  for (std::size_t k = 0; k < 4; ++k) fx.pins.plane[k] = gf9_from_json(pins["plane"]["form"][k]);
  fx.pins.plane_labels = pins["plane"]["labels"].get<std::vector<int>>();
  for (const auto& b : pins["base_loci"])
    fx.pins.base_loci.push_back({map_of(b["map"]), b["labels"].get<std::vector<int>>()});
  for (const auto& im : pins["images"]) {
    FramePins::Images e;
    e.map = map_of(im["map"]);
    for (const auto& [lab, pt] : im["points"].items()) {
      std::vector<GF9> p;
      for (const auto& c : pt) p.push_back(gf9_from_json(c));
      e.images[std::stoi(lab)] = p;
    }
    fx.pins.images.push_back(e);
  }
  for (const auto& p : pins["frobenius_pairs"]) fx.pins.frobenius_pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
  for (const auto& c : pins["chains"]) fx.pins.chains.push_back(c.get<std::vector<int>>());
  return fx;
}

}  // namespace k3
