#include "k3/lattice.hpp"

#include <json.hpp>

namespace k3 {

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw Error(ErrorCode::DimensionMismatch, "Gram not square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw Error(ErrorCode::BadInput, "Gram not symmetric");
  auto [p, n] = signature(to_rat(gram_));
  if (static_cast<std::size_t>(p + n) != gram_.rows()) throw Error(ErrorCode::Singular, "degenerate Gram");
  pos_ = p;
  neg_ = n;
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram_(i, i) % 2 != 0) return false;
  return true;
}

Rat Lattice::pair(const RatVec& x, const RatVec& y) const { return bilinear(x, gram_rat(), y); }
Int Lattice::pair(const IntVec& x, const IntVec& y) const { return bilinear(x, gram_, y); }

RatMatrix Lattice::gram_inverse() const { return inverse(gram_rat()); }

Rat mod_rat(const Rat& x, const Rat& m) {
  Rat q = x / m;
  Int f = floor_rat(q);
  Rat r = x - m * Rat(f);
  return r;
}

Int DiscriminantForm::order() const {
  Int o = 1;
  for (const auto& d : orders) o *= d;
  return o;
}

std::vector<Int> DiscriminantForm::coordinates(const RatVec& x) const {
  RatVec y = x * inverse(to_rat(U));
  std::vector<Int> a;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::size_t i = slots[k];
    Rat yi = y[i] * Rat(all_orders[i]);
    if (yi.get_den() != 1) throw Error(ErrorCode::BadInput, "vector not in the dual lattice");
    Int r = yi.get_num() % orders[k];
    if (r < 0) r += orders[k];
    a.push_back(r);
  }
  return a;
}

DiscriminantForm discriminant_form(const Lattice& L) {
  if (!L.is_even()) throw Error(ErrorCode::BadInput, "discriminant form needs an even lattice");
  SmithForm s = smith_normal_form(L.gram());
  DiscriminantForm df;
  df.U = s.U;
  df.all_orders = s.diagonal();
  RatMatrix G = L.gram_rat();
  for (std::size_t i = 0; i < df.all_orders.size(); ++i) {
    if (df.all_orders[i] == 1) continue;
    RatVec g = to_rat(s.U.row(i));
    for (auto& x : g) x /= Rat(df.all_orders[i]);
    df.gens.push_back(g);
    df.orders.push_back(df.all_orders[i]);
    df.slots.push_back(i);
  }
  std::size_t k = df.gens.size();
  df.b = RatMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    df.q.push_back(mod_rat(bilinear(df.gens[i], G, df.gens[i]), 2));
    for (std::size_t j = 0; j < k; ++j) df.b(i, j) = mod_rat(bilinear(df.gens[i], G, df.gens[j]), 1);
  }
  return df;
}

Embedding make_embedding(const Lattice& amb, const IntMatrix& basis, const Lattice* sub) {
  if (basis.cols() != amb.rank()) throw Error(ErrorCode::DimensionMismatch, "embedding width");
  Embedding e{basis, false};
  if (sub) {
    if (basis * amb.gram() * transpose(basis) != sub->gram())
      throw Error(ErrorCode::BadInput, "embedding does not pull back the sublattice Gram");
  }
  SmithForm s = smith_normal_form(basis);
  bool prim = true;
  for (std::size_t i = 0; i < basis.rows(); ++i)
    if (s.D(i, i) != 1) prim = false;
  e.primitive = prim;
  return e;
}

OverlatticeResult overlattice(const Lattice& M, const std::vector<RatVec>& gens) {
  RatMatrix G = M.gram_rat();
  std::size_t n = M.rank();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!M.in_dual(gens[i])) throw Error(ErrorCode::NotIsotropic, "generator not in the dual lattice");
    Rat qi = bilinear(gens[i], G, gens[i]);
    if (mod_rat(qi, 2) != 0) throw Error(ErrorCode::NotIsotropic, "generator has q != 0 mod 2");
    for (std::size_t j = 0; j < i; ++j)
      if (bilinear(gens[i], G, gens[j]).get_den() != 1)
        throw Error(ErrorCode::NotIsotropic, "generators pair non-integrally");
  }
  Int den = 1;
  for (const auto& g : gens) den = lcm(den, common_denominator(g));
  IntMatrix rows(n + gens.size(), n);
  for (std::size_t i = 0; i < n; ++i) rows(i, i) = den;
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) rows(n + k, j) = Rat(gens[k][j] * Rat(den)).get_num();
  IntMatrix h = hermite_rows(rows);
  RatMatrix B = to_rat(h);
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) B(i, j) /= Rat(den);
  IntMatrix gram = to_int(B * G * transpose(B));
  OverlatticeResult r{Lattice(gram), {}, B};
  if (!r.lattice.is_even()) throw Error(ErrorCode::NotIsotropic, "overlattice is not even");
  r.embedding = make_embedding(r.lattice, to_int(inverse(B)), &M);
  return r;
}

ComplementResult orthogonal_complement(const Lattice& amb, const Embedding& sub) {
  IntMatrix K = integer_left_kernel(amb.gram() * transpose(sub.basis));
  if (K.rows() == 0) return {Lattice(IntMatrix(0, 0)), Embedding{IntMatrix(0, amb.rank()), true}};
  Lattice c(K * amb.gram() * transpose(K));
  return {c, make_embedding(amb, K, &c)};
}

RatVec project(const Lattice& amb, const Embedding& sub, const RatVec& x) {
  RatMatrix E = to_rat(sub.basis);
  RatMatrix G = amb.gram_rat();
  RatVec p = x * (G * transpose(E));
  return p * inverse(E * G * transpose(E));
}

namespace {

nlohmann::json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Int json_int(const nlohmann::json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long>());
}

}  // namespace

nlohmann::json to_json(const IntMatrix& m) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(int_json(m(i, j)));
    a.push_back(r);
  }
  return a;
}

nlohmann::json to_json(const Lattice& L) {
  return {{"rank", L.rank()}, {"gram", to_json(L.gram())},
          {"signature", {L.positive(), L.negative()}}};
}

nlohmann::json to_json_vector(const RatVec& v) {
  Int d = common_denominator(v);
  nlohmann::json num = nlohmann::json::array();
  for (const auto& x : v) num.push_back(int_json(Rat(x * Rat(d)).get_num()));
  return {{"num", num}, {"den", int_json(d)}};
}

RatVec vector_from_json(const nlohmann::json& j) {
  RatVec v;
  if (j.is_array()) {
    for (const auto& x : j) v.push_back(Rat(json_int(x)));
    return v;
  }
  Int d = j.contains("den") ? json_int(j.at("den")) : Int(1);
  for (const auto& x : j.at("num")) {
    Rat r(json_int(x), d);
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

IntMatrix int_matrix_from_json(const nlohmann::json& j) {
  std::vector<IntVec> rows;
  for (const auto& r : j) {
    IntVec row;
    for (const auto& x : r) row.push_back(json_int(x));
    rows.push_back(row);
  }
  return IntMatrix::from_rows(rows);
}

}  // namespace k3
