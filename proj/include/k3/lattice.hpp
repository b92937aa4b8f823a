#pragma once

#include <json.hpp>

#include "k3/exact.hpp"

namespace k3 {

class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix gram);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  int positive() const { return pos_; }
  int negative() const { return neg_; }
  bool is_even() const;
  Int det() const { return k3::determinant(gram_); }
  bool is_unimodular() const { return abs(det()) == 1; }

  Rat pair(const RatVec& x, const RatVec& y) const;
  Int pair(const IntVec& x, const IntVec& y) const;
  Rat norm(const RatVec& x) const { return pair(x, x); }
  Int norm(const IntVec& x) const { return pair(x, x); }

  RatMatrix gram_rat() const { return to_rat(gram_); }
  RatMatrix gram_inverse() const;
  // x·G (coordinates of ⟨x,·⟩ against the basis)
  RatVec dual_coordinates(const RatVec& x) const { return x * gram_rat(); }
  RatVec from_dual_coordinates(const RatVec& xi) const { return xi * gram_inverse(); }
  bool in_dual(const RatVec& x) const { return is_integral(dual_coordinates(x)); }

 private:
  IntMatrix gram_;
  int pos_ = 0, neg_ = 0;
};

// M∨/M: generators g_i of orders d_i > 1
struct DiscriminantForm {
  std::vector<Int> orders;
  std::vector<RatVec> gens;  // lifts in M⊗Q, lattice coordinates
  std::vector<Rat> q;        // q(g_i) mod 2, in [0,2)
  RatMatrix b;               // b(g_i,g_j) mod 1, in [0,1)
  IntMatrix U;  // Smith row transform; gens are rows of U scaled by 1/d_i
  std::vector<Int> all_orders;
  std::vector<std::size_t> slots;  // index into all_orders for each generator
  // coordinates of x ∈ M∨ in terms of gens, reduced mod orders
  std::vector<Int> coordinates(const RatVec& x) const;
  Int order() const;
};

Rat mod_rat(const Rat& x, const Rat& m);  // representative in [0, m)

DiscriminantForm discriminant_form(const Lattice& L);

struct Embedding {
  IntMatrix basis;  // rows: sublattice basis in ambient coordinates
  bool primitive = false;
};

Embedding make_embedding(const Lattice& amb, const IntMatrix& basis, const Lattice* sub = nullptr);

struct OverlatticeResult {
  Lattice lattice;
  Embedding embedding;  // M inside the overlattice
  RatMatrix basis;      // overlattice basis in M coordinates
};

OverlatticeResult overlattice(const Lattice& M, const std::vector<RatVec>& gens);

struct ComplementResult {
  Lattice lattice;
  Embedding embedding;
};

ComplementResult orthogonal_complement(const Lattice& amb, const Embedding& sub);

// orthogonal projection onto the span of sub, as sub-basis coordinates (sub∨ coordinates for integral x)
RatVec project(const Lattice& amb, const Embedding& sub, const RatVec& x);

nlohmann::json to_json(const Lattice& L);
nlohmann::json to_json_vector(const RatVec& v);
RatVec vector_from_json(const nlohmann::json& j);  // {"num":[..],"den":d} or plain array
IntMatrix int_matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IntMatrix& m);

}  // namespace k3
