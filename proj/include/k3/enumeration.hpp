#pragma once

#include <functional>

#include "k3/lattice.hpp"

namespace k3 {

enum class Target { Equal, Less, LessEq, Greater, GreaterEq };

// All integer t with (t - c)·A·(t - c)ᵗ ⋈ R for positive definite A (Equal/Less/LessEq only).
std::vector<IntVec> fincke_pohst(const RatMatrix& A, const RatVec& center, const Rat& R, Target target);

// All x ∈ offset + Zⁿ with x·C = rhs and x·G·xᵗ ⋈ value, where G restricted to
// {x·C = 0} is definite. Sorted lexicographically.
std::vector<RatVec> enumerate_constrained(const RatMatrix& G, const RatVec& offset, const RatMatrix& C,
                                          const RatVec& rhs, const Rat& value, Target target);

enum class NormMode { Equal, Greater, Less };

// vectors of offset + L with ⟨x,x⟩ = norm (Equal), > norm (Greater, negative definite),
// or < norm (Less, positive definite)
std::vector<RatVec> vectors_with_norm(const Lattice& L, const RatVec& offset, const Rat& norm, NormMode mode);
// same, over the dual lattice L∨ (results in L⊗Q coordinates)
std::vector<RatVec> dual_vectors_with_norm(const Lattice& L, const Rat& norm, NormMode mode);

struct SliceQuery {
  Lattice lattice;
  RatVec pivot;
  Rat a;
  Rat n;
};

// u ∈ S∨ with ⟨pivot,u⟩ = a, ⟨u,u⟩ = n
std::vector<RatVec> affine_slice(const SliceQuery& q);
// u ∈ offset + S with ⟨pivot,u⟩ = a, ⟨u,u⟩ = n
std::vector<RatVec> affine_slice_coset(const Lattice& S, const RatVec& offset, const RatVec& pivot, const Rat& a,
                                       const Rat& n);

struct InhomogeneousQuadratic {
  RatMatrix A;  // quadratic part (positive definite)
  RatVec b;     // linear part
  Rat c;        // constant
  Rat operator()(const IntVec& x) const;
};

// integer points with Q(x) < level (strict) or Q(x) = level (exact)
std::vector<IntVec> positive_quadratic_sublevel(const InhomogeneousQuadratic& Q, const Rat& level, bool exact);

// {v ∈ S : ⟨v,v⟩ = -2, ⟨v,m⟩ < 0, ⟨v,h⟩ > 0}
std::vector<RatVec> separating_roots(const Lattice& S, const RatVec& h, const RatVec& m);
// {v ∈ S : ⟨v,v⟩ = 0, ⟨v,m⟩ = c}
std::vector<RatVec> isotropic_with_pairing(const Lattice& S, const RatVec& m, const Rat& c);
// {v ∈ S : ⟨v,v⟩ = -2, ⟨v,m⟩ = 0}
std::vector<RatVec> roots_orthogonal_to(const Lattice& S, const RatVec& m);

}  // namespace k3
