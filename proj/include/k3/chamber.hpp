#pragma once

#include "k3/enumeration.hpp"
#include "k3/fermat.hpp"
#include "k3/group.hpp"

namespace k3 {

// L = even unimodular overlattice of S ⊕ T glued along the given dual vectors
struct Gluing {
  Lattice S, T, ST, L;
  OverlatticeResult over;
  RatMatrix to_L;            // S⊕T coordinates → L coordinates
  std::vector<RatVec> glue;  // generators in S⊕T coordinates

  RatVec in_L(const RatVec& x) const { return x * to_L; }
  RatVec from_L(const RatVec& x) const { return x * over.basis; }
  RatVec s_part(const RatVec& x) const;  // first rank(S) coordinates
  RatVec t_part(const RatVec& x) const;
};

Gluing glue_lattices(const IntMatrix& N, const IntMatrix& T, const std::vector<RatVec>& glue);

struct WeylCheck {
  bool weyl = false;
  IntVec witness;  // w′ with ⟨w,w′⟩ = 1, ⟨w′,w′⟩ = 0
  ComplementResult complement;
  std::size_t roots = 0;  // norm −2 vectors found in U⊥
};

// w in L coordinates; a witness is found when none is given
WeylCheck is_weyl_vector(const Lattice& L, const IntVec& w, const IntVec* witness = nullptr);

// Q(λ) = ⟨h, −(2+⟨λ,λ⟩)/2·w + w′ + λ⟩ on U⊥, in complement-basis coordinates
InhomogeneousQuadratic weyl_quadratic(const Lattice& L, const WeylCheck& c, const IntVec& w, const RatVec& h);

struct LeechRoot {
  RatVec r;   // S⊕T coordinates
  RatVec rS;  // S coordinates
  RatVec rT;  // T coordinates
  Rat a;      // ⟨w_S, r_S⟩
  Rat n;      // ⟨r_S, r_S⟩
};

// Leech roots r of w (S⊕T coordinates) with ⟨r_S, r_S⟩ < 0, sorted by (a, n, r_S)
std::vector<LeechRoot> leech_roots_restricted(const Gluing& g, const RatVec& w, int jobs = 1);

// candidates whose hyperplane bounds the cone {x : ⟨x,r⟩ ≥ 0 ∀r}, via the test point
// p = h − (⟨h,r⟩/⟨r,r⟩)·r; duplicates are removed
std::vector<RatVec> walls(const Lattice& S, const std::vector<RatVec>& candidates, const RatVec& interior,
                          int jobs = 1);

RatVec reflect(const Lattice& S, const RatVec& v, const RatVec& r);
IntMatrix reflection_matrix(const Lattice& S, const RatVec& r);

enum class Gen { Pgu, G1, G2, Frobenius, S1 };

struct Token {
  Gen gen = Gen::Pgu;
  int index = 0;  // PGU generator index
  int exp = 1;
  bool operator==(const Token& o) const { return gen == o.gen && index == o.index && exp == o.exp; }
};
using GeneratorWord = std::vector<Token>;

struct GeneratorSet {
  std::vector<IntMatrix> pgu, pgu_inv;
  std::vector<Perm> pgu_perm;
  IntMatrix g1, g2, F, s1;
  Perm F_perm;
  std::vector<int> basis;  // for turning line permutations back into matrices
  std::vector<IntVec> classes;

  const IntMatrix& matrix(const Token& t) const;
};

GeneratorSet make_generator_set(const LineConfiguration& cfg, const IntMatrix& A1, const IntMatrix& A2);

GeneratorWord word_inverse(const GeneratorWord& w);
GeneratorWord word_concat(const GeneratorWord& a, const GeneratorWord& b);
IntMatrix evaluate(const GeneratorWord& w, const GeneratorSet& gens);
std::string token_name(const Token& t);
nlohmann::json to_json(const GeneratorWord& w);

struct ChamberTables {
  Lattice S;
  IntVec h0;
  std::vector<IntVec> line_classes;
  std::map<IntVec, int> line_index;
  OrbitTable lines;  // orbit of the class of the first basis line
  OrbitTable w648, w5184;
  PermGroup stabilizer;  // ⟨PGU, F⟩ on lines; generator k = F, k = #PGU gens
  // 3·(r·N) for each wall, so that 3⟨v,r⟩ = v·pairing
  std::vector<IntVec> pair_lines, pair648, pair5184;
};

ChamberTables make_tables(const LineConfiguration& cfg, const GeneratorSet& gens, const RatVec& h0,
                          const RatVec& b1, const RatVec& b2);

struct Reduction {
  GeneratorWord word;          // v·evaluate(word) = result
  IntVec result;
  std::vector<Int> trace;      // ⟨v,h₀⟩ at each step
};

Reduction reduce_to_chamber(const IntVec& v, const ChamberTables& tab, const GeneratorSet& gens);
GeneratorWord factor_in_oplus(const IntMatrix& gamma, const ChamberTables& tab, const GeneratorSet& gens);

}  // namespace k3
