#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "k3/lattice.hpp"

namespace k3 {

// permutations act on the right: p^(ab) = (p^a)^b, stored as image arrays
using Perm = std::vector<std::uint16_t>;

Perm perm_identity(std::size_t n);
Perm perm_mul(const Perm& a, const Perm& b);  // first a, then b
Perm perm_inv(const Perm& a);
bool perm_is_identity(const Perm& a);
Perm perm_pow(const Perm& a, long e);
std::size_t perm_order(const Perm& a);

struct Letter {
  int gen;
  int exp;  // +1 or -1
  bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
};
using Word = std::vector<Letter>;

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);  // freely reduced
Perm evaluate_word(const Word& w, const std::vector<Perm>& gens, std::size_t degree);

class PermGroup {
 public:
  // base_prefix points are placed first in the base
  static PermGroup schreier_sims(const std::vector<Perm>& gens, std::size_t degree,
                                 const std::vector<int>& base_prefix = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  std::vector<int> base() const;
  std::vector<std::size_t> fundamental_orbit_lengths() const;
  Int order() const;

  struct SiftResult {
    bool member = false;
    Word word;  // evaluates to the sifted permutation when member
  };
  SiftResult membership(const Perm& g) const;
  std::vector<int> orbit(int point) const;
  // generators of the stabilizer of base()[0] (as permutations)
  std::vector<Perm> first_stabilizer_generators() const;

 private:
  struct Strong {
    Perm p, inv;
    Word w;
  };
  struct Level {
    int point = 0;
    std::vector<int> gens;  // indices into strong_
    std::vector<int> via;   // -1: not in orbit, -2: root
    std::vector<int> parent;
    std::vector<int> orbit;
  };
  void rebuild_orbit(Level& lvl) const;
  Word transversal_word(const Level& lvl, int p) const;
  Perm transversal(const Level& lvl, int p) const;
  // strips g from level start; returns residue and the level where it stopped
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t start, Word* w) const;

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Strong> strong_;
  std::vector<Level> levels_;
};

struct OrbitTable {
  RatVec seed;
  std::vector<RatVec> elements;  // BFS order; elements[0] == seed
  std::vector<int> parent;       // -1 for the seed
  std::vector<int> via;          // generator index applied to the parent
  std::map<RatVec, int> index;

  std::optional<int> find(const RatVec& v) const;
  Word word(int e) const;  // seed·(evaluated word) = elements[e]
};

OrbitTable matrix_orbit(const RatVec& seed, const std::vector<IntMatrix>& gens, std::size_t bound);

std::vector<IntMatrix> isometries_of_definite(const Lattice& T, std::size_t fanout_limit = 200000,
                                              std::size_t result_limit = 1000000);

struct DiscriminantAction {
  std::size_t target_order = 0;  // |O(q)|
  std::size_t image_order = 0;
  bool surjective = false;
};

DiscriminantAction discriminant_action(const Lattice& T, const std::vector<IntMatrix>& isometries);

}  // namespace k3
