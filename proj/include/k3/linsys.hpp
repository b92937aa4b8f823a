#pragma once

#include "k3/data.hpp"
#include "k3/enumeration.hpp"

namespace k3 {

// polynomial over F9 in (w,x,y), terms sorted by degrevlex (w > x > y), largest first
class Poly {
 public:
  using Mono = std::uint32_t;  // w<<16 | x<<8 | y
  static Mono mono(int a, int b, int c) { return static_cast<Mono>((a << 16) | (b << 8) | c); }
  static int ew(Mono m) { return static_cast<int>(m >> 16); }
  static int ex(Mono m) { return static_cast<int>((m >> 8) & 0xff); }
  static int ey(Mono m) { return static_cast<int>(m & 0xff); }
  static int mdeg(Mono m) { return ew(m) + ex(m) + ey(m); }
  static bool greater(Mono a, Mono b);  // degrevlex

  Poly() = default;
  static Poly constant(GF9 c);
  static Poly term(GF9 c, int a, int b, int d);
  static Poly from_terms(const TermList& t);
  // linear form e0·w + e1·x + e2·y + e3
  static Poly affine_linear(const std::array<GF9, 4>& e);

  const std::vector<std::pair<Mono, GF9>>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int degree() const;
  int w_degree() const;
  Mono lead() const { return t_.front().first; }
  GF9 lead_coef() const { return t_.front().second; }
  GF9 coef(Mono m) const;
  TermList to_terms() const;
  std::string str() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(GF9 c) const;
  Poly times_mono(GF9 c, Mono m) const;
  Poly frobenius() const;  // coefficients cubed
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

 private:
  static Poly from_accumulator(std::vector<std::pair<Mono, GF9>> raw);
  std::vector<std::pair<Mono, GF9>> t_;
};

Poly fermat_affine();  // w⁴ + x⁴ + y⁴ + 1

// polynomial reduced modulo the affine quartic (w-degree ≤ 3)
class NFPoly {
 public:
  NFPoly() = default;
  explicit NFPoly(const Poly& p);  // reduces
  static NFPoly from_terms(const TermList& t) { return NFPoly(Poly::from_terms(t)); }
  const Poly& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  int degree() const { return p_.degree(); }

  friend NFPoly operator+(const NFPoly& a, const NFPoly& b) { return NFPoly(a.p_ + b.p_); }
  friend NFPoly operator-(const NFPoly& a, const NFPoly& b) { return NFPoly(a.p_ - b.p_); }
  friend NFPoly operator*(const NFPoly& a, const NFPoly& b) { return NFPoly(a.p_ * b.p_); }
  NFPoly scaled(GF9 c) const { return NFPoly(p_.scaled(c)); }
  NFPoly pow(unsigned e) const;
  friend bool operator==(const NFPoly& a, const NFPoly& b) { return a.p_ == b.p_; }

 private:
  Poly p_;
};

// Buchberger; reduced Gröbner basis for degrevlex
std::vector<Poly> groebner_basis(std::vector<Poly> gens);
Poly reduce(const Poly& p, const std::vector<Poly>& gb);

// Gröbner basis of I_ℓ^ν + (fermat)
std::vector<Poly> line_power_ideal(const ProjLine& l, int nu);

using Multiplicities = std::map<int, int>;  // geometric line index → a_i

struct LinSysSpace {
  int d = 0;
  Multiplicities mults;
  std::vector<NFPoly> basis;
  std::size_t dim() const { return basis.size(); }
  bool contains(const NFPoly& p) const;
};

// Γ(d) ∩ ⋂ I_i^(a_i)
LinSysSpace gamma_space(const std::vector<ProjLine>& lines, int d, const Multiplicities& mults);

// spaces σ_D·H⁰(m) and σ_D′·H⁰(m) for two divisors of one class: there is an invertible φ with
// a·φ(b) ≡ b·φ(a) for all a, b, i.e. both give the same rational map
bool same_linear_system(const LinSysSpace& a, const LinSysSpace& b);

// v = d·h₀ − Σ aᵢ[ℓᵢ] with aᵢ ≥ 0; up to `limit` solutions in deterministic order
std::vector<Multiplicities> effective_decompositions(const LineConfiguration& cfg, const IntVec& h0, const IntVec& v,
                                                     int d, std::size_t limit = 1, int max_mult = 12);
Multiplicities effective_decomposition(const LineConfiguration& cfg, const IntVec& h0, const IntVec& v, int d);

bool polarization_test(const Lattice& S, const RatVec& h0, const RatVec& v, int degree);

struct RootSystemType {
  std::map<std::string, int> counts;  // "A1" → 6
  std::string str() const;            // e.g. "6A1+4A2"
  std::size_t rank() const;
};

struct ContractedClasses {
  RootSystemType type;
  std::vector<std::vector<IntVec>> components;  // A-chains ordered so consecutive roots meet
  std::vector<IntVec> positive_roots;
  bool combination_property = false;
  std::size_t simple_count() const;
};

ContractedClasses contracted_classes(const Lattice& S, const RatVec& h0, const RatVec& m);
IntMatrix involution_from_eigenspaces(const Lattice& S, const RatVec& m, const ContractedClasses& c);

// ternary form over F9 in (x0,x1,x2)
struct TernaryForm {
  std::map<std::array<int, 3>, GF9> terms;
  static TernaryForm from_terms(const TermList& t);
  int degree() const;
  GF81 eval(const std::array<GF81, 3>& p) const;
  TernaryForm scaled(GF9 c) const;
  bool operator==(const TernaryForm& o) const { return terms == o.terms; }
};

NFPoly substitute(const TernaryForm& f, const std::vector<NFPoly>& F);
// f == c·g for some nonzero scalar c
bool proportional(const TernaryForm& f, const TernaryForm& g);

struct DoublePlane {
  NFPoly G;
  TernaryForm f;  // G² + f(F) ≡ 0
};

// F: basis of Γ for m; space3: Γ for 3m
DoublePlane double_plane_model(const std::vector<NFPoly>& F, const LinSysSpace& space3);

struct SingularPoint {
  std::array<GF81, 3> point;  // normalized
  int an = 0;                 // n of A_n, 0 if not of type A
  std::string type() const { return an > 0 ? "A" + std::to_string(an) : "other"; }
};

bool is_reduced(const TernaryForm& f);
std::vector<SingularPoint> singular_points_of_sextic(const TernaryForm& f);

// pushforward on S of the automorphism (w,x,y) ↦ [H0:H1:H2:H3]: ℓ·A is the class of the image of ℓ
IntMatrix induced_isometry_of_map(const LineConfiguration& cfg, const std::vector<NFPoly>& H);

using Mat9 = std::vector<std::vector<GF9>>;

struct HermitianRelation {
  Mat9 a;  // Σ a_ij H_i H_j³ ≡ 0, a_ji = a_ij³
  Mat9 B;  // a = B·ᵗB⁽³⁾
  std::vector<NFPoly> corrected;  // H·B, satisfying Σ H⁴ ≡ 0
};

HermitianRelation hermitian_quartic_relation(const std::vector<NFPoly>& H);

}  // namespace k3
