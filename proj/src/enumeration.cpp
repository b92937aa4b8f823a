#include "k3/enumeration.hpp"

#include <algorithm>
#include <cmath>

namespace k3 {

namespace {

struct LDL {
  std::vector<Rat> d;
  RatMatrix mu;  // upper, mu(i,j) for j > i
};

LDL ldl(const RatMatrix& A) {
  std::size_t n = A.rows();
  RatMatrix S = A;
  LDL r{std::vector<Rat>(n), RatMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (S(i, i) <= 0) throw Error(ErrorCode::NotDefinite, "form is not positive definite");
    r.d[i] = S(i, i);
    for (std::size_t j = i + 1; j < n; ++j) r.mu(i, j) = S(i, j) / r.d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        S(j, k) -= r.d[i] * r.mu(i, j) * r.mu(i, k);
        S(k, j) = S(j, k);
      }
  }
  return r;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Int to_int_floor(double x) {
  Int r;
  mpz_set_d(r.get_mpz_t(), std::floor(x));
  return r;
}

}  // namespace

std::vector<IntVec> fincke_pohst(const RatMatrix& A, const RatVec& center, const Rat& R, Target target) {
  if (target != Target::Equal && target != Target::Less && target != Target::LessEq)
    throw Error(ErrorCode::BadInput, "unbounded target for a positive definite form");
  std::size_t n = A.rows();
  std::vector<IntVec> out;
  if (R < 0) return out;
  if (n == 0) {
    bool ok = target == Target::Equal ? R == 0 : (target == Target::Less ? R > 0 : true);
    if (ok) out.push_back({});
    return out;
  }
  IntMatrix B = lll_reduce(A);
  RatMatrix Br = to_rat(B);
  RatMatrix A2 = Br * A * transpose(Br);
  RatVec c = center * inverse(Br);
  LDL f = ldl(A2);

  std::vector<Int> s(n);
  std::vector<Rat> rho(n + 1);  // rho[i] = sum of terms for levels >= i
  rho[n] = 0;
  std::vector<Rat> y(n);  // s_j - c_j

  std::function<void(std::size_t)> visit = [&](std::size_t lvl) {
    Rat e = c[lvl];
    for (std::size_t j = lvl + 1; j < n; ++j)
      if (f.mu(lvl, j) != 0) e -= f.mu(lvl, j) * y[j];
    Rat rem = R - rho[lvl + 1];
    const Rat& d = f.d[lvl];
    auto within = [&](const Int& z) {
      Rat t = Rat(z) - e;
      return d * t * t <= rem;
    };
    double ed = e.get_d();
    double rd = std::sqrt(std::max(0.0, Rat(rem / d).get_d()));
    Int lo = to_int_floor(ed - rd) - 1, hi = to_int_floor(ed + rd) + 2;
    while (within(lo - 1)) --lo;
    while (lo <= hi && !within(lo)) ++lo;
    while (within(hi + 1)) ++hi;
    while (hi >= lo && !within(hi)) --hi;
    for (Int z = lo; z <= hi; ++z) {
      s[lvl] = z;
      y[lvl] = Rat(z) - c[lvl];
      Rat t = Rat(z) - e;
      rho[lvl] = rho[lvl + 1] + d * t * t;
      if (lvl == 0) {
        bool ok = target == Target::Equal ? rho[0] == R : (target == Target::Less ? rho[0] < R : true);
        if (ok) {
          IntVec t2 = s * B;
          out.push_back(t2);
        }
      } else {
        visit(lvl - 1);
      }
    }
  };
  visit(n - 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RatVec> enumerate_constrained(const RatMatrix& G, const RatVec& offset, const RatMatrix& C,
                                          const RatVec& rhs, const Rat& value, Target target) {
  std::size_t n = G.rows();
  std::size_t k = C.cols();
  // z ∈ Zⁿ with z·C = rhs - offset·C
  RatVec r = rhs;
  if (k > 0) {
    RatVec oc = offset * C;
    for (std::size_t j = 0; j < k; ++j) r[j] -= oc[j];
  }
  IntVec z0(n);
  IntMatrix K;
  if (k == 0) {
    K = IntMatrix::identity(n);
  } else {
    Int den = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) den = lcm(den, C(i, j).get_den());
    IntMatrix Ci(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) Ci(i, j) = Rat(C(i, j) * Rat(den)).get_num();
    RatVec ri(k);
    for (std::size_t j = 0; j < k; ++j) {
      ri[j] = r[j] * Rat(den);
      if (ri[j].get_den() != 1) return {};
    }
    SmithForm sf = smith_normal_form(Ci);
    RatVec rv = ri * to_rat(sf.V);
    std::size_t rk = 0;
    for (std::size_t i = 0; i < std::min(n, k); ++i)
      if (sf.D(i, i) != 0) rk = i + 1;
    for (std::size_t j = rk; j < k; ++j)
      if (rv[j] != 0) return {};
    IntVec yv(n);
    for (std::size_t i = 0; i < rk; ++i) {
      Rat q = rv[i] / Rat(sf.D(i, i));
      if (q.get_den() != 1) return {};
      yv[i] = q.get_num();
    }
    z0 = yv * sf.U;
    K = IntMatrix(n - rk, n);
    for (std::size_t i = rk; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) K(i - rk, j) = sf.U(i, j);
  }
  RatVec x0 = offset;
  for (std::size_t i = 0; i < n; ++i) x0[i] += Rat(z0[i]);
  std::size_t m = K.rows();
  std::vector<RatVec> out;
  auto accept = [&](const Rat& q) {
    switch (target) {
      case Target::Equal: return q == value;
      case Target::Less: return q < value;
      case Target::LessEq: return q <= value;
      case Target::Greater: return q > value;
      case Target::GreaterEq: return q >= value;
    }
    return false;
  };
  if (m == 0) {
    if (accept(bilinear(x0, G, x0))) out.push_back(x0);
    return out;
  }
  RatMatrix Kr = to_rat(K);
  RatMatrix A = Kr * G * transpose(Kr);
  int sgn = definiteness(A);
  if (sgn == 0) throw Error(ErrorCode::NotDefinite, "constrained form is not definite");
  RatVec b = x0 * (G * transpose(Kr));
  RatMatrix Ainv = inverse(A);
  RatVec ctr = b * Ainv;
  for (auto& x : ctr) x = -x;
  Rat c0 = bilinear(x0, G, x0) - bilinear(b, Ainv, b);
  // q(x) = (t - ctr)·A·(t - ctr)ᵗ + c0
  Target t2;
  Rat R;
  RatMatrix Ap = A;
  if (sgn > 0) {
    R = value - c0;
    switch (target) {
      case Target::Equal: t2 = Target::Equal; break;
      case Target::Less: t2 = Target::Less; break;
      case Target::LessEq: t2 = Target::LessEq; break;
      default: throw Error(ErrorCode::BadInput, "unbounded enumeration");
    }
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) Ap(i, j) = -A(i, j);
    R = c0 - value;
    switch (target) {
      case Target::Equal: t2 = Target::Equal; break;
      case Target::Greater: t2 = Target::Less; break;
      case Target::GreaterEq: t2 = Target::LessEq; break;
      default: throw Error(ErrorCode::BadInput, "unbounded enumeration");
    }
  }
  for (const auto& t : fincke_pohst(Ap, ctr, R, t2)) {
    RatVec x = x0;
    IntVec tk = t * K;
    for (std::size_t i = 0; i < n; ++i) x[i] += Rat(tk[i]);
    out.push_back(x);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<RatVec> vectors_with_norm(const Lattice& L, const RatVec& offset, const Rat& norm, NormMode mode) {
  int sgn = definiteness(L.gram_rat());
  if (sgn == 0) throw Error(ErrorCode::NotDefinite, "vectors_with_norm needs a definite lattice");
  Target t = Target::Equal;
  if (mode == NormMode::Greater) {
    if (sgn > 0) throw Error(ErrorCode::BadInput, "Greater mode needs a negative definite lattice");
    t = Target::Greater;
  } else if (mode == NormMode::Less) {
    if (sgn < 0) throw Error(ErrorCode::BadInput, "Less mode needs a positive definite lattice");
    t = Target::Less;
  }
  RatVec off = offset.empty() ? RatVec(L.rank()) : offset;
  return enumerate_constrained(L.gram_rat(), off, RatMatrix(L.rank(), 0), {}, norm, t);
}

std::vector<RatVec> dual_vectors_with_norm(const Lattice& L, const Rat& norm, NormMode mode) {
  RatMatrix Gi = L.gram_inverse();
  int sgn = definiteness(Gi);
  if (sgn == 0) throw Error(ErrorCode::NotDefinite, "dual_vectors_with_norm needs a definite lattice");
  Target t = mode == NormMode::Equal ? Target::Equal : (mode == NormMode::Greater ? Target::Greater : Target::Less);
  auto ys = enumerate_constrained(Gi, RatVec(L.rank()), RatMatrix(L.rank(), 0), {}, norm, t);
  std::vector<RatVec> out;
  for (const auto& y : ys) out.push_back(y * Gi);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<RatVec> affine_slice(const SliceQuery& q) {
  const Lattice& S = q.lattice;
  if (S.norm(q.pivot) <= 0) throw Error(ErrorCode::BadInput, "slice pivot must have positive norm");
  RatMatrix Gi = S.gram_inverse();
  // u = y·G⁻¹, ⟨pivot,u⟩ = pivot·yᵗ
  RatMatrix C(S.rank(), 1);
  for (std::size_t i = 0; i < S.rank(); ++i) C(i, 0) = q.pivot[i];
  auto ys = enumerate_constrained(Gi, RatVec(S.rank()), C, {q.a}, q.n, Target::Equal);
  std::vector<RatVec> out;
  for (const auto& y : ys) out.push_back(y * Gi);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<RatVec> affine_slice_coset(const Lattice& S, const RatVec& offset, const RatVec& pivot, const Rat& a,
                                       const Rat& n) {
  if (S.norm(pivot) <= 0) throw Error(ErrorCode::BadInput, "slice pivot must have positive norm");
  RatVec gp = pivot * S.gram_rat();
  RatMatrix C(S.rank(), 1);
  for (std::size_t i = 0; i < S.rank(); ++i) C(i, 0) = gp[i];
  return enumerate_constrained(S.gram_rat(), offset, C, {a}, n, Target::Equal);
}

Rat InhomogeneousQuadratic::operator()(const IntVec& x) const {
  RatVec xr = to_rat(x);
  return bilinear(xr, A, xr) + dot(b, xr) + c;
}

std::vector<IntVec> positive_quadratic_sublevel(const InhomogeneousQuadratic& Q, const Rat& level, bool exact) {
  if (definiteness(Q.A) <= 0) throw Error(ErrorCode::NotDefinite, "quadratic part not positive definite");
  RatMatrix Ai = inverse(Q.A);
  RatVec ctr = Q.b * Ai;
  for (auto& x : ctr) x = -x / 2;
  // Q(x) = (x - ctr)A(x - ctr)ᵗ + c - ctr·A·ctrᵗ
  Rat c0 = Q.c - bilinear(ctr, Q.A, ctr);
  return fincke_pohst(Q.A, ctr, level - c0, exact ? Target::Equal : Target::Less);
}

namespace {

Int denominator_of_pairings(const Lattice& S, const RatVec& v) { return common_denominator(v * S.gram_rat()); }

}  // namespace

std::vector<RatVec> separating_roots(const Lattice& S, const RatVec& h, const RatVec& m) {
  Rat hh = S.norm(h), mm = S.norm(m), hm = S.pair(h, m);
  if (hh <= 0 || mm < 0 || hm <= 0) throw Error(ErrorCode::ConeViolation, "separating_roots preconditions");
  Rat det = hh * mm - hm * hm;
  std::vector<RatVec> out;
  if (det == 0) return out;
  if (det > 0) throw Error(ErrorCode::ConeViolation, "h and m span a definite plane");
  Rat bound = -2 * det;
  // α = ⟨v,h⟩ ≥ step_h, β = -⟨v,m⟩ ≥ step_m; numerator mm α² + 2hm αβ + hh β² ≤ bound
  Rat step_h(1, denominator_of_pairings(S, h)), step_m(1, denominator_of_pairings(S, m));
  RatVec hN = h * S.gram_rat(), mN = m * S.gram_rat();
  RatMatrix C(S.rank(), 2);
  for (std::size_t i = 0; i < S.rank(); ++i) {
    C(i, 0) = hN[i];
    C(i, 1) = mN[i];
  }
  for (Rat beta = step_m; hh * beta * beta <= bound; beta += step_m)
    for (Rat alpha = step_h; mm * alpha * alpha + 2 * hm * alpha * beta + hh * beta * beta <= bound;
         alpha += step_h) {
      auto vs = enumerate_constrained(S.gram_rat(), RatVec(S.rank()), C, {alpha, -beta}, Rat(-2), Target::Equal);
      out.insert(out.end(), vs.begin(), vs.end());
    }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<RatVec> isotropic_with_pairing(const Lattice& S, const RatVec& m, const Rat& c) {
  if (S.norm(m) <= 0) throw Error(ErrorCode::BadInput, "isotropic_with_pairing needs ⟨m,m⟩ > 0");
  RatVec mN = m * S.gram_rat();
  RatMatrix C(S.rank(), 1);
  for (std::size_t i = 0; i < S.rank(); ++i) C(i, 0) = mN[i];
  return enumerate_constrained(S.gram_rat(), RatVec(S.rank()), C, {c}, Rat(0), Target::Equal);
}

std::vector<RatVec> roots_orthogonal_to(const Lattice& S, const RatVec& m) {
  if (S.norm(m) <= 0) throw Error(ErrorCode::BadInput, "roots_orthogonal_to needs ⟨m,m⟩ > 0");
  RatVec mN = m * S.gram_rat();
  RatMatrix C(S.rank(), 1);
  for (std::size_t i = 0; i < S.rank(); ++i) C(i, 0) = mN[i];
  return enumerate_constrained(S.gram_rat(), RatVec(S.rank()), C, {Rat(0)}, Rat(-2), Target::Equal);
}

}  // namespace k3
