#include "k3/exact.hpp"

#include <algorithm>

namespace k3 {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotDefinite: return "NotDefinite";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConeViolation: return "ConeViolation";
    case ErrorCode::ZeroTProjection: return "ZeroTProjection";
    case ErrorCode::InteriorViolation: return "InteriorViolation";
    case ErrorCode::NonIntegralImage: return "NonIntegralImage";
    case ErrorCode::NonIntegralClass: return "NonIntegralClass";
    case ErrorCode::NotNef: return "NotNef";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::SiftFailure: return "SiftFailure";
    case ErrorCode::OrbitOverflow: return "OrbitOverflow";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoFrameFound: return "NoFrameFound";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NoDecomposition: return "NoDecomposition";
    case ErrorCode::NotPolarization: return "NotPolarization";
    case ErrorCode::NoRelation: return "NoRelation";
    case ErrorCode::DegenerateSquare: return "DegenerateSquare";
    case ErrorCode::NonReduced: return "NonReduced";
    case ErrorCode::QuarticIdentityFails: return "QuarticIdentityFails";
    case ErrorCode::BaseLocusTooLarge: return "BaseLocusTooLarge";
    case ErrorCode::NonIntegralInvolution: return "NonIntegralInvolution";
    case ErrorCode::SingularHermitian: return "SingularHermitian";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw Error(ErrorCode::NonIntegralImage, "matrix not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntVec to_int(const RatVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw Error(ErrorCode::NonIntegralImage, "vector not integral");
    r[i] = v[i].get_num();
  }
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int common_denominator(const RatVec& v) {
  Int d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int round_div(const Int& a, const Int& b) {
  Int aa = a, bb = b;
  if (bb < 0) {
    aa = -aa;
    bb = -bb;
  }
  return floor_div(2 * aa + bb, 2 * bb);
}

Int floor_rat(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Int determinant(const IntMatrix& m0) {
  if (m0.rows() != m0.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant");
  std::size_t n = m0.rows();
  if (n == 0) return 1;
  IntMatrix m = m0;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m0) {
  if (m0.rows() != m0.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant");
  std::size_t n = m0.rows();
  RatMatrix m = m0;
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(k, p);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m, std::size_t ncols_to_reduce) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols_to_reduce && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rat inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse");
  std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug, n);
  if (piv.size() != n) throw Error(ErrorCode::Singular, "matrix not invertible");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix c = m;
  return rref(c, c.cols()).size();
}

RatMatrix left_kernel(const RatMatrix& a) {
  // x·A = 0  <=>  Aᵗ·xᵗ = 0
  RatMatrix t = transpose(a);
  auto piv = rref(t, t.cols());
  std::size_t m = a.rows();
  std::vector<bool> is_piv(m, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_piv[f]) continue;
    RatVec x(m);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -t(r, f);
    basis.push_back(x);
  }
  RatMatrix k(basis.size(), m);
  for (std::size_t i = 0; i < basis.size(); ++i) k.set_row(i, basis[i]);
  return k;
}

RatMatrix solve_left(const RatMatrix& a, const RatMatrix& b) {
  // X·A = B  <=>  Aᵗ·Xᵗ = Bᵗ
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "solve_left");
  std::size_t m = a.rows(), n = a.cols(), k = b.rows();
  RatMatrix aug(n, m + k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug(i, j) = a(j, i);
    for (std::size_t j = 0; j < k; ++j) aug(i, m + j) = b(j, i);
  }
  auto piv = rref(aug, m);
  for (std::size_t r = piv.size(); r < n; ++r)
    for (std::size_t j = 0; j < k; ++j)
      if (aug(r, m + j) != 0) throw Error(ErrorCode::Singular, "inconsistent system");
  RatMatrix x(k, m);
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) x(j, piv[r]) = aug(r, m + j);
  return x;
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  std::size_t r = m.rows(), c = m.cols();
  SmithForm s{IntMatrix::identity(r), m, IntMatrix::identity(c)};
  IntMatrix& D = s.D;
  IntMatrix& U = s.U;
  IntMatrix& V = s.V;
  auto row_op = [&](std::size_t dst, std::size_t src, const Int& q) {  // row_dst -= q row_src
    for (std::size_t j = 0; j < c; ++j) D(dst, j) -= q * D(src, j);
    for (std::size_t j = 0; j < r; ++j) U(dst, j) -= q * U(src, j);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < r; ++i) D(i, dst) -= q * D(i, src);
    for (std::size_t i = 0; i < c; ++i) V(i, dst) -= q * V(i, src);
  };
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    while (true) {
      std::size_t bi = r, bj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (D(i, j) != 0 && (bi == r || abs(D(i, j)) < abs(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == r) return s;
      if (bi != t) {
        D.swap_rows(t, bi);
        U.swap_rows(t, bi);
      }
      if (bj != t) {
        D.swap_cols(t, bj);
        V.swap_cols(t, bj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i)
        if (D(i, t) != 0) {
          Int q = floor_div(D(i, t), D(t, t));
          row_op(i, t, q);
          if (D(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < c; ++j)
        if (D(t, j) != 0) {
          Int q = floor_div(D(t, j), D(t, t));
          col_op(j, t, q);
          if (D(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_op(t, i, -1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < r; ++j) U(t, j) = -U(t, j);
    }
  }
  return s;
}

IntMatrix hermite_rows(const IntMatrix& m0) {
  IntMatrix a = m0;
  std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, j) != 0 && (best == rows || abs(a(i, j)) < abs(a(best, j)))) best = i;
      if (best == rows) break;
      a.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, j) == 0) continue;
        Int q = floor_div(a(i, j), a(r, j));
        for (std::size_t k = j; k < cols; ++k) a(i, k) -= q * a(r, k);
        if (a(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows || a(r, j) == 0) continue;
    if (a(r, j) < 0)
      for (std::size_t k = j; k < cols; ++k) a(r, k) = -a(r, k);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(a(i, j), a(r, j));
      if (q != 0)
        for (std::size_t k = j; k < cols; ++k) a(i, k) -= q * a(r, k);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

IntMatrix integer_left_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  std::size_t rk = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (s.D(i, i) != 0) rk = i + 1;
  IntMatrix k(a.rows() - rk, a.rows());
  for (std::size_t i = rk; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) k(i - rk, j) = s.U(i, j);
  return hermite_rows(k);
}

int definiteness(const RatMatrix& g) {
  auto [p, n] = signature(g);
  std::size_t dim = g.rows();
  if (static_cast<std::size_t>(p) == dim) return 1;
  if (static_cast<std::size_t>(n) == dim) return -1;
  return 0;
}

std::pair<int, int> signature(const RatMatrix& g) {
  RatMatrix a = g;
  std::size_t n = a.rows();
  int pos = 0, neg = 0;
  auto sym_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, p) == 0) ++p;
    if (p == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      // e_i <- e_i + e_j
      for (std::size_t t = 0; t < n; ++t) a(pi, t) += a(pj, t);
      for (std::size_t t = 0; t < n; ++t) a(t, pi) += a(t, pj);
      p = pi;
    }
    sym_swap(k, p);
    const Rat piv = a(k, k);
    if (piv > 0) ++pos; else ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / piv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = k; j < n; ++j) a(j, i) = a(i, j);
    }
  }
  return {pos, neg};
}

namespace {

IntMatrix lll_positive(IntMatrix g, long pn, long pd) {
  std::size_t n = g.rows();
  IntMatrix h = IntMatrix::identity(n);
  if (n <= 1) return h;
  const Int P = pn, Q = pd;
  // 1-indexed bookkeeping as in the integral algorithm
  std::vector<Int> d(n + 1);
  IntMatrix lam(n + 1, n + 1);
  auto G = [&](std::size_t i, std::size_t j) -> Int& { return g(i - 1, j - 1); };
  auto red = [&](std::size_t k, std::size_t l) {
    Int two = 2 * lam(k, l);
    if (abs(two) <= d[l]) return;
    Int q = round_div(lam(k, l), d[l]);
    for (std::size_t j = 0; j < n; ++j) h(k - 1, j) -= q * h(l - 1, j);
    for (std::size_t j = 1; j <= n; ++j) G(k, j) -= q * G(l, j);
    for (std::size_t j = 1; j <= n; ++j) G(j, k) -= q * G(j, l);
    lam(k, l) -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam(k, i) -= q * lam(l, i);
  };
  std::size_t k = 2, kmax = 1;
  d[0] = 1;
  d[1] = G(1, 1);
  if (d[1] == 0) throw Error(ErrorCode::NotDefinite, "zero vector in LLL input");
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Int u = G(k, j);
        for (std::size_t i = 1; i < j; ++i) {
          u = d[i] * u - lam(k, i) * lam(j, i);
          mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i - 1].get_mpz_t());
        }
        if (j < k) lam(k, j) = u;
        else {
          d[k] = u;
          if (u == 0) throw Error(ErrorCode::NotDefinite, "dependent vectors in LLL input");
        }
      }
    }
    while (true) {
      red(k, k - 1);
      if (Q * d[k] * d[k - 2] < P * d[k - 1] * d[k - 1] - Q * lam(k, k - 1) * lam(k, k - 1)) {
        h.swap_rows(k - 1, k - 2);
        g.swap_rows(k - 1, k - 2);
        g.swap_cols(k - 1, k - 2);
        for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam(k, j), lam(k - 1, j));
        Int l = lam(k, k - 1);
        Int B = d[k - 2] * d[k] + l * l;
        mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d[k - 1].get_mpz_t());
        for (std::size_t i = k + 1; i <= kmax; ++i) {
          Int t = lam(i, k);
          Int v = d[k] * lam(i, k - 1) - l * t;
          mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d[k - 1].get_mpz_t());
          lam(i, k) = v;
          Int w = B * t + l * lam(i, k);
          mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), d[k].get_mpz_t());
          lam(i, k - 1) = w;
        }
        d[k - 1] = B;
        if (k > 2) --k;
      } else {
        for (std::size_t l = k - 1; l-- > 1;) red(k, l);
        ++k;
        break;
      }
    }
  }
  return h;
}

}  // namespace

IntMatrix lll_reduce(const IntMatrix& gram, long pn, long pd) {
  int s = definiteness(to_rat(gram));
  if (s == 0) throw Error(ErrorCode::NotDefinite, "LLL requires a definite Gram matrix");
  IntMatrix g = gram;
  if (s < 0)
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
  return lll_positive(g, pn, pd);
}

IntMatrix lll_reduce(const RatMatrix& gram, long pn, long pd) {
  Int den = 1;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) den = lcm(den, gram(i, j).get_den());
  IntMatrix g(gram.rows(), gram.cols());
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      Rat x = gram(i, j) * den;
      g(i, j) = x.get_num();
    }
  return lll_reduce(g, pn, pd);
}

}  // namespace k3
