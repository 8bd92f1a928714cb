#include "cheval/linalg.hpp"

#include <stdexcept>

namespace cheval {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;
u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }
u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
}  // namespace

mpq_class determinant(QMatrix m) {
  size_t n = m.size();
  mpq_class det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      mpq_class f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  size_t n = a.size();
  QMatrix m = a, inv(n, QVector(n));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    mpq_class f = 1 / m[c][c];
    for (size_t k = 0; k < n; ++k) {
      m[c][k] *= f;
      inv[c][k] *= f;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      mpq_class g = m[r][c];
      for (size_t k = 0; k < n; ++k) {
        m[r][k] -= g * m[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix r(n, QVector(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (sgn(a[i][t]) == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

QVector row_times(const QVector& x, const QMatrix& m) {
  size_t c = m.empty() ? 0 : m[0].size();
  QVector r(c);
  for (size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (size_t j = 0; j < c; ++j) r[j] += x[i] * m[i][j];
  }
  return r;
}

std::optional<QVector> solve_in_row_span(const QMatrix& rows, const QVector& target) {
  // Solve c * rows = target: eliminate on the transposed augmented system.
  size_t r = rows.size(), c = target.size();
  QMatrix a(c, QVector(r + 1));
  for (size_t j = 0; j < c; ++j) {
    for (size_t i = 0; i < r; ++i) a[j][i] = rows[i][j];
    a[j][r] = target[j];
  }
  std::vector<int> pivcol;
  size_t row = 0;
  for (size_t col = 0; col < r && row < c; ++col) {
    size_t piv = row;
    while (piv < c && sgn(a[piv][col]) == 0) ++piv;
    if (piv == c) continue;
    std::swap(a[piv], a[row]);
    mpq_class f = 1 / a[row][col];
    for (auto& x : a[row]) x *= f;
    for (size_t k = 0; k < c; ++k) {
      if (k == row || sgn(a[k][col]) == 0) continue;
      mpq_class g = a[k][col];
      for (size_t t = 0; t <= r; ++t) a[k][t] -= g * a[row][t];
    }
    pivcol.push_back(static_cast<int>(col));
    ++row;
  }
  for (size_t k = row; k < c; ++k)
    if (sgn(a[k][r]) != 0) return std::nullopt;
  QVector sol(r);
  for (size_t k = 0; k < pivcol.size(); ++k) sol[pivcol[k]] = a[k][r];
  return sol;
}

int rank(QMatrix m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0, row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && sgn(m[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    for (size_t k = row + 1; k < rows; ++k) {
      if (sgn(m[k][col]) == 0) continue;
      mpq_class g = m[k][col] / m[row][col];
      for (size_t t = col; t < cols; ++t) m[k][t] -= g * m[row][t];
    }
    ++row;
  }
  return static_cast<int>(row);
}

ZMatrix hermite_normal_form(ZMatrix m) {
  size_t rows = m.size();
  if (rows == 0) return m;
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    while (true) {
      size_t piv = rows;
      for (size_t r = row; r < rows; ++r)
        if (sgn(m[r][col]) != 0 && (piv == rows || mpz_cmpabs(m[r][col].get_mpz_t(), m[piv][col].get_mpz_t()) < 0)) piv = r;
      if (piv == rows) break;
      std::swap(m[piv], m[row]);
      bool others = false;
      for (size_t r = row + 1; r < rows; ++r) {
        if (sgn(m[r][col]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
        for (size_t k = col; k < cols; ++k) m[r][k] -= q * m[row][k];
        if (sgn(m[r][col]) != 0) others = true;
      }
      if (!others) break;
    }
    if (row < rows && sgn(m[row][col]) != 0) {
      if (sgn(m[row][col]) < 0)
        for (size_t k = col; k < cols; ++k) m[row][k] = -m[row][k];
      for (size_t r = 0; r < row; ++r) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
        if (q == 0) continue;
        for (size_t k = col; k < cols; ++k) m[r][k] -= q * m[row][k];
      }
      ++row;
    }
  }
  m.resize(row);
  return m;
}

std::vector<std::vector<u64>> left_kernel_mod_p(std::vector<std::vector<u64>> m, u64 p) {
  // Gaussian elimination on [M | I]; rows of I reaching a zero M-part span the kernel.
  size_t r = m.size();
  if (r == 0) return {};
  size_t c = m[0].size();
  for (size_t i = 0; i < r; ++i) {
    m[i].resize(c + r, 0);
    m[i][c + i] = 1;
  }
  size_t row = 0;
  for (size_t col = 0; col < c && row < r; ++col) {
    size_t piv = row;
    while (piv < r && m[piv][col] == 0) ++piv;
    if (piv == r) continue;
    std::swap(m[piv], m[row]);
    u64 inv = powmod(m[row][col], p - 2, p);
    for (auto& x : m[row]) x = mulmod(x, inv, p);
    for (size_t k = 0; k < r; ++k) {
      if (k == row || m[k][col] == 0) continue;
      u64 g = m[k][col];
      for (size_t t = 0; t < c + r; ++t) m[k][t] = (m[k][t] + p - mulmod(g, m[row][t], p)) % p;
    }
    ++row;
  }
  std::vector<std::vector<u64>> out;
  for (size_t k = row; k < r; ++k) out.emplace_back(m[k].begin() + c, m[k].end());
  return out;
}

QPoly charpoly(QMatrix h) {
  size_t n = h.size();
  for (size_t m = 1; m + 1 < n; ++m) {
    size_t i = m;
    while (i < n && sgn(h[i][m - 1]) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    for (size_t j = m + 1; j < n; ++j) {
      if (sgn(h[j][m - 1]) == 0) continue;
      mpq_class u = h[j][m - 1] / h[m][m - 1];
      for (size_t k = 0; k < n; ++k) h[j][k] -= u * h[m][k];
      for (size_t k = 0; k < n; ++k) h[k][m] += u * h[k][j];
    }
  }
  std::vector<QPoly> p(n + 1);
  p[0] = QPoly(1L);
  QPoly x = QPoly::x();
  for (size_t m = 0; m < n; ++m) {
    QPoly next = (x - QPoly(h[m][m])) * p[m];
    mpq_class t = 1;
    for (size_t i = 1; i <= m; ++i) {
      t *= h[m - i + 1][m - i];
      if (sgn(t) == 0) break;
      next -= p[m - i].scaled(t * h[m - i][m]);
    }
    p[m + 1] = next;
  }
  return p[n];
}

}  // namespace cheval
