#include "kirkman/gf.hpp"

#include <numeric>

namespace kirkman {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; d++)
    if (n % d == 0) return false;
  return true;
}

long prime_power_base(long n) {
  if (n < 2) return 0;
  long m = n;
  long p = 0;
  for (long d = 2; d * d <= m; d++)
    if (m % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return n;  // n itself prime
  while (m % p == 0) m /= p;
  return m == 1 ? p : 0;
}

namespace {

// polynomial coefficients little-endian, digits mod p
std::vector<int> digits(int x, int p, int k) {
  std::vector<int> d(k, 0);
  for (int i = 0; i < k && x; i++, x /= p) d[i] = x % p;
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int x = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; i--) x = x * p + d[i];
  return x;
}

// multiply polynomials mod (p, monic irreducible of degree k given by `red`,
// red holds the low k coefficients of the reduction x^k = red(x))
int poly_mul(int a, int b, int p, int k, const std::vector<int>& red) {
  std::vector<int> da = digits(a, p, k), db = digits(b, p, k);
  std::vector<int> prod(2 * k - 1, 0);
  for (int i = 0; i < k; i++)
    for (int j = 0; j < k; j++) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int d = 2 * k - 2; d >= k; d--) {
    int c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (int i = 0; i < k; i++) prod[d - k + i] = (prod[d - k + i] + c * red[i]) % p;
  }
  prod.resize(k);
  return undigits(prod, p);
}

}  // namespace

GF::GF(int q) : q_(q) {
  long p = prime_power_base(q);
  if (p == 0) throw DesignError("NotPrimePower", std::to_string(q));
  p_ = static_cast<int>(p);
  k_ = 0;
  for (long m = q; m > 1; m /= p_) k_++;

  // find a monic irreducible of degree k: x^k - r(x) with no root-free...
  // irreducibility tested by trial multiplication: the reduction is valid
  // iff no zero divisors appear in the full multiplication table.
  std::vector<int> red(k_, 0);
  auto build = [&](const std::vector<int>& r) {
    add_.assign(q_, std::vector<int>(q_));
    mul_.assign(q_, std::vector<int>(q_));
    for (int a = 0; a < q_; a++)
      for (int b = 0; b < q_; b++) {
        auto da = digits(a, p_, k_), db = digits(b, p_, k_);
        std::vector<int> s(k_);
        for (int i = 0; i < k_; i++) s[i] = (da[i] + db[i]) % p_;
        add_[a][b] = undigits(s, p_);
        mul_[a][b] = poly_mul(a, b, p_, k_, r);
      }
    for (int a = 1; a < q_; a++)
      for (int b = 1; b < q_; b++)
        if (mul_[a][b] == 0) return false;  // zero divisor: reducible
    return true;
  };
  if (k_ == 1) {
    build(red);  // plain Z_p; no reduction ever used
    return;
  }
  for (int code = 0; code < q_; code++) {
    // candidate: x^k = red(x) where red encodes -(low coefficients)
    red = digits(code, p_, k_);
    if (build(red)) return;
  }
  throw DesignError("NotPrimePower", "no irreducible polynomial found for " +
                                         std::to_string(q));
}

std::vector<Square> mols_finite_field(int q) {
  GF f(q);
  std::vector<Square> out;
  for (int c = 1; c < q; c++) {
    Square L(q, std::vector<int>(q));
    for (int i = 0; i < q; i++)
      for (int j = 0; j < q; j++) L[i][j] = f.add(f.mul(c, i), j);
    out.push_back(std::move(L));
  }
  return out;
}

std::vector<Square> mols_cyclic_odd(int n, int k) {
  std::vector<int> cs;
  for (int c = 1; c < n && static_cast<int>(cs.size()) < k; c++) {
    if (std::gcd(c, n) != 1) continue;
    bool ok = true;
    for (int prev : cs)
      if (std::gcd(c - prev, n) != 1) ok = false;
    if (ok) cs.push_back(c);
  }
  if (static_cast<int>(cs.size()) < k)
    throw DesignError("MissingIngredient",
                      "cyclic MOLS(" + std::to_string(n) + ") supply only " +
                          std::to_string(cs.size()) + " squares, need " +
                          std::to_string(k));
  std::vector<Square> out;
  for (int c : cs) {
    Square L(n, std::vector<int>(n));
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) L[i][j] = (i + c * j) % n;
    out.push_back(std::move(L));
  }
  return out;
}

std::vector<Square> mols_macneish(const std::vector<Square>& a,
                                  const std::vector<Square>& b) {
  size_t k = std::min(a.size(), b.size());
  if (k == 0) return {};
  int na = static_cast<int>(a[0].size()), nb = static_cast<int>(b[0].size());
  int n = na * nb;
  std::vector<Square> out;
  for (size_t s = 0; s < k; s++) {
    Square L(n, std::vector<int>(n));
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++)
        L[i][j] = a[s][i / nb][j / nb] * nb + b[s][i % nb][j % nb];
    out.push_back(std::move(L));
  }
  return out;
}

}  // namespace kirkman
