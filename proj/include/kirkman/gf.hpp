// Finite fields GF(p^k) and constructive MOLS families.
#pragma once

#include <vector>

#include "kirkman/design.hpp"

namespace kirkman {

using Square = std::vector<std::vector<int>>;

bool is_prime(long n);
// Returns p if n = p^k for a prime p, otherwise 0.
long prime_power_base(long n);

// GF(q) arithmetic over elements 0..q-1 (base-p digit encoding of
// polynomials modulo a found irreducible polynomial).
class GF {
 public:
  explicit GF(int q);  // throws NotPrimePower
  int q() const { return q_; }
  int add(int a, int b) const { return add_[a][b]; }
  int mul(int a, int b) const { return mul_[a][b]; }

 private:
  int q_ = 0, p_ = 0, k_ = 0;
  std::vector<std::vector<int>> add_, mul_;
};

// q-1 pairwise orthogonal squares L_c(i,j) = c*i + j over GF(q), c != 0.
std::vector<Square> mols_finite_field(int q);

// L_c(i,j) = i + c*j over Z_n; valid sets for odd n (k <= largest set with
// pairwise differences coprime to n; always covers k = 2).
std::vector<Square> mols_cyclic_odd(int n, int k);

// Kronecker-style product: min(|A|,|B|) squares of order n_a * n_b.
std::vector<Square> mols_macneish(const std::vector<Square>& a,
                                  const std::vector<Square>& b);

}  // namespace kirkman
