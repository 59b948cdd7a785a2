#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace kuniform {

using Symbol = std::uint8_t;
using SymbolMatrix = Eigen::Matrix<Symbol, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SymbolRow = Eigen::Matrix<Symbol, 1, Eigen::Dynamic>;

// ---------------------------------------------------------------------------
// GF(4) with labels {0,1,2,3} ~ {0,1,x,x+1}: addition is 2-bit XOR.
// The Pauli correspondence maps label 0->I, 1->sigma_x, 2->sigma_y,
// 3->sigma_z, so sigma_a sigma_b = i^e sigma_{a xor b} with the phase table
// below (sigma_x sigma_y = i sigma_z convention).
// ---------------------------------------------------------------------------

inline Symbol gf4_add(Symbol a, Symbol b) { return a ^ b; }

// true iff sigma_a and sigma_b anticommute
inline bool anticommutes(Symbol a, Symbol b) { return a != 0 && b != 0 && a != b; }

struct PhasedLabel {
  int phase_exp;  // exponent e of i
  Symbol label;
};

// sigma_a sigma_b = i^e sigma_c
PhasedLabel pauli_product(Symbol a, Symbol b);

struct PauliWord {
  SymbolRow labels;
  int phase_exp = 0;  // overall factor i^phase_exp

  int size() const { return static_cast<int>(labels.size()); }
};

PauliWord word_product(const PauliWord& a, const PauliWord& b);
bool words_commute(const PauliWord& a, const PauliWord& b);

// ---------------------------------------------------------------------------
// Small prime-power fields via lookup tables. Fixed irreducible polynomials
// (Conway polynomials), so codeword enumeration is reproducible:
//   GF(4):  x^2+x+1       GF(8):  x^3+x+1
//   GF(9):  x^2+2x+2      GF(16): x^4+x+1
// Field axioms are checked exhaustively when a table is first built.
// ---------------------------------------------------------------------------
class GfTable {
 public:
  static const GfTable& of(int q);  // cached; throws for unsupported q

  int q() const { return q_; }
  Symbol add(Symbol a, Symbol b) const { return add_[a * q_ + b]; }
  Symbol mul(Symbol a, Symbol b) const { return mul_[a * q_ + b]; }
  Symbol neg(Symbol a) const { return neg_[a]; }
  Symbol inv(Symbol a) const;  // throws for 0
  Symbol sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

 private:
  explicit GfTable(int q);
  void check_axioms() const;

  int q_;
  std::vector<Symbol> add_, mul_, neg_, inv_;
};

// ---------------------------------------------------------------------------
// Abelian group of order d used by difference schemes and Kronecker sums:
// either the cyclic group Z_d or the additive group of GF(q). The two agree
// for prime d; they differ for d in {4,8,9,16}, and published schemes over
// those orders (the 16x6 scheme shipped as a fixture, for one) are built on
// the field's additive group.
// ---------------------------------------------------------------------------
class GroupTable {
 public:
  enum class Kind { kCyclic, kElementary };

  static GroupTable cyclic(int d);
  static GroupTable elementary(int q);  // additive group of GF(q)
  // parses "z<d>" / "gf<q>"; default_for(d) is cyclic
  static GroupTable named(const std::string& name);
  static GroupTable default_for(int d) { return cyclic(d); }

  int order() const { return d_; }
  Kind kind() const { return kind_; }
  Symbol add(Symbol a, Symbol b) const {
    if (kind_ == Kind::kCyclic) return static_cast<Symbol>((a + b) % d_);
    if (prime_ == 2) return a ^ b;
    // base-p digitwise addition (additive group of GF(p^e))
    int out = 0, mul = 1;
    int x = a, y = b;
    while (mul < d_) {
      out += ((x + y) % prime_) * mul;
      x /= prime_;
      y /= prime_;
      mul *= prime_;
    }
    return static_cast<Symbol>(out);
  }
  Symbol neg(Symbol a) const {
    if (kind_ == Kind::kCyclic) return static_cast<Symbol>((d_ - a) % d_);
    if (prime_ == 2) return a;
    int out = 0, mul = 1;
    int x = a;
    while (mul < d_) {
      out += ((prime_ - x % prime_) % prime_) * mul;
      x /= prime_;
      mul *= prime_;
    }
    return static_cast<Symbol>(out);
  }
  Symbol sub(Symbol a, Symbol b) const { return add(a, neg(b)); }
  std::string name() const;

  friend bool operator==(const GroupTable& a, const GroupTable& b) {
    return a.kind_ == b.kind_ && a.d_ == b.d_;
  }

 private:
  GroupTable(Kind kind, int d, int prime) : kind_(kind), d_(d), prime_(prime) {}
  Kind kind_;
  int d_;
  int prime_;
};

bool is_prime_power(int q, int* prime = nullptr, int* exponent = nullptr);

}  // namespace kuniform
