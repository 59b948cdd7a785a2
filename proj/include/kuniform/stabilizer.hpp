#pragma once

#include <vector>

#include "kuniform/gf.hpp"
#include "kuniform/rational.hpp"
#include "kuniform/state.hpp"

namespace kuniform {

// m x N matrix over GF(4); row i encodes the Pauli word of generator i.
struct GeneratorMatrix {
  SymbolMatrix entries;

  int generators() const { return static_cast<int>(entries.rows()); }
  int qubits() const { return static_cast<int>(entries.cols()); }

  static GeneratorMatrix checked(SymbolMatrix entries);  // range/shape checks
  PauliWord row_word(int i) const;
};

// every pair of rows has an even number of anticommuting positions
bool check_commuting(const GeneratorMatrix& g);
// only the empty subset of rows sums to zero under gf4_add
bool check_independence(const GeneratorMatrix& g);
// every nonzero subset sum has GF(4) weight >= k+1
bool check_uniformity(const GeneratorMatrix& g, int k);
// (minimum weight over nonzero subset sums) - 1; requires independence
int max_k(const GeneratorMatrix& g);

inline constexpr int kDenseQubitGuard = 12;

// rho = 2^-N (I+G_1)...(I+G_m) assembled word-wise; exact, trace 1.
// Requires the three generator checks to pass for some k >= 1 (or m == 0, which
// yields the maximally mixed state).
OperatorMatrix synthesize_density(const GeneratorMatrix& g);

// Tr(rho^2) of a Hermitian operator
Rational purity(const OperatorMatrix& rho);

// the 2^{N-m} orthonormal pure states whose uniform mixture is rho;
// canonical global phase: first nonzero amplitude is +1
std::vector<SparseState> pure_decomposition(const GeneratorMatrix& g);

// all subset words (including identity), Gray-code order by subset mask
std::vector<PauliWord> subset_words(const GeneratorMatrix& g);

}  // namespace kuniform
