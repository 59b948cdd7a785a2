#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kuniform/gf.hpp"
#include "kuniform/rational.hpp"

namespace kuniform {

// Basis strings are packed 4 bits per site, leftmost site in the highest
// nibble, so numeric order equals lexicographic order. Supports d <= 16 and
// up to 16 sites.
using BasisKey = std::uint64_t;

BasisKey pack_basis(const Symbol* symbols, int n);
BasisKey pack_basis(const SymbolRow& row);
std::vector<Symbol> unpack_basis(BasisKey key, int n);
std::string basis_string(BasisKey key, int n);  // chars 0-9a-f
BasisKey parse_basis_string(const std::string& s);

// Pure state stored as |psi> = (1/sqrt(scale)) * sum_b amp(b) |b>, with
// sum |amp|^2 == scale held as an exact invariant. Equal-weight
// superpositions keep every amp at 1.
class SparseState {
 public:
  SparseState(int sites, int dim, std::map<BasisKey, GaussianRational> terms);

  // equal superposition over the rows of a block, amplitude 1/sqrt(#rows)
  static SparseState superposition(const SymbolMatrix& rows, int dim);
  static SparseState basis_state(const SymbolRow& row, int dim);

  int sites() const { return sites_; }
  int dim() const { return dim_; }
  std::int64_t scale() const { return scale_; }
  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::map<BasisKey, GaussianRational>& terms() const { return terms_; }

  // divides by the first nonzero amplitude (i.e. makes it +1) and rescales;
  // all states this library produces stay integer-scaled, enforced here
  void canonicalize();

  // cyclically shifts one site's symbol by `shift` (mod d)
  SparseState shifted(int site, int shift) const;

 private:
  int sites_;
  int dim_;
  std::int64_t scale_ = 1;
  std::map<BasisKey, GaussianRational> terms_;
};

// <a|b> * sqrt(scale_a * scale_b): the exact overlap numerator
GaussianRational overlap_numerator(const SparseState& a, const SparseState& b);
// |<a|b>|^2, always an exact rational
Rational overlap_sq(const SparseState& a, const SparseState& b);

// Uniform mixture of pure components over the same site structure.
struct MixedState {
  int sites = 0;
  int dim = 0;
  std::vector<SparseState> components;

  int size() const { return static_cast<int>(components.size()); }
};

MixedState mixed_state(std::vector<SparseState> components);
MixedState block_mixture(const SymbolMatrix& parent, const std::vector<std::vector<int>>& blocks,
                         int dim);

// Sparse exact partial trace onto `sites`. Entries absent from the map are
// exact zeros; stored keys are (row, col) pairs of packed sub-basis strings.
struct ReducedDensity {
  std::vector<int> sites;
  int dim = 0;
  std::map<std::pair<BasisKey, BasisKey>, GaussianRational> entries;

  Rational trace() const;
  bool is_maximally_mixed() const;  // == I / d^{|sites|}
};

// accumulation guard: d^{|sites|} must stay below this
inline constexpr std::int64_t kReductionGuard = std::int64_t(1) << 20;
// dense materialization guard
inline constexpr std::int64_t kDenseGuard = std::int64_t(1) << 13;

ReducedDensity reduced_density(const MixedState& m, const std::vector<int>& sites);
ReducedDensity reduced_density(const SparseState& s, const std::vector<int>& sites);

struct UniformityWitness {
  std::vector<int> sites;
  BasisKey row = 0, col = 0;
  GaussianRational value;
};

bool is_k_uniform(const MixedState& m, int k, UniformityWitness* witness = nullptr,
                  int threads = 1);
int max_uniformity(const MixedState& m, int threads = 1);

// Tr(rho^2) from the Gram matrix of the components; computed, never assumed.
Rational mixture_purity(const MixedState& m);

struct LoweredMixture {
  MixedState state;
  bool overlap_detected = false;  // shifted copies not orthogonal to originals
  Rational measured_purity;
};

// appends a copy of every component with one site's symbol cyclically
// shifted; halves the purity when the copies are orthogonal
LoweredMixture lower_purity(const MixedState& m, int site, int shift);

// ---------------------------------------------------------------------------
// Dense operators (qubit stabilizer pipeline)
// ---------------------------------------------------------------------------
using OperatorMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;

OperatorMatrix adjoint_of(const OperatorMatrix& m);
Rational trace_of_product(const OperatorMatrix& a, const OperatorMatrix& b);  // Re Tr(ab)

// exact dense partial trace of a 2^N x 2^N operator onto `sites`
OperatorMatrix reduced_density_dense(const OperatorMatrix& rho, int num_qubits,
                                     const std::vector<int>& sites);

// uniform mixture of sparse states, materialized densely (cross-pipeline checks)
OperatorMatrix dense_mixture(const MixedState& m);

}  // namespace kuniform
