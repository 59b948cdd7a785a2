#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kuniform/gf.hpp"
#include "kuniform/rational.hpp"

namespace kuniform {

// r x N array over symbols {0..d-1}; duplicate rows are rejected at
// construction (mixtures of block states need globally distinct rows).
struct OrthogonalArray {
  SymbolMatrix rows;
  int symbols = 0;
  int claimed_strength = 0;

  int runs() const { return static_cast<int>(rows.rows()); }
  int columns() const { return static_cast<int>(rows.cols()); }

  static OrthogonalArray checked(SymbolMatrix rows, int symbols, int claimed_strength);
};

// Disjoint, exhaustive, equal-size grouping of a parent array's row indices.
struct OrthogonalPartition {
  std::vector<std::vector<int>> blocks;
  int block_strength = 0;

  int size() const { return static_cast<int>(blocks.size()); }
};

// every t-column projection hits each of the d^t tuples exactly r/d^t times
bool verify_strength(const SymbolMatrix& rows, int d, int t, int threads = 1);
int max_strength(const SymbolMatrix& rows, int d);

// smallest pairwise Hamming distance; nullopt (infinite) below two rows
std::optional<int> min_hamming_distance(const SymbolMatrix& rows);
// early-exit threshold form; trivially true for x <= 0 or a single row
bool min_distance_at_least(const SymbolMatrix& rows, int x);

bool has_duplicate_rows(const SymbolMatrix& rows);

// MD >= k+1 route; throws unless verify_strength(A,k) holds
bool is_irredundant(const OrthogonalArray& a, int k);
// column-deletion route, cross-checked against the MD route in tests
bool is_irredundant_by_deletion(const OrthogonalArray& a, int k);

SymbolMatrix kronecker_sum_scalar(Symbol c, const SymbolMatrix& rows, const GroupTable& group);
// each row a expands to the d rows a+g in group order
SymbolMatrix kronecker_sum_expand(const SymbolMatrix& rows, const GroupTable& group);
// mod-d convenience forms
SymbolMatrix kronecker_sum_scalar(Symbol c, const SymbolMatrix& rows, int d);
SymbolMatrix kronecker_sum_expand(const SymbolMatrix& rows, int d);

// structural checks plus per-block strength at partition.block_strength
bool verify_partition(const OrthogonalArray& parent, const OrthogonalPartition& p);

struct PartitionCertificate {
  bool strength_ok = false;     // parent has strength k
  bool blocks_md_ok = false;    // every block has MD >= k+1 (singletons pass)
  bool distinct_ok = false;     // no duplicate rows globally
  bool structure_ok = false;    // blocks partition the rows
  int failing_block = -1;

  bool pass() const { return strength_ok && blocks_md_ok && distinct_ok && structure_ok; }
};

PartitionCertificate certify_partition(const OrthogonalArray& parent, const OrthogonalPartition& p,
                               int k, int threads = 1);

struct OaParams {
  long long runs;
  int columns, symbols, strength;
};

struct FeasibilityReport {
  long long runs;
  int columns, symbols, strength, coincidence_bound;  // r, N, d, k, k'
  enum class Verdict { kFeasibleUnknown, kBlockBound } verdict = Verdict::kFeasibleUnknown;
  long long min_blocks = 1;              // m >= this (block-size argument)
  std::vector<long long> infeasible_m;   // divisors ruled out by the coincidence count
};

// the two block-size tests: if N > k'*C(d+1,2) every block has at most d
// rows, so m >= r/d; and for each divisor m of r with block size s > d the
// coincidence inequality k'*C(s,2) >= r*N*(s-d)/(2*m*d) must hold
FeasibilityReport feasibility_bound(long long r, int N, int d, int k, int kprime);

// if s = d^k' and k+1 >= N-k'+1, blocks of size s with MD >= k+1 must be
// OA(d^k',N,d,k'); returns that existence requirement
std::optional<OaParams> case_a_block_test(long long s, int N, int d, int k);

// the d x N array with constant rows; strength 1, MD = N
OrthogonalArray construct_strength1(int N, int d);

std::vector<std::vector<int>> column_subsets(int n, int k);

}  // namespace kuniform
