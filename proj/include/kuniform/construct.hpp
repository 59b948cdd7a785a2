#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kuniform/oa.hpp"
#include "kuniform/scheme.hpp"

namespace kuniform {

// parent = D (+) (d) in expansion order (row i*d+g is scheme row i plus g);
// blocks are the d-row bands, each with MD = N
struct SchemeBlocks {
  OrthogonalArray parent;
  OrthogonalPartition partition;
};

// A verified D_k(r,N,d) with k < N expands to an OA(r*d, N, d, k)
// partitioned into r blocks of pairwise distance N; all re-verified here.
SchemeBlocks scheme_to_mixed_state_blocks(const DifferenceScheme& scheme);

// removes one column; duplicate surviving rows are an error
OrthogonalArray drop_column(const OrthogonalArray& a, int col);

struct PrefixPartition {
  OrthogonalArray trimmed;  // last N-x columns, strength k retained
  OrthogonalPartition partition;  // d^x blocks grouped by the dropped prefix
};

// rows grouped by their first x symbols; within-block distances are
// preserved by the trim since prefixes coincide
PrefixPartition prefix_partition(const OrthogonalArray& a, int x);

struct CosetPartition {
  OrthogonalArray parent;  // the full factorial over d^N in coset order
  OrthogonalPartition partition;
};

// blocks are the cosets of `sub` (checked closed under the group operation,
// containing zero) inside the full factorial; each block keeps sub's row
// order, so banded structure survives translation
CosetPartition coset_partition(const SymbolMatrix& sub, const GroupTable& group);

// M = stack_i of [A_i x 1, 1 x C_i]; row (i, a, c) at index
// base_i + a*|C_i| + c. Strength is measured by the caller, never assumed.
struct ProductArray {
  OrthogonalArray array;
  int left_columns = 0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> superblocks;  // (A rows, C rows)
};

ProductArray product_construction(const OrthogonalArray& a, const OrthogonalPartition& pa,
                                  const OrthogonalArray& c, const OrthogonalPartition& pc);

// splits one super-block [A_j x 1, 1 x C_j] into |C_j| blocks E_t pairing
// row i of A_j with C_j row band*n + ((i + off) mod n), t = band*n + off;
// returns row indices into the product array
std::vector<std::vector<int>> diagonal_repartition(const ProductArray& m, int superblock);

// ---------------------------------------------------------------------------
// Linear codes as orthogonal arrays
// ---------------------------------------------------------------------------
struct LinearCodeSpec {
  int q = 0, length = 0, dimension = 0;
  SymbolMatrix generator;  // dimension x length over GF(q)
  int claimed_strength = 0;
  int claimed_md = 0;
  std::string provenance;
};

// enumerates all q^dimension codewords; measured max strength and MD must
// equal the claims or loading fails
OrthogonalArray code_to_oa(const LinearCodeSpec& spec);

// ---------------------------------------------------------------------------
// Partition search
// ---------------------------------------------------------------------------
struct PartitionSearchResult {
  SearchStatus status = SearchStatus::kBudgetExhausted;
  std::optional<OrthogonalPartition> partition;
  std::uint64_t nodes = 0;
};

// backtracking assignment of rows to m equal blocks with per-block MD >= k+1
// (rows at distance <= k share no block) and optional block strength k1;
// block identity symmetry is broken by first-open ordering
PartitionSearchResult partition_search(const OrthogonalArray& a, int m, int k,
                                       std::optional<int> k1, SearchBudget budget);

}  // namespace kuniform
