#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kuniform/gf.hpp"
#include "kuniform/oa.hpp"

namespace kuniform {

// r x N array over an abelian group of order d such that every k-column
// projection hits the d^{k-1} cosets of the diagonal subgroup equally often.
struct DifferenceScheme {
  SymbolMatrix rows;
  int symbols = 0;
  int strength = 0;
  GroupTable group = GroupTable::cyclic(2);
  std::string provenance;  // builtin | fixture:<source> | searched | constructed

  int runs() const { return static_cast<int>(rows.rows()); }
  int columns() const { return static_cast<int>(rows.cols()); }
};

// coset index of a tuple: subtract its first coordinate (group subtraction)
bool verify_difference_scheme(const SymbolMatrix& rows, int k, const GroupTable& group);
bool verify_difference_scheme(const DifferenceScheme& d);

struct SearchBudget {
  std::uint64_t max_nodes = 50'000'000;
  double max_seconds = 30.0;
};

enum class SearchStatus { kFound, kBudgetExhausted, kProvenNonexistent };

struct SchemeSearchResult {
  SearchStatus status = SearchStatus::kBudgetExhausted;
  std::optional<DifferenceScheme> scheme;
  std::uint64_t nodes = 0;
};

// Lexicographic backtracking under the canonical normalization (first row
// zero, first column zero, rows strictly increasing) with partial coset-count
// pruning. kProvenNonexistent is reported only when the normalized space is
// exhausted; normalization soundness: adding a constant to a row or a fixed
// vector to a column permutes cosets, so every scheme has a normal form.
SchemeSearchResult search_difference_scheme(int r, int N, int d, int k, SearchBudget budget,
                                            const GroupTable& group);
SchemeSearchResult search_difference_scheme(int r, int N, int d, int k, SearchBudget budget);

// D3(d^2, d+1, d) for odd prime power d <= 9: rows indexed by (a,b) over
// GF(d), one column per point (x,y) of the norm-form conic x^2 - delta*y^2
// = 1 (delta a fixed non-square), entry a*x + b*y. The conic is a
// (d+1)-arc, which is exactly the strength-3 condition; the result is
// re-verified and construction failure is an error.
DifferenceScheme conic_difference_scheme(int d);

// D_k(d^{k-1}, k+1, d) as the first-coordinate-zero slice of the kernel of
// an all-unit functional h with sum(h) = 0; works over Z_d when such h
// exists and over the additive group of GF(q) for prime powers. Verified
// before returning; throws if no valid h exists for these parameters.
DifferenceScheme kernel_difference_scheme(int d, int k, const GroupTable& group);
std::optional<DifferenceScheme> try_kernel_difference_scheme(int d, int k,
                                                             const GroupTable& group);

}  // namespace kuniform
