#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "kuniform/io.hpp"
#include "kuniform/oa.hpp"

using namespace kuniform;

namespace {

SymbolMatrix rows_of(std::initializer_list<std::initializer_list<int>> data) {
  SymbolMatrix m(data.size(), data.begin()->size());
  int i = 0;
  for (const auto& row : data) {
    int j = 0;
    for (int v : row) m(i, j++) = static_cast<Symbol>(v);
    ++i;
  }
  return m;
}

SymbolMatrix full_factorial(int n, int d) {
  long long r = 1;
  for (int i = 0; i < n; ++i) r *= d;
  SymbolMatrix m(r, n);
  for (long long i = 0; i < r; ++i) {
    long long x = i;
    for (int c = n - 1; c >= 0; --c) {
      m(i, c) = static_cast<Symbol>(x % d);
      x /= d;
    }
  }
  return m;
}

// naive strength oracle: count every tuple with nested loops
bool strength_oracle(const SymbolMatrix& rows, int d, int t) {
  if (t == 0) return true;
  if (t > rows.cols()) return false;
  long long cells = 1;
  for (int i = 0; i < t; ++i) cells *= d;
  if (rows.rows() % cells != 0) return false;
  const long long lam = rows.rows() / cells;
  for (const auto& cols : column_subsets(static_cast<int>(rows.cols()), t)) {
    for (long long tuple = 0; tuple < cells; ++tuple) {
      std::vector<Symbol> want(t);
      long long x = tuple;
      for (int i = t - 1; i >= 0; --i) {
        want[i] = static_cast<Symbol>(x % d);
        x /= d;
      }
      long long count = 0;
      for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        bool match = true;
        for (int i = 0; i < t; ++i) {
          if (rows(r, cols[i]) != want[i]) {
            match = false;
            break;
          }
        }
        count += match;
      }
      if (count != lam) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("strength verification on the parity array") {
  OrthogonalArray a = load_oa(fixture_path("oa_16_5_2_4.oa"));
  CHECK(verify_strength(a.rows, 2, 4));
  CHECK_FALSE(verify_strength(a.rows, 2, 5));
  CHECK(max_strength(a.rows, 2) == 4);
  CHECK(verify_strength(a.rows, 2, 0));
}

TEST_CASE("strength on the stacked simplex array") {
  OrthogonalArray a1 = load_oa(fixture_path("oa_8_7_2_2.oa"));
  CHECK(max_strength(a1.rows, 2) == 2);
  SymbolMatrix both(16, 7);
  both.topRows(8) = a1.rows;
  both.bottomRows(8) = kronecker_sum_scalar(1, a1.rows, 2);
  CHECK(verify_strength(both, 2, 3));
  CHECK(max_strength(both, 2) == 3);
}

TEST_CASE("full factorial has full strength") {
  SymbolMatrix f = full_factorial(4, 2);
  CHECK(verify_strength(f, 2, 4));
  SymbolMatrix single = rows_of({{0, 1, 0}});
  CHECK(max_strength(single, 2) == 0);
}

TEST_CASE("strength checker agrees with the naive oracle on random arrays") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int n = 3 + static_cast<int>(rng() % 3);
    const int r = static_cast<int>(d * (1 + rng() % 8));
    SymbolMatrix m(r, n);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = static_cast<Symbol>(rng() % d);
    }
    for (int t = 1; t <= 2; ++t) {
      CHECK(verify_strength(m, d, t) == strength_oracle(m, d, t));
    }
  }
}

TEST_CASE("strength is monotone") {
  OrthogonalArray golay = load_oa(fixture_path("iroa2_3_6.oa"));
  const int top = max_strength(golay.rows, 3);
  for (int t = 0; t <= top; ++t) CHECK(verify_strength(golay.rows, 3, t));
}

TEST_CASE("minimal hamming distance") {
  OrthogonalArray a1 = load_oa(fixture_path("oa_8_7_2_2.oa"));
  CHECK(min_hamming_distance(a1.rows) == 4);
  CHECK_FALSE(min_hamming_distance(rows_of({{0, 1, 2}})).has_value());  // single row: infinite
  CHECK(min_distance_at_least(rows_of({{0, 1, 2}}), 99));
  CHECK(min_hamming_distance(full_factorial(2, 2)) == 1);
  // permutation invariance
  SymbolMatrix m = a1.rows;
  std::mt19937 rng(31);
  std::vector<int> perm(m.cols());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  SymbolMatrix shuffled(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) shuffled(i, j) = m(i, perm[j]);
  }
  CHECK(min_hamming_distance(shuffled) == min_hamming_distance(m));
  // threshold form agrees with the exact value
  for (int x = 1; x <= 5; ++x) CHECK(min_distance_at_least(m, x) == (*min_hamming_distance(m) >= x));
}

TEST_CASE("irredundancy: both routes agree") {
  OrthogonalArray golay = load_oa(fixture_path("iroa2_3_4.oa"));
  CHECK(is_irredundant(golay, 2) == is_irredundant_by_deletion(golay, 2));
  OrthogonalArray f = OrthogonalArray::checked(full_factorial(2, 2), 2, 2);
  CHECK_FALSE(is_irredundant(f, 1));
  CHECK_FALSE(is_irredundant_by_deletion(f, 1));
  CHECK_THROWS_AS(is_irredundant(f, 3), std::invalid_argument);  // no strength 3
}

TEST_CASE("kronecker sums") {
  SymbolMatrix a = rows_of({{0, 1, 2, 1}});
  GroupTable gf4 = GroupTable::elementary(4);
  SymbolMatrix egf = kronecker_sum_expand(a, gf4);
  CHECK(egf == rows_of({{0, 1, 2, 1}, {1, 0, 3, 0}, {2, 3, 0, 3}, {3, 2, 1, 2}}));
  SymbolMatrix ez4 = kronecker_sum_expand(a, 4);
  CHECK(ez4 == rows_of({{0, 1, 2, 1}, {1, 2, 3, 2}, {2, 3, 0, 3}, {3, 0, 1, 0}}));
  CHECK(kronecker_sum_scalar(0, a, 4) == a);
  // adding 2 twice returns the array, cyclically and in the field group
  CHECK(kronecker_sum_scalar(2, kronecker_sum_scalar(2, a, 4), 4) == a);
  CHECK(kronecker_sum_scalar(2, kronecker_sum_scalar(2, a, gf4), gf4) == a);
  // a single zero row expands to the constant rows
  SymbolMatrix zero = rows_of({{0, 0, 0}});
  SymbolMatrix constant = kronecker_sum_expand(zero, 3);
  for (int g = 0; g < 3; ++g) {
    for (int c = 0; c < 3; ++c) CHECK(constant(g, c) == g);
  }
}

TEST_CASE("partition verification") {
  OrthogonalArray a = load_oa(fixture_path("oa_16_5_2_4.oa"));
  OrthogonalPartition singletons;
  singletons.block_strength = 0;
  for (int i = 0; i < 16; ++i) singletons.blocks.push_back({i});
  CHECK(verify_partition(a, singletons));
  PartitionCertificate rep = certify_partition(a, singletons, 4);
  CHECK(rep.pass());
  // a partition splitting strength-1 rows arbitrarily fails at k1 = 1
  OrthogonalArray f = OrthogonalArray::checked(full_factorial(2, 2), 2, 2);
  OrthogonalPartition bad;
  bad.block_strength = 1;
  bad.blocks = {{0, 1}, {2, 3}};  // first column constant within blocks
  CHECK_FALSE(verify_partition(f, bad));
  OrthogonalPartition overlapping;
  overlapping.block_strength = 0;
  overlapping.blocks = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(verify_partition(f, overlapping), std::invalid_argument);
}

TEST_CASE("partition certificate distinguishes the failing condition") {
  OrthogonalArray a1 = load_oa(fixture_path("oa_8_7_2_2.oa"));
  SymbolMatrix both(16, 7);
  both.topRows(8) = a1.rows;
  both.bottomRows(8) = kronecker_sum_scalar(1, a1.rows, 2);
  OrthogonalArray stacked = OrthogonalArray::checked(both, 2, 3);
  OrthogonalPartition halves;
  halves.block_strength = 0;
  halves.blocks = {{0, 1, 2, 3, 4, 5, 6, 7}, {8, 9, 10, 11, 12, 13, 14, 15}};
  CHECK(certify_partition(stacked, halves, 3).pass());
  // k = 4 fails on parent strength and on block distance (4 < 5)
  PartitionCertificate rep = certify_partition(stacked, halves, 4);
  CHECK_FALSE(rep.strength_ok);
  CHECK_FALSE(rep.blocks_md_ok);
  CHECK(rep.distinct_ok);
}

TEST_CASE("feasibility bounds") {
  // r = 3^6 rows, 7 columns, strength 5: every block has at most 3 rows
  FeasibilityReport rep = feasibility_bound(729, 7, 3, 5, 1);
  CHECK(rep.verdict == FeasibilityReport::Verdict::kBlockBound);
  CHECK(rep.min_blocks == 243);
  // inconclusive when N <= k'C(d+1,2)
  FeasibilityReport weak = feasibility_bound(729, 6, 3, 5, 1);
  CHECK(weak.verdict == FeasibilityReport::Verdict::kFeasibleUnknown);
  // the coincidence inequality rules out small m for the golay-derived cell
  FeasibilityReport golay = feasibility_bound(243, 6, 3, 4, 1);
  for (long long m : {1LL, 3LL, 9LL, 27LL}) {
    CHECK(std::find(golay.infeasible_m.begin(), golay.infeasible_m.end(), m) !=
          golay.infeasible_m.end());
  }
  CHECK_THROWS_AS(feasibility_bound(729, 7, 3, 5, 0), std::invalid_argument);
}

TEST_CASE("case (a) block test") {
  auto req = case_a_block_test(81, 8, 3, 4);
  REQUIRE(req.has_value());
  CHECK(req->runs == 81);
  CHECK(req->strength == 4);
  CHECK(ExistenceFacts::builtin().known_nonexistent(81, 8, 3, 4));
  CHECK(case_a_block_test(3, 4, 3, 3).has_value());  // OA(d,N,d,1), always exists
  CHECK_FALSE(case_a_block_test(10, 8, 3, 4).has_value());  // not a power of d
  CHECK_FALSE(case_a_block_test(9, 8, 3, 4).has_value());   // k+1 < N-k'+1
}

TEST_CASE("strength-1 construction") {
  OrthogonalArray a = construct_strength1(5, 3);
  CHECK(a.runs() == 3);
  CHECK(verify_strength(a.rows, 3, 1));
  CHECK(min_hamming_distance(a.rows) == 5);
  CHECK(is_irredundant(a, 1));
  OrthogonalArray tiny = construct_strength1(2, 2);
  CHECK(tiny.rows == rows_of({{0, 0}, {1, 1}}));
}

TEST_CASE("duplicate rows are rejected at load") {
  CHECK_THROWS_AS(OrthogonalArray::checked(rows_of({{0, 1}, {0, 1}}), 2, 1),
                  std::invalid_argument);
}
