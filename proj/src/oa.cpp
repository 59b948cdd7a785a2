#include "kuniform/oa.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "kuniform/parallel.hpp"

namespace kuniform {

OrthogonalArray OrthogonalArray::checked(SymbolMatrix rows, int symbols, int claimed_strength) {
  if (symbols < 2 || symbols > 16) throw std::invalid_argument("symbol count out of range");
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      if (rows(i, j) >= symbols) throw std::invalid_argument("array entry out of range");
    }
  }
  if (has_duplicate_rows(rows)) throw std::invalid_argument("array contains duplicate rows");
  return OrthogonalArray{std::move(rows), symbols, claimed_strength};
}

std::vector<std::vector<int>> column_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

bool verify_strength(const SymbolMatrix& rows, int d, int t, int threads) {
  if (t == 0) return true;
  const long long r = rows.rows();
  long long cells = 1;
  for (int i = 0; i < t; ++i) {
    cells *= d;
    if (cells > (1 << 26)) throw std::length_error("strength check histogram too large");
  }
  if (t > rows.cols() || r % cells != 0) return false;
  const int lam = static_cast<int>(r / cells);
  const auto subsets = column_subsets(static_cast<int>(rows.cols()), t);
  std::vector<char> ok(subsets.size(), 1);
  parallel_for(subsets.size(), threads, [&](std::size_t si) {
    const auto& cols = subsets[si];
    std::vector<int> counts(cells, 0);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const Symbol* row = rows.data() + i * rows.cols();
      long long key = 0;
      for (int c : cols) key = key * d + row[c];
      if (++counts[key] > lam) {
        ok[si] = 0;
        return;
      }
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

int max_strength(const SymbolMatrix& rows, int d) {
  int t = 0;
  while (t < rows.cols() && verify_strength(rows, d, t + 1)) ++t;
  return t;
}

namespace {

int row_distance(const SymbolMatrix& rows, Eigen::Index i, Eigen::Index j) {
  const Symbol* a = rows.data() + i * rows.cols();
  const Symbol* b = rows.data() + j * rows.cols();
  int dist = 0;
  for (Eigen::Index c = 0; c < rows.cols(); ++c) dist += a[c] != b[c];
  return dist;
}

}  // namespace

std::optional<int> min_hamming_distance(const SymbolMatrix& rows) {
  if (rows.rows() < 2) return std::nullopt;
  int best = static_cast<int>(rows.cols()) + 1;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < rows.rows(); ++j) {
      best = std::min(best, row_distance(rows, i, j));
      if (best == 0) return 0;
    }
  }
  return best;
}

bool min_distance_at_least(const SymbolMatrix& rows, int x) {
  if (x <= 0 || rows.rows() < 2) return true;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < rows.rows(); ++j) {
      if (row_distance(rows, i, j) < x) return false;
    }
  }
  return true;
}

bool has_duplicate_rows(const SymbolMatrix& rows) {
  std::vector<std::vector<Symbol>> sorted(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    sorted[i].assign(rows.data() + i * rows.cols(), rows.data() + (i + 1) * rows.cols());
  }
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

bool is_irredundant(const OrthogonalArray& a, int k) {
  if (!verify_strength(a.rows, a.symbols, k)) {
    throw std::invalid_argument("irredundancy check requires strength k");
  }
  return min_distance_at_least(a.rows, k + 1);
}

bool is_irredundant_by_deletion(const OrthogonalArray& a, int k) {
  if (!verify_strength(a.rows, a.symbols, k)) {
    throw std::invalid_argument("irredundancy check requires strength k");
  }
  const int n = a.columns();
  for (const auto& dropped : column_subsets(n, k)) {
    std::vector<bool> drop(n, false);
    for (int c : dropped) drop[c] = true;
    std::vector<std::vector<Symbol>> remaining(a.runs());
    for (int i = 0; i < a.runs(); ++i) {
      for (int c = 0; c < n; ++c) {
        if (!drop[c]) remaining[i].push_back(a.rows(i, c));
      }
    }
    std::sort(remaining.begin(), remaining.end());
    if (std::adjacent_find(remaining.begin(), remaining.end()) != remaining.end()) return false;
  }
  return true;
}

SymbolMatrix kronecker_sum_scalar(Symbol c, const SymbolMatrix& rows, const GroupTable& group) {
  SymbolMatrix out(rows.rows(), rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) out(i, j) = group.add(c, rows(i, j));
  }
  return out;
}

SymbolMatrix kronecker_sum_expand(const SymbolMatrix& rows, const GroupTable& group) {
  const int d = group.order();
  SymbolMatrix out(rows.rows() * d, rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (int g = 0; g < d; ++g) {
      for (Eigen::Index j = 0; j < rows.cols(); ++j) {
        out(i * d + g, j) = group.add(rows(i, j), static_cast<Symbol>(g));
      }
    }
  }
  return out;
}

SymbolMatrix kronecker_sum_scalar(Symbol c, const SymbolMatrix& rows, int d) {
  return kronecker_sum_scalar(c, rows, GroupTable::cyclic(d));
}

SymbolMatrix kronecker_sum_expand(const SymbolMatrix& rows, int d) {
  return kronecker_sum_expand(rows, GroupTable::cyclic(d));
}

namespace {

bool partition_structure_ok(int runs, const OrthogonalPartition& p) {
  if (p.blocks.empty()) return false;
  if (runs % p.size() != 0) return false;
  const size_t want = static_cast<size_t>(runs) / p.size();
  std::vector<bool> seen(runs, false);
  for (const auto& block : p.blocks) {
    if (block.size() != want) return false;
    for (int idx : block) {
      if (idx < 0 || idx >= runs || seen[idx]) return false;
      seen[idx] = true;
    }
  }
  return true;
}

SymbolMatrix gather_rows(const SymbolMatrix& rows, const std::vector<int>& idx) {
  SymbolMatrix out(idx.size(), rows.cols());
  for (size_t i = 0; i < idx.size(); ++i) out.row(i) = rows.row(idx[i]);
  return out;
}

}  // namespace

bool verify_partition(const OrthogonalArray& parent, const OrthogonalPartition& p) {
  if (!partition_structure_ok(parent.runs(), p)) {
    throw std::invalid_argument("blocks do not partition the rows");
  }
  for (const auto& block : p.blocks) {
    if (!verify_strength(gather_rows(parent.rows, block), parent.symbols, p.block_strength)) {
      return false;
    }
  }
  return true;
}

PartitionCertificate certify_partition(const OrthogonalArray& parent, const OrthogonalPartition& p,
                               int k, int threads) {
  PartitionCertificate rep;
  rep.structure_ok = partition_structure_ok(parent.runs(), p);
  if (!rep.structure_ok) return rep;
  rep.strength_ok = verify_strength(parent.rows, parent.symbols, k, threads);
  rep.distinct_ok = !has_duplicate_rows(parent.rows);
  rep.blocks_md_ok = true;
  std::vector<char> ok(p.blocks.size(), 1);
  parallel_for(p.blocks.size(), threads, [&](std::size_t b) {
    if (!min_distance_at_least(gather_rows(parent.rows, p.blocks[b]), k + 1)) ok[b] = 0;
  });
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    if (!ok[b]) {
      rep.blocks_md_ok = false;
      rep.failing_block = static_cast<int>(b);
      break;
    }
  }
  return rep;
}

namespace {

long long choose2(long long n) { return n * (n - 1) / 2; }

}  // namespace

FeasibilityReport feasibility_bound(long long r, int N, int d, int k, int kprime) {
  if (kprime < 1) throw std::invalid_argument("coincidence bound must be positive");
  FeasibilityReport rep;
  rep.runs = r;
  rep.columns = N;
  rep.symbols = d;
  rep.strength = k;
  rep.coincidence_bound = kprime;
  if (N > kprime * choose2(d + 1)) {
    rep.verdict = FeasibilityReport::Verdict::kBlockBound;
    rep.min_blocks = (r + d - 1) / d;
  }
  for (long long m = 1; m <= r; ++m) {
    if (r % m != 0) continue;
    const long long s = r / m;
    if (s <= d) continue;
    // k'*C(s,2) >= r*N*(s-d)/(2*m*d), exact comparison
    const Rational lhs(kprime * choose2(s));
    const Rational rhs = Rational(r * N) * Rational(s - d) / Rational(2 * m * d);
    if (lhs < rhs) rep.infeasible_m.push_back(m);
  }
  return rep;
}

std::optional<OaParams> case_a_block_test(long long s, int N, int d, int k) {
  long long power = 1;
  int kp = 0;
  while (power < s) {
    power *= d;
    ++kp;
  }
  if (power != s) return std::nullopt;
  if (k + 1 < N - kp + 1) return std::nullopt;
  return OaParams{s, N, d, kp};
}

OrthogonalArray construct_strength1(int N, int d) {
  if (N < 2 || d < 2) throw std::invalid_argument("need N >= 2 and d >= 2");
  SymbolMatrix rows(d, N);
  for (int i = 0; i < d; ++i) rows.row(i).setConstant(static_cast<Symbol>(i));
  return OrthogonalArray::checked(std::move(rows), d, 1);
}

}  // namespace kuniform
