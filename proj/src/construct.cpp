#include "kuniform/construct.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <stdexcept>

namespace kuniform {

namespace {

long long ipow(long long b, int e) {
  long long v = 1;
  while (e-- > 0) v *= b;
  return v;
}

}  // namespace

SchemeBlocks scheme_to_mixed_state_blocks(const DifferenceScheme& scheme) {
  if (scheme.strength >= scheme.columns()) {
    throw std::invalid_argument("scheme strength must be below the column count");
  }
  if (!verify_difference_scheme(scheme)) {
    throw std::invalid_argument("difference scheme fails verification");
  }
  const int d = scheme.symbols;
  SymbolMatrix expanded = kronecker_sum_expand(scheme.rows, scheme.group);
  OrthogonalArray parent =
      OrthogonalArray::checked(std::move(expanded), d, scheme.strength);
  if (!verify_strength(parent.rows, d, scheme.strength)) {
    throw std::logic_error("scheme expansion is not an OA of the declared strength");
  }
  OrthogonalPartition part;
  part.block_strength = 0;
  part.blocks.resize(scheme.runs());
  for (int i = 0; i < scheme.runs(); ++i) {
    for (int g = 0; g < d; ++g) part.blocks[i].push_back(i * d + g);
  }
  // blocks a_i + G have every pairwise distance N
  for (const auto& block : part.blocks) {
    SymbolMatrix rows(block.size(), parent.columns());
    for (size_t i = 0; i < block.size(); ++i) rows.row(i) = parent.rows.row(block[i]);
    if (!min_distance_at_least(rows, parent.columns())) {
      throw std::logic_error("scheme block with distance below N");
    }
  }
  return {std::move(parent), std::move(part)};
}

OrthogonalArray drop_column(const OrthogonalArray& a, int col) {
  if (a.columns() < 2) throw std::invalid_argument("cannot drop from a single-column array");
  if (col < 0 || col >= a.columns()) throw std::out_of_range("column out of range");
  SymbolMatrix rows(a.runs(), a.columns() - 1);
  for (int i = 0; i < a.runs(); ++i) {
    int w = 0;
    for (int c = 0; c < a.columns(); ++c) {
      if (c != col) rows(i, w++) = a.rows(i, c);
    }
  }
  if (has_duplicate_rows(rows)) {
    throw std::invalid_argument("dropping this column collapses two rows");
  }
  const int strength = std::min(a.claimed_strength, a.columns() - 1);
  return OrthogonalArray::checked(std::move(rows), a.symbols, strength);
}

PrefixPartition prefix_partition(const OrthogonalArray& a, int x) {
  const int k = a.claimed_strength;
  const int n = a.columns();
  if (x < 1 || x > k) throw std::invalid_argument("prefix length must lie in [1, k]");
  if (n - x <= k) throw std::invalid_argument("trimmed width must stay above the strength");
  if (!verify_strength(a.rows, a.symbols, k)) {
    throw std::invalid_argument("array does not have its claimed strength");
  }
  if (!min_distance_at_least(a.rows, k + 1)) {
    throw std::invalid_argument("array minimal distance below k+1");
  }
  std::map<std::vector<Symbol>, std::vector<int>> groups;
  for (int i = 0; i < a.runs(); ++i) {
    std::vector<Symbol> prefix(a.rows.data() + i * n, a.rows.data() + i * n + x);
    groups[prefix].push_back(i);
  }
  const long long want_blocks = ipow(a.symbols, x);
  if (static_cast<long long>(groups.size()) != want_blocks) {
    throw std::logic_error("prefix groups incomplete");
  }
  SymbolMatrix trimmed(a.runs(), n - x);
  for (int i = 0; i < a.runs(); ++i) {
    for (int c = x; c < n; ++c) trimmed(i, c - x) = a.rows(i, c);
  }
  PrefixPartition out{OrthogonalArray::checked(std::move(trimmed), a.symbols, k), {}};
  out.partition.block_strength = k - x;
  for (auto& [prefix, idx] : groups) out.partition.blocks.push_back(std::move(idx));
  // each block is an OA(r/d^x, N-x, d, k-x) and its distances survive the trim
  for (const auto& block : out.partition.blocks) {
    SymbolMatrix rows(block.size(), out.trimmed.columns());
    for (size_t i = 0; i < block.size(); ++i) rows.row(i) = out.trimmed.rows.row(block[i]);
    if (!verify_strength(rows, a.symbols, k - x)) {
      throw std::logic_error("prefix block misses strength k-x");
    }
    if (!min_distance_at_least(rows, k + 1)) {
      throw std::logic_error("prefix block distance dropped below k+1");
    }
  }
  return out;
}

CosetPartition coset_partition(const SymbolMatrix& sub, const GroupTable& group) {
  const int d = group.order();
  const int n = static_cast<int>(sub.cols());
  const long long total = ipow(d, n);
  if (total > 1'000'000) throw std::length_error("full factorial too large");
  // closure and zero-row checks
  std::map<std::vector<Symbol>, int> index;
  for (int i = 0; i < sub.rows(); ++i) {
    std::vector<Symbol> row(sub.data() + i * n, sub.data() + (i + 1) * n);
    if (!index.emplace(std::move(row), i).second) {
      throw std::invalid_argument("subarray has duplicate rows");
    }
  }
  if (!index.count(std::vector<Symbol>(n, 0))) {
    throw std::invalid_argument("subarray does not contain the zero row");
  }
  for (int i = 0; i < sub.rows(); ++i) {
    for (int j = 0; j < sub.rows(); ++j) {
      std::vector<Symbol> s(n);
      for (int c = 0; c < n; ++c) s[c] = group.add(sub(i, c), sub(j, c));
      if (!index.count(s)) throw std::invalid_argument("subarray not closed under the group");
    }
  }
  const long long m = total / sub.rows();
  SymbolMatrix parent(total, n);
  OrthogonalPartition part;
  part.block_strength = 0;
  std::map<std::vector<Symbol>, bool> assigned;
  long long next_row = 0;
  std::vector<Symbol> v(n, 0);
  auto advance = [&]() {
    for (int c = n - 1; c >= 0; --c) {
      if (++v[c] < d) return true;
      v[c] = 0;
    }
    return false;
  };
  do {
    if (assigned.count(v)) continue;
    std::vector<int> block;
    block.reserve(sub.rows());
    for (int i = 0; i < sub.rows(); ++i) {
      std::vector<Symbol> w(n);
      for (int c = 0; c < n; ++c) w[c] = group.add(v[c], sub(i, c));
      if (assigned.count(w)) throw std::logic_error("coset overlap");
      assigned.emplace(w, true);
      for (int c = 0; c < n; ++c) parent(next_row, c) = w[c];
      block.push_back(static_cast<int>(next_row));
      ++next_row;
    }
    part.blocks.push_back(std::move(block));
  } while (advance());
  if (static_cast<long long>(part.blocks.size()) != m) throw std::logic_error("coset count off");
  return {OrthogonalArray::checked(std::move(parent), d, n), std::move(part)};
}

ProductArray product_construction(const OrthogonalArray& a, const OrthogonalPartition& pa,
                                  const OrthogonalArray& c, const OrthogonalPartition& pc) {
  if (pa.size() != pc.size()) throw std::invalid_argument("block counts differ");
  if (a.symbols != c.symbols) throw std::invalid_argument("symbol counts differ");
  long long rows = 0;
  for (int i = 0; i < pa.size(); ++i) {
    rows += static_cast<long long>(pa.blocks[i].size()) * pc.blocks[i].size();
  }
  ProductArray out;
  out.left_columns = a.columns();
  SymbolMatrix m(rows, a.columns() + c.columns());
  long long next = 0;
  for (int i = 0; i < pa.size(); ++i) {
    for (int ai : pa.blocks[i]) {
      for (int ci : pc.blocks[i]) {
        for (int col = 0; col < a.columns(); ++col) m(next, col) = a.rows(ai, col);
        for (int col = 0; col < c.columns(); ++col) m(next, a.columns() + col) = c.rows(ci, col);
        ++next;
      }
    }
    out.superblocks.push_back({pa.blocks[i], pc.blocks[i]});
  }
  out.array = OrthogonalArray::checked(std::move(m), a.symbols, 0);
  return out;
}

std::vector<std::vector<int>> diagonal_repartition(const ProductArray& m, int superblock) {
  if (superblock < 0 || superblock >= static_cast<int>(m.superblocks.size())) {
    throw std::out_of_range("superblock index");
  }
  const auto& [arows, crows] = m.superblocks[superblock];
  const int na = static_cast<int>(arows.size());
  const int nc = static_cast<int>(crows.size());
  if (nc % na != 0) throw std::invalid_argument("C block size not a multiple of A block size");
  long long base = 0;
  for (int i = 0; i < superblock; ++i) {
    base += static_cast<long long>(m.superblocks[i].first.size()) *
            m.superblocks[i].second.size();
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(nc);
  for (int t = 0; t < nc; ++t) {
    const int band = t / na;
    const int off = t % na;
    std::vector<int> block;
    block.reserve(na);
    for (int i = 0; i < na; ++i) {
      const int ci = band * na + (i + off) % na;
      block.push_back(static_cast<int>(base + static_cast<long long>(i) * nc + ci));
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

OrthogonalArray code_to_oa(const LinearCodeSpec& spec) {
  const GfTable& f = GfTable::of(spec.q);
  if (spec.generator.rows() != spec.dimension || spec.generator.cols() != spec.length) {
    throw std::invalid_argument("generator shape mismatch");
  }
  double size = 1;
  for (int i = 0; i < spec.dimension; ++i) size *= spec.q;
  if (size > double(1 << 20)) throw std::length_error("codeword enumeration guard exceeded");
  const long long words = ipow(spec.q, spec.dimension);
  SymbolMatrix rows(words, spec.length);
  std::vector<Symbol> msg(spec.dimension, 0);
  for (long long w = 0; w < words; ++w) {
    long long x = w;
    for (int i = spec.dimension - 1; i >= 0; --i) {
      msg[i] = static_cast<Symbol>(x % spec.q);
      x /= spec.q;
    }
    for (int c = 0; c < spec.length; ++c) {
      Symbol acc = 0;
      for (int i = 0; i < spec.dimension; ++i) {
        acc = f.add(acc, f.mul(msg[i], spec.generator(i, c)));
      }
      rows(w, c) = acc;
    }
  }
  // duplicate rows would mean dependent generator rows
  OrthogonalArray oa = OrthogonalArray::checked(std::move(rows), spec.q, spec.claimed_strength);
  const int strength = max_strength(oa.rows, spec.q);
  if (strength != spec.claimed_strength) {
    throw std::invalid_argument("measured strength " + std::to_string(strength) +
                                " disagrees with claimed " +
                                std::to_string(spec.claimed_strength));
  }
  const auto md = min_hamming_distance(oa.rows);
  if (!md || *md != spec.claimed_md) {
    throw std::invalid_argument("measured distance disagrees with claimed md");
  }
  return oa;
}

namespace {

struct PartitionSearcher {
  const OrthogonalArray& a;
  int m, k;
  std::optional<int> k1;
  SearchBudget budget;
  std::chrono::steady_clock::time_point deadline;
  std::uint64_t nodes = 0;
  bool budget_hit = false;

  int block_cap;
  std::vector<std::vector<bool>> conflict;  // rows at distance <= k
  std::vector<std::vector<int>> blocks;
  std::vector<int> assignment;

  PartitionSearcher(const OrthogonalArray& a, int m, int k, std::optional<int> k1,
                    SearchBudget b)
      : a(a), m(m), k(k), k1(k1), budget(b) {
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(b.max_seconds));
    block_cap = a.runs() / m;
    const int r = a.runs();
    conflict.assign(r, std::vector<bool>(r, false));
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        int dist = 0;
        for (int c = 0; c < a.columns(); ++c) dist += a.rows(i, c) != a.rows(j, c);
        if (dist <= k) conflict[i][j] = conflict[j][i] = true;
      }
    }
    assignment.assign(r, -1);
  }

  bool out_of_budget() {
    if ((nodes & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline) budget_hit = true;
    if (nodes > budget.max_nodes) budget_hit = true;
    return budget_hit;
  }

  bool block_ok(const std::vector<int>& block, int row) const {
    for (int other : block) {
      if (conflict[other][row]) return false;
    }
    return true;
  }

  bool strength_ok(const std::vector<int>& block) const {
    if (!k1 || *k1 == 0) return true;
    SymbolMatrix rows(block.size(), a.columns());
    for (size_t i = 0; i < block.size(); ++i) rows.row(i) = a.rows.row(block[i]);
    return verify_strength(rows, a.symbols, *k1);
  }

  bool dfs(int row) {
    ++nodes;
    if (out_of_budget()) return false;
    if (row == a.runs()) return true;
    const int open = static_cast<int>(blocks.size());
    for (int b = 0; b < open; ++b) {
      if (static_cast<int>(blocks[b].size()) >= block_cap) continue;
      if (!block_ok(blocks[b], row)) continue;
      blocks[b].push_back(row);
      const bool full = static_cast<int>(blocks[b].size()) == block_cap;
      if (!full || strength_ok(blocks[b])) {
        if (dfs(row + 1)) return true;
      }
      blocks[b].pop_back();
      if (budget_hit) return false;
    }
    if (open < m) {  // first-open symmetry break: new block gets the row
      blocks.emplace_back(1, row);
      if (dfs(row + 1)) return true;
      blocks.pop_back();
    }
    return false;
  }
};

}  // namespace

PartitionSearchResult partition_search(const OrthogonalArray& a, int m, int k,
                                       std::optional<int> k1, SearchBudget budget) {
  if (m < 1 || a.runs() % m != 0) throw std::invalid_argument("m must divide the run count");
  PartitionSearcher searcher(a, m, k, k1, budget);
  const bool found = searcher.dfs(0);
  PartitionSearchResult res;
  res.nodes = searcher.nodes;
  if (found) {
    OrthogonalPartition part;
    part.block_strength = k1.value_or(0);
    part.blocks = searcher.blocks;
    res.status = SearchStatus::kFound;
    res.partition = std::move(part);
  } else {
    res.status = searcher.budget_hit ? SearchStatus::kBudgetExhausted
                                     : SearchStatus::kProvenNonexistent;
  }
  return res;
}

}  // namespace kuniform
