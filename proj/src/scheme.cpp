#include "kuniform/scheme.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace kuniform {

namespace {

long long ipow(long long b, int e) {
  long long v = 1;
  while (e-- > 0) v *= b;
  return v;
}

}  // namespace

bool verify_difference_scheme(const SymbolMatrix& rows, int k, const GroupTable& group) {
  const int d = group.order();
  const long long r = rows.rows();
  const long long cosets = ipow(d, k - 1);
  if (k < 1 || k > rows.cols()) return false;
  if (r % cosets != 0) return false;
  const long long lam = r / cosets;
  for (const auto& cols : column_subsets(static_cast<int>(rows.cols()), k)) {
    std::vector<long long> counts(cosets, 0);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const Symbol* row = rows.data() + i * rows.cols();
      const Symbol base = row[cols[0]];
      long long key = 0;
      for (size_t c = 1; c < cols.size(); ++c) key = key * d + group.sub(row[cols[c]], base);
      if (++counts[key] > lam) return false;
    }
  }
  return true;
}

bool verify_difference_scheme(const DifferenceScheme& d) {
  return verify_difference_scheme(d.rows, d.strength, d.group);
}

namespace {

struct SchemeSearcher {
  int r, N, d, k;
  GroupTable group;
  SearchBudget budget;
  std::chrono::steady_clock::time_point deadline;
  std::uint64_t nodes = 0;
  bool budget_hit = false;

  std::vector<std::vector<Symbol>> cands;            // first symbol 0
  std::vector<std::vector<int>> subsets;             // k-column subsets
  std::vector<std::vector<int>> cand_keys;           // coset key per subset
  std::vector<std::vector<int>> counts;              // per subset, per coset
  long long lam;
  std::vector<int> chosen;

  SchemeSearcher(int r, int N, int d, int k, SearchBudget b, const GroupTable& g)
      : r(r), N(N), d(d), k(k), group(g), budget(b) {
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(b.max_seconds));
    const long long cosets = ipow(d, k - 1);
    lam = r / cosets;
    long long total = ipow(d, N - 1);
    if (total > 2'000'000) throw std::length_error("scheme search space too large");
    subsets = column_subsets(N, k);
    cands.reserve(total);
    std::vector<Symbol> row(N, 0);
    for (long long v = 0; v < total; ++v) {
      long long x = v;
      for (int c = N - 1; c >= 1; --c) {
        row[c] = static_cast<Symbol>(x % d);
        x /= d;
      }
      cands.push_back(row);
    }
    cand_keys.resize(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) {
      cand_keys[i].reserve(subsets.size());
      for (const auto& cols : subsets) {
        const Symbol base = cands[i][cols[0]];
        int key = 0;
        for (size_t c = 1; c < cols.size(); ++c) {
          key = key * d + group.sub(cands[i][cols[c]], base);
        }
        cand_keys[i].push_back(key);
      }
    }
    counts.assign(subsets.size(), std::vector<int>(cosets, 0));
  }

  bool fits(int ci) const {
    for (size_t s = 0; s < subsets.size(); ++s) {
      if (counts[s][cand_keys[ci][s]] >= lam) return false;
    }
    return true;
  }
  void place(int ci, int sign) {
    for (size_t s = 0; s < subsets.size(); ++s) counts[s][cand_keys[ci][s]] += sign;
  }

  bool out_of_budget() {
    if ((nodes & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline) budget_hit = true;
    if (nodes > budget.max_nodes) budget_hit = true;
    return budget_hit;
  }

  // rows non-decreasing (duplicates up to lambda are legal in a scheme;
  // the coset counts cap the multiplicity on their own)
  bool dfs(size_t start) {
    ++nodes;
    if (out_of_budget()) return false;
    if (static_cast<int>(chosen.size()) == r) return true;
    for (size_t ci = start; ci < cands.size(); ++ci) {
      if (!fits(static_cast<int>(ci))) continue;
      chosen.push_back(static_cast<int>(ci));
      place(static_cast<int>(ci), 1);
      if (dfs(ci)) return true;
      chosen.pop_back();
      place(static_cast<int>(ci), -1);
      if (budget_hit) return false;
    }
    return false;
  }
};

}  // namespace

SchemeSearchResult search_difference_scheme(int r, int N, int d, int k, SearchBudget budget,
                                            const GroupTable& group) {
  if (k < 1 || k > N) throw std::invalid_argument("strength out of range");
  const long long cosets = ipow(d, k - 1);
  if (r % cosets != 0) throw std::invalid_argument("rows not divisible by d^(k-1)");
  SchemeSearcher searcher(r, N, d, k, budget, group);
  searcher.chosen.push_back(0);  // the all-zero row
  searcher.place(0, 1);
  const bool found = searcher.dfs(0);
  SchemeSearchResult res;
  res.nodes = searcher.nodes;
  if (found) {
    SymbolMatrix rows(r, N);
    for (int i = 0; i < r; ++i) {
      for (int c = 0; c < N; ++c) rows(i, c) = searcher.cands[searcher.chosen[i]][c];
    }
    DifferenceScheme scheme{std::move(rows), d, k, group, "searched"};
    if (!verify_difference_scheme(scheme)) throw std::logic_error("search produced invalid scheme");
    res.status = SearchStatus::kFound;
    res.scheme = std::move(scheme);
  } else {
    res.status = searcher.budget_hit ? SearchStatus::kBudgetExhausted
                                     : SearchStatus::kProvenNonexistent;
  }
  return res;
}

SchemeSearchResult search_difference_scheme(int r, int N, int d, int k, SearchBudget budget) {
  return search_difference_scheme(r, N, d, k, budget, GroupTable::default_for(d));
}

DifferenceScheme conic_difference_scheme(int d) {
  int p = 0, e = 0;
  if (!is_prime_power(d, &p, &e) || p == 2 || d > 9) {
    throw std::invalid_argument("conic scheme needs an odd prime power d <= 9");
  }
  const GfTable& f = GfTable::of(d);
  // a non-square
  std::vector<bool> square(d, false);
  for (int x = 0; x < d; ++x) square[f.mul(x, x)] = true;
  Symbol delta = 0;
  for (int x = 1; x < d; ++x) {
    if (!square[x]) {
      delta = static_cast<Symbol>(x);
      break;
    }
  }
  // points of x^2 - delta y^2 = 1 (a (d+1)-arc)
  std::vector<std::pair<Symbol, Symbol>> pts;
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      Symbol lhs = f.sub(f.mul(x, x), f.mul(delta, f.mul(y, y)));
      if (lhs == 1) pts.emplace_back(static_cast<Symbol>(x), static_cast<Symbol>(y));
    }
  }
  if (static_cast<int>(pts.size()) != d + 1) throw std::logic_error("conic point count off");
  SymbolMatrix rows(d * d, d + 1);
  int i = 0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b, ++i) {
      for (int c = 0; c <= d; ++c) {
        rows(i, c) = f.add(f.mul(a, pts[c].first), f.mul(b, pts[c].second));
      }
    }
  }
  GroupTable group = (e == 1) ? GroupTable::cyclic(d) : GroupTable::elementary(d);
  DifferenceScheme scheme{std::move(rows), d, 3, group, "constructed"};
  if (!verify_difference_scheme(scheme)) {
    throw std::logic_error("conic scheme failed verification");
  }
  return scheme;
}

std::optional<DifferenceScheme> try_kernel_difference_scheme(int d, int k,
                                                             const GroupTable& group) {
  const int n = k + 1;
  if (n > 12 || ipow(d, k - 1) > 100'000) return std::nullopt;
  // units and field/ring multiplication for the functional
  const bool field = group.kind() == GroupTable::Kind::kElementary;
  const GfTable* f = field ? &GfTable::of(d) : nullptr;
  auto mul = [&](Symbol a, Symbol b) -> Symbol {
    return field ? f->mul(a, b) : static_cast<Symbol>(a * b % d);
  };
  std::vector<Symbol> units;
  for (int u = 1; u < d; ++u) {
    if (field) {
      units.push_back(static_cast<Symbol>(u));
    } else {
      for (int v = 1; v < d; ++v) {
        if (u * v % d == 1) {
          units.push_back(static_cast<Symbol>(u));
          break;
        }
      }
    }
  }
  // h = (u0, 1, 1, ..., 1, u1) patterns first, then a bounded scan
  std::vector<Symbol> h(n, 1);
  auto total = [&] {
    Symbol s = 0;
    for (Symbol x : h) s = group.add(s, x);
    return s;
  };
  bool ok = false;
  for (Symbol u0 : units) {
    for (Symbol u1 : units) {
      for (Symbol u2 : units) {
        h.assign(n, 1);
        h[0] = u0;
        h[n - 1] = u1;
        if (n > 2) h[n / 2] = u2;
        if (total() == 0) {
          ok = true;
          goto have_h;
        }
      }
    }
  }
have_h:
  if (!ok) return std::nullopt;
  // rows: w with w[0] = 0 and sum h_i w_i = 0
  std::vector<std::vector<Symbol>> rows;
  std::vector<Symbol> w(n, 0);
  const long long space = ipow(d, n - 1);
  for (long long v = 0; v < space; ++v) {
    long long x = v;
    for (int c = n - 1; c >= 1; --c) {
      w[c] = static_cast<Symbol>(x % d);
      x /= d;
    }
    Symbol s = 0;
    for (int c = 0; c < n; ++c) s = group.add(s, mul(h[c], w[c]));
    if (s == 0) rows.push_back(w);
  }
  SymbolMatrix m(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < n; ++c) m(i, c) = rows[i][c];
  }
  DifferenceScheme scheme{std::move(m), d, k, group, "constructed"};
  if (scheme.runs() != ipow(d, k - 1)) return std::nullopt;
  if (!verify_difference_scheme(scheme)) return std::nullopt;
  return scheme;
}

DifferenceScheme kernel_difference_scheme(int d, int k, const GroupTable& group) {
  auto s = try_kernel_difference_scheme(d, k, group);
  if (!s) {
    throw std::invalid_argument("no kernel scheme for these parameters; try a search or fixture");
  }
  return *s;
}

}  // namespace kuniform
