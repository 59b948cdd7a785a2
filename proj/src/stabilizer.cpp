#include "kuniform/stabilizer.hpp"

#include <bit>
#include <stdexcept>

namespace kuniform {

GeneratorMatrix GeneratorMatrix::checked(SymbolMatrix entries) {
  // m > N is representable (the independence check must be able to reject
  // it); the synthesis path enforces m <= N
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      if (entries(i, j) > 3) throw std::invalid_argument("generator entry outside GF(4)");
    }
  }
  return GeneratorMatrix{std::move(entries)};
}

PauliWord GeneratorMatrix::row_word(int i) const {
  PauliWord w;
  w.labels = entries.row(i);
  return w;
}

bool check_commuting(const GeneratorMatrix& g) {
  for (int i = 0; i < g.generators(); ++i) {
    for (int j = i + 1; j < g.generators(); ++j) {
      if (!words_commute(g.row_word(i), g.row_word(j))) return false;
    }
  }
  return true;
}

namespace {

// visits all 2^m subset label-sums in Gray-code order; fn(mask, row) with the
// empty subset skipped
template <typename Fn>
void for_each_subset_sum(const GeneratorMatrix& g, Fn&& fn) {
  const int m = g.generators();
  SymbolRow acc = SymbolRow::Zero(g.qubits());
  std::uint32_t prev = 0;
  for (std::uint32_t n = 1; n < (1u << m); ++n) {
    std::uint32_t gray = n ^ (n >> 1);
    int flip = std::countr_zero(gray ^ prev);
    prev = gray;
    for (int c = 0; c < g.qubits(); ++c) acc[c] = gf4_add(acc[c], g.entries(flip, c));
    fn(gray, acc);
  }
}

int row_weight(const SymbolRow& row) {
  int w = 0;
  for (int c = 0; c < row.size(); ++c) w += row[c] != 0;
  return w;
}

}  // namespace

bool check_independence(const GeneratorMatrix& g) {
  if (g.generators() > 20) throw std::length_error("too many generators");
  bool ok = true;
  for_each_subset_sum(g, [&](std::uint32_t, const SymbolRow& row) {
    if (row_weight(row) == 0) ok = false;
  });
  return ok;
}

bool check_uniformity(const GeneratorMatrix& g, int k) {
  if (k < 1 || k >= g.qubits()) throw std::invalid_argument("k out of range");
  bool ok = true;
  for_each_subset_sum(g, [&](std::uint32_t, const SymbolRow& row) {
    if (row_weight(row) < k + 1) ok = false;
  });
  return ok;
}

int max_k(const GeneratorMatrix& g) {
  if (!check_independence(g)) throw std::invalid_argument("rows are not independent");
  int wmin = g.qubits() + 1;
  for_each_subset_sum(g, [&](std::uint32_t, const SymbolRow& row) {
    wmin = std::min(wmin, row_weight(row));
  });
  return wmin - 1;
}

std::vector<PauliWord> subset_words(const GeneratorMatrix& g) {
  std::vector<PauliWord> words;
  words.reserve(std::size_t(1) << g.generators());
  PauliWord acc;
  acc.labels = SymbolRow::Zero(g.qubits());
  words.push_back(acc);
  std::uint32_t prev = 0;
  for (std::uint32_t n = 1; n < (1u << g.generators()); ++n) {
    std::uint32_t gray = n ^ (n >> 1);
    int flip = std::countr_zero(gray ^ prev);
    prev = gray;
    acc = word_product(acc, g.row_word(flip));
    words.push_back(acc);
  }
  return words;
}

namespace {

// W|x> = i^e |y>, basis index bit p = qubit p (leftmost qubit = highest bit)
struct WordAction {
  std::uint64_t flip_mask = 0;
  // phase exponent: base + sum over set bits of x of per-qubit increments
  int base = 0;
  std::uint64_t phase2_mask = 0;  // qubits contributing i^{2 x_p} (labels 2 and 3)
};

WordAction analyze(const PauliWord& w) {
  WordAction a;
  a.base = w.phase_exp;
  const int n = w.size();
  for (int p = 0; p < n; ++p) {
    const std::uint64_t bit = std::uint64_t(1) << (n - 1 - p);
    switch (w.labels[p]) {
      case 1: a.flip_mask |= bit; break;
      case 2:
        a.flip_mask |= bit;
        a.base += 1;
        a.phase2_mask |= bit;
        break;
      case 3: a.phase2_mask |= bit; break;
      default: break;
    }
  }
  return a;
}

int action_phase(const WordAction& a, std::uint64_t x) {
  return (a.base + 2 * std::popcount(x & a.phase2_mask)) % 4;
}

void require_valid(const GeneratorMatrix& g) {
  if (g.qubits() > kDenseQubitGuard) throw std::length_error("dense path limited to 12 qubits");
  if (g.generators() == 0) return;  // maximally mixed state
  if (g.generators() > g.qubits()) throw std::invalid_argument("more generators than qubits");
  if (!check_commuting(g)) throw std::invalid_argument("generators do not commute");
  if (!check_independence(g)) throw std::invalid_argument("generators are not independent");
  if (max_k(g) < 1) throw std::invalid_argument("generators fail the uniformity condition");
}

}  // namespace

OperatorMatrix synthesize_density(const GeneratorMatrix& g) {
  require_valid(g);
  const int n = g.qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  OperatorMatrix rho = OperatorMatrix::Constant(dim, dim, GaussianRational());
  const Rational unit(1, std::int64_t(dim));
  for (const PauliWord& w : subset_words(g)) {
    const WordAction a = analyze(w);
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
      GaussianRational val = GaussianRational::unit_power(action_phase(a, x));
      val.re *= unit;
      val.im *= unit;
      rho(static_cast<Eigen::Index>(x ^ a.flip_mask), static_cast<Eigen::Index>(x)) += val;
    }
  }
  return rho;
}

Rational purity(const OperatorMatrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("purity of non-square operator");
  return trace_of_product(rho, rho);
}

std::vector<SparseState> pure_decomposition(const GeneratorMatrix& g) {
  require_valid(g);
  const int n = g.qubits();
  const std::uint64_t dim = std::uint64_t(1) << n;
  std::vector<WordAction> actions;
  for (const PauliWord& w : subset_words(g)) actions.push_back(analyze(w));

  std::vector<SparseState> states;
  std::vector<bool> covered(dim, false);
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (covered[x]) continue;
    // P|x> with P = prod (I + G_i): sum of all subset words applied to |x>
    std::map<BasisKey, GaussianRational> terms;
    for (const WordAction& a : actions) {
      std::uint64_t y = x ^ a.flip_mask;
      GaussianRational amp = GaussianRational::unit_power(action_phase(a, x));
      // expand bits to packed nibbles
      BasisKey key = 0;
      for (int p = 0; p < n; ++p) key |= (y >> (n - 1 - p) & 1) << (4 * (n - 1 - p));
      auto [it, inserted] = terms.emplace(key, amp);
      if (!inserted) it->second += amp;
    }
    for (auto it = terms.begin(); it != terms.end();) {
      it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }
    if (terms.empty()) continue;  // annihilated basis vector
    for (const auto& [key, amp] : terms) {
      std::uint64_t y = 0;
      for (int p = 0; p < n; ++p) y |= (key >> (4 * (n - 1 - p)) & 1) << (n - 1 - p);
      covered[y] = true;
    }
    SparseState state(n, 2, std::move(terms));
    state.canonicalize();
    states.push_back(std::move(state));
  }
  const std::size_t expected = std::size_t(1) << (n - g.generators());
  if (states.size() != expected) throw std::logic_error("unexpected decomposition size");
  return states;
}

}  // namespace kuniform
