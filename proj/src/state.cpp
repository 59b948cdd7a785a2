#include "kuniform/state.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "kuniform/parallel.hpp"

namespace kuniform {

BasisKey pack_basis(const Symbol* symbols, int n) {
  if (n > 16) throw std::invalid_argument("basis string longer than 16 sites");
  BasisKey key = 0;
  for (int i = 0; i < n; ++i) key |= static_cast<BasisKey>(symbols[i] & 0xf) << (4 * (n - 1 - i));
  return key;
}

BasisKey pack_basis(const SymbolRow& row) {
  return pack_basis(row.data(), static_cast<int>(row.size()));
}

std::vector<Symbol> unpack_basis(BasisKey key, int n) {
  std::vector<Symbol> out(n);
  for (int i = 0; i < n; ++i) out[i] = static_cast<Symbol>(key >> (4 * (n - 1 - i)) & 0xf);
  return out;
}

std::string basis_string(BasisKey key, int n) {
  static const char* digits = "0123456789abcdef";
  std::string s(n, '0');
  for (int i = 0; i < n; ++i) s[i] = digits[key >> (4 * (n - 1 - i)) & 0xf];
  return s;
}

BasisKey parse_basis_string(const std::string& s) {
  BasisKey key = 0;
  for (char c : s) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else throw std::invalid_argument("bad basis character");
    key = key << 4 | static_cast<BasisKey>(v);
  }
  return key;
}

SparseState::SparseState(int sites, int dim, std::map<BasisKey, GaussianRational> terms)
    : sites_(sites), dim_(dim), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  if (terms_.empty()) throw std::invalid_argument("zero state");
  Rational n2(0);
  for (const auto& [key, amp] : terms_) n2 += abs2(amp);
  if (!n2.is_integer()) {
    throw std::logic_error("state norm^2 is not an integer under unit scaling");
  }
  scale_ = n2.num();
}

SparseState SparseState::superposition(const SymbolMatrix& rows, int dim) {
  std::map<BasisKey, GaussianRational> terms;
  for (int i = 0; i < rows.rows(); ++i) {
    BasisKey key = pack_basis(rows.row(i));
    if (!terms.emplace(key, GaussianRational(1)).second) {
      throw std::invalid_argument("duplicate rows in block");
    }
  }
  return SparseState(static_cast<int>(rows.cols()), dim, std::move(terms));
}

SparseState SparseState::basis_state(const SymbolRow& row, int dim) {
  std::map<BasisKey, GaussianRational> terms;
  terms.emplace(pack_basis(row), GaussianRational(1));
  return SparseState(static_cast<int>(row.size()), dim, std::move(terms));
}

void SparseState::canonicalize() {
  const GaussianRational lead = terms_.begin()->second;
  if (lead == GaussianRational(1)) return;
  std::map<BasisKey, GaussianRational> scaled;
  for (const auto& [key, amp] : terms_) scaled.emplace(key, amp / lead);
  *this = SparseState(sites_, dim_, std::move(scaled));
}

SparseState SparseState::shifted(int site, int shift) const {
  if (site < 0 || site >= sites_) throw std::out_of_range("site out of range");
  std::map<BasisKey, GaussianRational> terms;
  const int sh = 4 * (sites_ - 1 - site);
  for (const auto& [key, amp] : terms_) {
    Symbol s = static_cast<Symbol>(key >> sh & 0xf);
    Symbol t = static_cast<Symbol>((s + shift) % dim_);
    BasisKey nk = (key & ~(BasisKey(0xf) << sh)) | static_cast<BasisKey>(t) << sh;
    terms.emplace(nk, amp);
  }
  return SparseState(sites_, dim_, std::move(terms));
}

GaussianRational overlap_numerator(const SparseState& a, const SparseState& b) {
  GaussianRational acc;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first < ib->first) ++ia;
    else if (ib->first < ia->first) ++ib;
    else {
      acc += conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

Rational overlap_sq(const SparseState& a, const SparseState& b) {
  GaussianRational num = overlap_numerator(a, b);
  return abs2(num) / Rational(a.scale() * b.scale());
}

MixedState mixed_state(std::vector<SparseState> components) {
  if (components.empty()) throw std::invalid_argument("empty mixture");
  MixedState m;
  m.sites = components.front().sites();
  m.dim = components.front().dim();
  for (const auto& c : components) {
    if (c.sites() != m.sites || c.dim() != m.dim) {
      throw std::invalid_argument("mixture components disagree on shape");
    }
  }
  m.components = std::move(components);
  return m;
}

MixedState block_mixture(const SymbolMatrix& parent,
                         const std::vector<std::vector<int>>& blocks, int dim) {
  std::vector<SparseState> comps;
  comps.reserve(blocks.size());
  for (const auto& block : blocks) {
    SymbolMatrix rows(block.size(), parent.cols());
    for (size_t i = 0; i < block.size(); ++i) rows.row(i) = parent.row(block[i]);
    comps.push_back(SparseState::superposition(rows, dim));
  }
  return mixed_state(std::move(comps));
}

Rational ReducedDensity::trace() const {
  Rational t(0);
  for (const auto& [key, val] : entries) {
    if (key.first == key.second) {
      if (!val.im.is_zero()) throw std::logic_error("complex diagonal in reduction");
      t += val.re;
    }
  }
  return t;
}

bool ReducedDensity::is_maximally_mixed() const {
  std::int64_t want = 1;
  for (size_t i = 0; i < sites.size(); ++i) want *= dim;
  const Rational unit(1, want);
  std::int64_t diag = 0;
  for (const auto& [key, val] : entries) {
    if (key.first != key.second) return false;
    if (val != GaussianRational(unit)) return false;
    ++diag;
  }
  return diag == want;
}

namespace {

void accumulate_reduction(const SparseState& s, const std::vector<int>& sites,
                          const Rational& weight,
                          std::map<std::pair<BasisKey, BasisKey>, GaussianRational>& out) {
  const int n = s.sites();
  std::vector<int> keep = sites;
  std::vector<bool> in_keep(n, false);
  for (int p : keep) in_keep[p] = true;
  std::vector<int> rest;
  for (int p = 0; p < n; ++p) {
    if (!in_keep[p]) rest.push_back(p);
  }
  auto project = [&](BasisKey key, const std::vector<int>& positions) {
    BasisKey out_key = 0;
    for (int p : positions) out_key = out_key << 4 | (key >> (4 * (n - 1 - p)) & 0xf);
    return out_key;
  };
  // group terms by the traced-out substring
  std::unordered_map<BasisKey, std::vector<std::pair<BasisKey, const GaussianRational*>>> groups;
  groups.reserve(s.terms().size());
  for (const auto& [key, amp] : s.terms()) {
    groups[project(key, rest)].emplace_back(project(key, keep), &amp);
  }
  const Rational w = weight / Rational(s.scale());
  for (const auto& [rkey, members] : groups) {
    for (const auto& [u, amp_u] : members) {
      for (const auto& [v, amp_v] : members) {
        GaussianRational contrib = *amp_u * conj(*amp_v);
        contrib.re *= w;
        contrib.im *= w;
        auto [it, inserted] = out.emplace(std::make_pair(u, v), contrib);
        if (!inserted) it->second += contrib;
      }
    }
  }
}

std::int64_t pow_ll(std::int64_t base, int exp) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

}  // namespace

ReducedDensity reduced_density(const MixedState& m, const std::vector<int>& sites) {
  if (static_cast<int>(sites.size()) > m.sites) throw std::invalid_argument("subset too large");
  if (pow_ll(m.dim, static_cast<int>(sites.size())) > kReductionGuard) {
    throw std::length_error("reduction exceeds accumulation guard");
  }
  ReducedDensity red;
  red.sites = sites;
  red.dim = m.dim;
  const Rational weight(1, m.size());
  for (const auto& comp : m.components) accumulate_reduction(comp, sites, weight, red.entries);
  for (auto it = red.entries.begin(); it != red.entries.end();) {
    it = it->second.is_zero() ? red.entries.erase(it) : std::next(it);
  }
  return red;
}

ReducedDensity reduced_density(const SparseState& s, const std::vector<int>& sites) {
  MixedState m;
  m.sites = s.sites();
  m.dim = s.dim();
  m.components.push_back(s);
  return reduced_density(m, sites);
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
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

}  // namespace

bool is_k_uniform(const MixedState& m, int k, UniformityWitness* witness, int threads) {
  if (k < 0 || k >= m.sites) throw std::invalid_argument("k out of range");
  if (k == 0) return true;
  const auto subsets = subsets_of_size(m.sites, k);
  std::vector<char> ok(subsets.size(), 1);
  std::vector<std::optional<UniformityWitness>> wit(subsets.size());
  parallel_for(subsets.size(), threads, [&](std::size_t i) {
    ReducedDensity red = reduced_density(m, subsets[i]);
    if (!red.is_maximally_mixed()) {
      ok[i] = 0;
      if (witness) {
        UniformityWitness w;
        w.sites = subsets[i];
        // first offending entry: either a surviving off-diagonal or a bad diagonal
        std::int64_t want = pow_ll(m.dim, k);
        const GaussianRational unit{Rational(1, want)};
        for (const auto& [key, val] : red.entries) {
          if (key.first != key.second || val != unit) {
            w.row = key.first;
            w.col = key.second;
            w.value = val;
            break;
          }
        }
        wit[i] = w;
      }
    }
  });
  for (size_t i = 0; i < subsets.size(); ++i) {
    if (!ok[i]) {
      if (witness && wit[i]) *witness = *wit[i];
      return false;
    }
  }
  return true;
}

int max_uniformity(const MixedState& m, int threads) {
  int best = 0;
  for (int k = 1; k < m.sites; ++k) {
    if (pow_ll(m.dim, k) > kReductionGuard) break;
    if (!is_k_uniform(m, k, nullptr, threads)) break;  // uniformity is downward closed
    best = k;
  }
  return best;
}

Rational mixture_purity(const MixedState& m) {
  // index shared basis strings across components, then sum |<i|j>|^2 over the
  // sparse Gram matrix
  std::unordered_map<BasisKey, std::vector<std::pair<int, const GaussianRational*>>> index;
  for (int i = 0; i < m.size(); ++i) {
    for (const auto& [key, amp] : m.components[i].terms()) {
      index[key].emplace_back(i, &amp);
    }
  }
  std::map<std::pair<int, int>, GaussianRational> gram;
  for (const auto& [key, holders] : index) {
    for (const auto& [i, amp_i] : holders) {
      for (const auto& [j, amp_j] : holders) {
        if (i == j) continue;
        auto [it, inserted] = gram.emplace(std::make_pair(i, j), conj(*amp_i) * *amp_j);
        if (!inserted) it->second += conj(*amp_i) * *amp_j;
      }
    }
  }
  Rational sum(m.size());  // diagonal: <i|i> = 1
  for (const auto& [ij, num] : gram) {
    sum += abs2(num) / Rational(m.components[ij.first].scale() * m.components[ij.second].scale());
  }
  return sum / Rational(static_cast<std::int64_t>(m.size()) * m.size());
}

LoweredMixture lower_purity(const MixedState& m, int site, int shift) {
  if (shift < 1 || shift >= m.dim) throw std::invalid_argument("shift out of range");
  std::vector<SparseState> comps = m.components;
  for (const auto& c : m.components) comps.push_back(c.shifted(site, shift));
  LoweredMixture out{mixed_state(std::move(comps)), false, Rational(0)};
  const int n = m.size();
  for (int i = 0; i < n && !out.overlap_detected; ++i) {
    for (int j = n; j < 2 * n; ++j) {
      if (!overlap_numerator(out.state.components[i], out.state.components[j]).is_zero()) {
        out.overlap_detected = true;
        break;
      }
    }
  }
  out.measured_purity = mixture_purity(out.state);
  return out;
}

OperatorMatrix adjoint_of(const OperatorMatrix& m) {
  OperatorMatrix out(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(j, i) = conj(m(i, j));
  return out;
}

Rational trace_of_product(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) throw std::invalid_argument("shape mismatch");
  GaussianRational acc;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
  if (!acc.im.is_zero()) throw std::logic_error("trace of product not real");
  return acc.re;
}

OperatorMatrix reduced_density_dense(const OperatorMatrix& rho, int num_qubits,
                                     const std::vector<int>& sites) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("dimension mismatch");
  const int k = static_cast<int>(sites.size());
  std::vector<bool> keep(num_qubits, false);
  for (int p : sites) keep[p] = true;
  std::vector<int> rest;
  for (int p = 0; p < num_qubits; ++p) {
    if (!keep[p]) rest.push_back(p);
  }
  const Eigen::Index out_dim = Eigen::Index(1) << k;
  const Eigen::Index rest_dim = Eigen::Index(1) << rest.size();
  auto expand = [&](Eigen::Index sub, Eigen::Index env) {
    Eigen::Index full = 0;
    for (int i = 0; i < k; ++i) {
      if (sub >> (k - 1 - i) & 1) full |= Eigen::Index(1) << (num_qubits - 1 - sites[i]);
    }
    for (size_t i = 0; i < rest.size(); ++i) {
      if (env >> (rest.size() - 1 - i) & 1) full |= Eigen::Index(1) << (num_qubits - 1 - rest[i]);
    }
    return full;
  };
  OperatorMatrix out = OperatorMatrix::Constant(out_dim, out_dim, GaussianRational());
  for (Eigen::Index u = 0; u < out_dim; ++u) {
    for (Eigen::Index v = 0; v < out_dim; ++v) {
      GaussianRational acc;
      for (Eigen::Index w = 0; w < rest_dim; ++w) acc += rho(expand(u, w), expand(v, w));
      out(u, v) = acc;
    }
  }
  return out;
}

OperatorMatrix dense_mixture(const MixedState& m) {
  if (m.dim != 2) throw std::invalid_argument("dense mixture is qubit-only");
  const Eigen::Index dim = Eigen::Index(1) << m.sites;
  OperatorMatrix rho = OperatorMatrix::Constant(dim, dim, GaussianRational());
  const Rational w(1, m.size());
  for (const auto& comp : m.components) {
    const Rational ws = w / Rational(comp.scale());
    for (const auto& [ku, au] : comp.terms()) {
      for (const auto& [kv, av] : comp.terms()) {
        GaussianRational val = au * conj(av);
        val.re *= ws;
        val.im *= ws;
        // packed nibble keys to dense bit indices
        Eigen::Index ui = 0, vi = 0;
        for (int p = 0; p < m.sites; ++p) {
          ui = ui << 1 | static_cast<Eigen::Index>(ku >> (4 * (m.sites - 1 - p)) & 1);
          vi = vi << 1 | static_cast<Eigen::Index>(kv >> (4 * (m.sites - 1 - p)) & 1);
        }
        rho(ui, vi) += val;
      }
    }
  }
  return rho;
}

}  // namespace kuniform
