#include "kuniform/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kuniform {

namespace {

// next content line, comments and blank lines skipped
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  return false;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long long to_int(const std::string& s) {
  size_t used = 0;
  long long v = std::stoll(s, &used);
  if (used != s.size()) throw ParseError("bad integer: " + s);
  return v;
}

SymbolMatrix read_rows(std::istream& in, long long r, int n, int limit) {
  if (r > (1 << 20)) throw ParseError("row count beyond the enumeration guard");
  SymbolMatrix rows(r, n);
  std::string line;
  for (long long i = 0; i < r; ++i) {
    if (!next_line(in, line)) throw ParseError("truncated: expected " + std::to_string(r) + " rows");
    auto toks = tokens_of(line);
    // symbols either space-separated or one compact digit string
    if (static_cast<int>(toks.size()) == 1 && n > 1 && static_cast<int>(toks[0].size()) == n &&
        limit <= 10) {
      for (int c = 0; c < n; ++c) {
        int v = toks[0][c] - '0';
        if (v < 0 || v >= limit) throw ParseError("symbol out of range");
        rows(i, c) = static_cast<Symbol>(v);
      }
      continue;
    }
    if (static_cast<int>(toks.size()) != n) throw ParseError("wrong column count in row");
    for (int c = 0; c < n; ++c) {
      long long v = to_int(toks[c]);
      if (v < 0 || v >= limit) throw ParseError("symbol out of range");
      rows(i, c) = static_cast<Symbol>(v);
    }
  }
  return rows;
}

void write_rows(std::ostream& out, const SymbolMatrix& rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      if (c) out << ' ';
      out << static_cast<int>(rows(i, c));
    }
    out << '\n';
  }
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(to_int(s));
  return Rational(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
}

}  // namespace

GeneratorMatrix read_generator(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty generator file");
  auto toks = tokens_of(line);
  if (toks.size() != 3 || toks[0] != "gen") throw ParseError("expected 'gen <m> <N>'");
  long long m = to_int(toks[1]), n = to_int(toks[2]);
  if (m < 0 || n < 1 || m > n || n > 32) throw ParseError("bad generator dimensions");
  return GeneratorMatrix::checked(read_rows(in, m, static_cast<int>(n), 4));
}

void write_generator(std::ostream& out, const GeneratorMatrix& g) {
  out << "gen " << g.generators() << ' ' << g.qubits() << '\n';
  write_rows(out, g.entries);
}

OrthogonalArray read_oa(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty array file");
  auto toks = tokens_of(line);
  if (toks.size() != 5 || toks[0] != "oa") throw ParseError("expected 'oa <r> <N> <d> <k>'");
  long long r = to_int(toks[1]), n = to_int(toks[2]), d = to_int(toks[3]), k = to_int(toks[4]);
  if (r < 1 || n < 1 || n > 32 || d < 2 || d > 16 || k < 0 || k > n) {
    throw ParseError("bad array header");
  }
  try {
    return OrthogonalArray::checked(read_rows(in, r, static_cast<int>(n), static_cast<int>(d)),
                                    static_cast<int>(d), static_cast<int>(k));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_oa(std::ostream& out, const OrthogonalArray& a) {
  out << "oa " << a.runs() << ' ' << a.columns() << ' ' << a.symbols << ' '
      << a.claimed_strength << '\n';
  write_rows(out, a.rows);
}

DifferenceScheme read_scheme(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty scheme file");
  auto toks = tokens_of(line);
  if ((toks.size() != 5 && toks.size() != 6) || toks[0] != "ds") {
    throw ParseError("expected 'ds <r> <N> <d> <k> [group]'");
  }
  long long r = to_int(toks[1]), n = to_int(toks[2]), d = to_int(toks[3]), k = to_int(toks[4]);
  if (r < 1 || n < 1 || n > 32 || d < 2 || d > 16 || k < 1 || k > n) {
    throw ParseError("bad scheme header");
  }
  GroupTable group = GroupTable::default_for(static_cast<int>(d));
  if (toks.size() == 6) {
    try {
      group = GroupTable::named(toks[5]);
    } catch (const std::exception&) {
      throw ParseError("bad group name: " + toks[5]);
    }
    if (group.order() != d) throw ParseError("group order does not match symbol count");
  }
  DifferenceScheme scheme{read_rows(in, r, static_cast<int>(n), static_cast<int>(d)),
                          static_cast<int>(d), static_cast<int>(k), group, "fixture"};
  return scheme;
}

void write_scheme(std::ostream& out, const DifferenceScheme& d) {
  out << "ds " << d.runs() << ' ' << d.columns() << ' ' << d.symbols << ' ' << d.strength;
  if (d.group.kind() != GroupTable::Kind::kCyclic) out << ' ' << d.group.name();
  out << '\n';
  write_rows(out, d.rows);
}

OrthogonalPartition read_partition(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty partition file");
  auto toks = tokens_of(line);
  if (toks.size() != 3 || toks[0] != "partition") throw ParseError("expected 'partition <m> <k1>'");
  long long m = to_int(toks[1]), k1 = to_int(toks[2]);
  if (m < 1 || k1 < 0) throw ParseError("bad partition header");
  OrthogonalPartition p;
  p.block_strength = static_cast<int>(k1);
  long long current = -1;
  while (next_line(in, line)) {
    auto t = tokens_of(line);
    if (t.size() == 2 && t[0] == "block") {
      if (to_int(t[1]) != current + 1) throw ParseError("blocks out of order");
      ++current;
      p.blocks.emplace_back();
      continue;
    }
    if (t.size() != 1 || current < 0) throw ParseError("unexpected line in partition");
    p.blocks[current].push_back(static_cast<int>(to_int(t[0])));
  }
  if (current + 1 != m) throw ParseError("block count mismatch");
  return p;
}

void write_partition(std::ostream& out, const OrthogonalPartition& p) {
  out << "partition " << p.size() << ' ' << p.block_strength << '\n';
  for (int b = 0; b < p.size(); ++b) {
    out << "block " << b << '\n';
    for (int idx : p.blocks[b]) out << idx << '\n';
  }
}

LinearCodeSpec read_code(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty code file");
  auto toks = tokens_of(line);
  if (toks.size() != 4 || toks[0] != "code") throw ParseError("expected 'code <q> <n> <kappa>'");
  LinearCodeSpec spec;
  spec.q = static_cast<int>(to_int(toks[1]));
  spec.length = static_cast<int>(to_int(toks[2]));
  spec.dimension = static_cast<int>(to_int(toks[3]));
  if (spec.q < 2 || spec.q > 16 || spec.length < 1 || spec.length > 32 || spec.dimension < 1) {
    throw ParseError("bad code header");
  }
  spec.generator = read_rows(in, spec.dimension, spec.length, spec.q);
  if (!next_line(in, line)) throw ParseError("missing claims line");
  auto claims = tokens_of(line);
  if (claims.size() != 3 || claims[0] != "claims" || claims[1].rfind("strength=", 0) != 0 ||
      claims[2].rfind("md=", 0) != 0) {
    throw ParseError("expected 'claims strength=<t> md=<x>'");
  }
  spec.claimed_strength = static_cast<int>(to_int(claims[1].substr(9)));
  spec.claimed_md = static_cast<int>(to_int(claims[2].substr(3)));
  spec.provenance = "fixture";
  return spec;
}

void write_code(std::ostream& out, const LinearCodeSpec& c) {
  out << "code " << c.q << ' ' << c.length << ' ' << c.dimension << '\n';
  write_rows(out, c.generator);
  out << "claims strength=" << c.claimed_strength << " md=" << c.claimed_md << '\n';
}

MixedState read_state(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty state file");
  auto toks = tokens_of(line);
  if (toks.size() != 4 || toks[0] != "state") throw ParseError("expected 'state <d> <N> <m>'");
  const int d = static_cast<int>(to_int(toks[1]));
  const int n = static_cast<int>(to_int(toks[2]));
  const long long m = to_int(toks[3]);
  if (d < 2 || d > 16 || n < 1 || n > 16 || m < 1) throw ParseError("bad state header");
  std::vector<SparseState> comps;
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line)) throw ParseError("truncated state file");
    auto head = tokens_of(line);
    if (head.size() != 3 || head[0] != "component" || to_int(head[1]) != i) {
      throw ParseError("expected 'component " + std::to_string(i) + " <s>'");
    }
    const long long terms = to_int(head[2]);
    std::map<BasisKey, GaussianRational> amp;
    for (long long t = 0; t < terms; ++t) {
      if (!next_line(in, line)) throw ParseError("truncated component");
      auto tt = tokens_of(line);
      if (tt.size() != 3 || static_cast<int>(tt[0].size()) != n) {
        throw ParseError("bad term line");
      }
      GaussianRational a{parse_rational(tt[1]), parse_rational(tt[2])};
      if (!amp.emplace(parse_basis_string(tt[0]), a).second) {
        throw ParseError("duplicate basis string");
      }
    }
    comps.emplace_back(n, d, std::move(amp));
  }
  return mixed_state(std::move(comps));
}

void write_state(std::ostream& out, const MixedState& m) {
  out << "# amplitudes are relative to the 1/sqrt(s) normalization of each component\n";
  out << "state " << m.dim << ' ' << m.sites << ' ' << m.size() << '\n';
  for (int i = 0; i < m.size(); ++i) {
    const auto& comp = m.components[i];
    out << "component " << i << ' ' << comp.scale() << '\n';
    for (const auto& [key, amp] : comp.terms()) {
      out << basis_string(key, m.sites) << ' ' << amp.re.str() << ' ' << amp.im.str() << '\n';
    }
  }
}

namespace {

template <typename T, typename Reader>
T load_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

GeneratorMatrix load_generator(const std::string& path) {
  return load_file<GeneratorMatrix>(path, [](std::istream& in) { return read_generator(in); });
}
OrthogonalArray load_oa(const std::string& path) {
  return load_file<OrthogonalArray>(path, [](std::istream& in) { return read_oa(in); });
}
DifferenceScheme load_scheme(const std::string& path) {
  auto d = load_file<DifferenceScheme>(path, [](std::istream& in) { return read_scheme(in); });
  d.provenance = "fixture:" + path;
  return d;
}
OrthogonalPartition load_partition(const std::string& path) {
  return load_file<OrthogonalPartition>(path,
                                        [](std::istream& in) { return read_partition(in); });
}
LinearCodeSpec load_code(const std::string& path) {
  auto c = load_file<LinearCodeSpec>(path, [](std::istream& in) { return read_code(in); });
  c.provenance = "fixture:" + path;
  return c;
}
MixedState load_state(const std::string& path) {
  return load_file<MixedState>(path, [](std::istream& in) { return read_state(in); });
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

#ifndef KUNIFORM_DEFAULT_FIXTURE_DIR
#define KUNIFORM_DEFAULT_FIXTURE_DIR "fixtures"
#endif

std::string fixture_dir() {
  if (const char* env = std::getenv("KUNIFORM_FIXTURES")) return env;
  return KUNIFORM_DEFAULT_FIXTURE_DIR;
}

std::string fixture_path(const std::string& name) { return fixture_dir() + "/" + name; }

bool fixture_exists(const std::string& name) {
  std::ifstream in(fixture_path(name));
  return static_cast<bool>(in);
}

bool ExistenceFacts::known_nonexistent(long long r, int N, int d, int k) const {
  return nonexistent.count(Key{r, N, d, k}) > 0;
}

ExistenceFacts ExistenceFacts::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  ExistenceFacts facts;
  std::string line;
  while (next_line(in, line)) {
    auto t = tokens_of(line);
    if (t.size() == 6 && t[0] == "nonexistent") {
      facts.nonexistent[Key{to_int(t[1]), static_cast<int>(to_int(t[2])),
                            static_cast<int>(to_int(t[3])), static_cast<int>(to_int(t[4]))}] =
          t[5];
    } else if (t.size() == 6 && t[0] == "minruns") {
      facts.min_runs[{static_cast<int>(to_int(t[1])), static_cast<int>(to_int(t[2])),
                      static_cast<int>(to_int(t[3]))}] = {to_int(t[4]), t[5]};
    } else {
      throw ParseError("bad existence fact: " + line);
    }
  }
  return facts;
}

const ExistenceFacts& ExistenceFacts::builtin() {
  static ExistenceFacts facts = ExistenceFacts::load(fixture_path("oa_existence.tsv"));
  return facts;
}

}  // namespace kuniform
