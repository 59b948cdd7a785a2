#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "kuniform/construct.hpp"
#include "kuniform/oa.hpp"
#include "kuniform/scheme.hpp"
#include "kuniform/stabilizer.hpp"
#include "kuniform/state.hpp"

namespace kuniform {

// Newline-terminated ASCII formats; '#' starts a comment line. Writers emit
// the canonical form (single spaces, no comments), so write->parse is the
// identity on in-memory objects.
//
//   gen <m> <N>                      then m rows of N digits in {0..3}
//   oa <r> <N> <d> <k>               then r rows of N symbols
//   ds <r> <N> <d> <k> [group]       group "z<d>" (default) or "gf<q>"
//   partition <m> <k1>               then m stanzas: "block <i>" + row indices
//   code <q> <n> <kappa>             then kappa generator rows,
//                                    then "claims strength=<t> md=<x>"
//   state <d> <N> <m>                then per component "component <i> <s>"
//                                    + s lines "<basis> <re> <im>" with
//                                    rational amplitudes relative to 1/sqrt(s)

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GeneratorMatrix read_generator(std::istream& in);
void write_generator(std::ostream& out, const GeneratorMatrix& g);

OrthogonalArray read_oa(std::istream& in);
void write_oa(std::ostream& out, const OrthogonalArray& a);

DifferenceScheme read_scheme(std::istream& in);
void write_scheme(std::ostream& out, const DifferenceScheme& d);

OrthogonalPartition read_partition(std::istream& in);
void write_partition(std::ostream& out, const OrthogonalPartition& p);

LinearCodeSpec read_code(std::istream& in);
void write_code(std::ostream& out, const LinearCodeSpec& c);

MixedState read_state(std::istream& in);
void write_state(std::ostream& out, const MixedState& m);

// file helpers (throw ParseError with the path on failure)
GeneratorMatrix load_generator(const std::string& path);
OrthogonalArray load_oa(const std::string& path);
DifferenceScheme load_scheme(const std::string& path);
OrthogonalPartition load_partition(const std::string& path);
LinearCodeSpec load_code(const std::string& path);
MixedState load_state(const std::string& path);
void save_text(const std::string& path, const std::string& text);

// fixture directory: KUNIFORM_FIXTURES env var, else the built-in default
std::string fixture_dir();
std::string fixture_path(const std::string& name);
bool fixture_exists(const std::string& name);

// provenance-tagged existence facts (oa_existence.tsv):
//   nonexistent <r> <N> <d> <k> <source>
//   minruns <N> <d> <k> <r> <source>
struct ExistenceFacts {
  struct Key {
    long long runs;
    int columns, symbols, strength;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::string> nonexistent;                    // -> source
  std::map<std::tuple<int, int, int>, std::pair<long long, std::string>> min_runs;

  bool known_nonexistent(long long r, int N, int d, int k) const;
  static ExistenceFacts load(const std::string& path);
  static const ExistenceFacts& builtin();  // fixture file, cached
};

}  // namespace kuniform
