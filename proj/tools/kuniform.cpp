#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kuniform/catalog.hpp"
#include "kuniform/construct.hpp"
#include "kuniform/io.hpp"
#include "kuniform/parallel.hpp"
#include "kuniform/stabilizer.hpp"
#include "kuniform/state.hpp"

using namespace kuniform;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

int run_verify_gen(const std::string& file, int want_k, bool quantum, int threads) {
  GeneratorMatrix g = load_generator(file);
  const bool commuting = check_commuting(g);
  const bool independent = commuting && check_independence(g);
  std::cout << "condition (a) commuting:    " << (commuting ? "PASS" : "FAIL") << '\n';
  std::cout << "condition (b) independence: " << (independent ? "PASS" : "FAIL") << '\n';
  if (!commuting || !independent) return kExitVerifyFail;
  const int k = max_k(g);
  std::cout << "condition (c) max k:        " << k << '\n';
  if (want_k > 0) {
    const bool ok = check_uniformity(g, want_k);
    std::cout << "requested k=" << want_k << ":             " << (ok ? "PASS" : "FAIL") << '\n';
    if (!ok) return kExitVerifyFail;
  }
  if (k < 1) return kExitVerifyFail;
  const Rational expect(1, std::int64_t(1) << (g.qubits() - g.generators()));
  std::cout << "purity 2^(m-N):             " << expect.str() << '\n';
  if (quantum) {
    OperatorMatrix rho = synthesize_density(g);
    const Rational p = purity(rho);
    std::cout << "measured Tr(rho^2):         " << p.str() << '\n';
    if (p != expect) return kExitVerifyFail;
    const auto subsets = column_subsets(g.qubits(), k);
    std::vector<char> ok(subsets.size(), 1);
    parallel_for(subsets.size(), threads, [&](std::size_t i) {
      OperatorMatrix red = reduced_density_dense(rho, g.qubits(), subsets[i]);
      const GaussianRational unit{Rational(1, red.rows())};
      for (Eigen::Index r = 0; r < red.rows(); ++r) {
        for (Eigen::Index c = 0; c < red.cols(); ++c) {
          if (red(r, c) != ((r == c) ? unit : GaussianRational())) {
            ok[i] = 0;
            return;
          }
        }
      }
    });
    for (char o : ok) {
      if (!o) {
        std::cout << "reductions:                 FAIL\n";
        return kExitVerifyFail;
      }
    }
    std::cout << "reductions:                 all " << subsets.size() << " equal I/2^" << k
              << '\n';
  }
  return kExitOk;
}

int run_verify_oa(const std::string& file, int strength, int md, int irredundant, int threads) {
  OrthogonalArray a = load_oa(file);
  int code = kExitOk;
  const int measured = max_strength(a.rows, a.symbols);
  std::cout << "runs " << a.runs() << "  columns " << a.columns() << "  symbols " << a.symbols
            << '\n';
  std::cout << "measured strength: " << measured << " (declared " << a.claimed_strength << ")\n";
  auto mdv = min_hamming_distance(a.rows);
  std::cout << "minimal distance:  " << (mdv ? std::to_string(*mdv) : "INF") << '\n';
  if (strength >= 0 && !verify_strength(a.rows, a.symbols, strength, threads)) {
    std::cout << "strength " << strength << ": FAIL\n";
    code = kExitVerifyFail;
  }
  if (md >= 0 && !(mdv ? *mdv >= md : true)) {
    std::cout << "md >= " << md << ": FAIL\n";
    code = kExitVerifyFail;
  }
  if (irredundant >= 0) {
    try {
      if (!is_irredundant(a, irredundant)) {
        std::cout << "irredundant k=" << irredundant << ": FAIL\n";
        code = kExitVerifyFail;
      }
    } catch (const std::invalid_argument& e) {
      std::cout << "irredundant k=" << irredundant << ": FAIL (" << e.what() << ")\n";
      code = kExitVerifyFail;
    }
  }
  std::cout << (code == kExitOk ? "PASS\n" : "FAIL\n");
  return code;
}

int run_verify_ds(const std::string& file) {
  DifferenceScheme d = load_scheme(file);
  const bool ok = verify_difference_scheme(d);
  std::cout << "scheme " << d.runs() << 'x' << d.columns() << " over " << d.group.name()
            << " strength " << d.strength << ": " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFail;
}

int report_state(const MixedState& m, int check_k, const std::string& export_path, int threads) {
  const Rational p = mixture_purity(m);
  std::cout << "components: " << m.size() << "  sites: " << m.sites << "  dim: " << m.dim << '\n';
  std::cout << "purity: " << p.str() << '\n';
  int uniformity;
  if (check_k > 0) {
    UniformityWitness witness;
    const bool ok = is_k_uniform(m, check_k, &witness, threads);
    uniformity = ok ? check_k : -1;
    std::cout << "k=" << check_k << " uniform: " << (ok ? "yes" : "no") << '\n';
    if (!ok) {
      std::cout << "witness subset:";
      for (int s : witness.sites) std::cout << ' ' << s;
      std::cout << "  entry (" << basis_string(witness.row, check_k) << ','
                << basis_string(witness.col, check_k) << ") = " << witness.value.str() << '\n';
      return kExitVerifyFail;
    }
  } else {
    uniformity = max_uniformity(m, threads);
    std::cout << "max uniformity: " << uniformity << '\n';
  }
  if (!export_path.empty()) {
    std::ostringstream buf;
    write_state(buf, m);
    save_text(export_path, buf.str());
    std::cout << "wrote " << export_path << '\n';
  }
  return kExitOk;
}

int run_reproduce(const std::string& table, const std::string& format, int threads) {
  ReproductionOptions opts;
  opts.threads = threads;
  std::vector<ReproductionRow> rows;
  if (table == "all") {
    for (const char* t : {"qubit", "1", "2"}) {
      auto part = reproduce_table(t, opts);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  } else {
    rows = reproduce_table(table, opts);
  }
  std::cout << (format == "tsv" ? format_rows_tsv(rows) : format_rows_text(rows));
  return has_mismatch(rows) ? kExitVerifyFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construction and exact verification of k-uniform mixed states"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "worker threads (results are identical at any count)")
      ->capture_default_str();

  auto* vg = app.add_subcommand("verify-gen", "check a GF(4) generator matrix");
  std::string vg_file;
  int vg_k = 0;
  bool vg_quantum = false;
  vg->add_option("file", vg_file)->required();
  vg->add_option("--k", vg_k, "also require uniformity k");
  vg->add_flag("--quantum", vg_quantum, "synthesize rho and check purity and reductions");

  auto* vo = app.add_subcommand("verify-oa", "measure an orthogonal array");
  std::string vo_file;
  int vo_strength = -1, vo_md = -1, vo_irr = -1;
  vo->add_option("file", vo_file)->required();
  vo->add_option("--strength", vo_strength, "require strength t");
  vo->add_option("--md", vo_md, "require minimal distance >= x");
  vo->add_option("--irredundant", vo_irr, "require irredundancy at k");

  auto* vd = app.add_subcommand("verify-ds", "check a difference scheme");
  std::string vd_file;
  vd->add_option("file", vd_file)->required();

  auto* st = app.add_subcommand("state", "build a mixed state and verify it");
  std::string st_oa, st_part, st_scheme, st_gen, st_export;
  int st_check_k = 0;
  st->add_option("--from-partition", st_oa, "orthogonal array file (with --partition)");
  st->add_option("--partition", st_part, "partition file");
  st->add_option("--from-scheme", st_scheme, "difference scheme file");
  st->add_option("--from-gen", st_gen, "generator matrix file");
  st->add_option("--check-k", st_check_k, "certify k-uniformity instead of scanning");
  st->add_option("--export", st_export, "write the state file here");

  auto* rp = app.add_subcommand("reproduce", "run the construction catalog");
  std::string rp_table = "all", rp_format = "text";
  rp->add_option("--table", rp_table, "1 (qutrit), 2 (ququart), qubit, or all")
      ->capture_default_str();
  rp->add_option("--format", rp_format, "text or tsv")->capture_default_str();

  auto* se = app.add_subcommand("search", "backtracking searches");
  se->require_subcommand(1);
  se->fallthrough();
  auto* se_ds = se->add_subcommand("ds", "search a difference scheme");
  int ds_r = 0, ds_n = 0, ds_d = 0, ds_k = 0;
  std::string ds_group, ds_out;
  double se_seconds = 30.0;
  std::uint64_t se_nodes = 50'000'000;
  se_ds->add_option("r", ds_r)->required();
  se_ds->add_option("N", ds_n)->required();
  se_ds->add_option("d", ds_d)->required();
  se_ds->add_option("k", ds_k)->required();
  se_ds->add_option("--group", ds_group, "z<d> (default) or gf<q>");
  se_ds->add_option("--out", ds_out, "write the scheme here");
  auto* se_pt = se->add_subcommand("partition", "search an orthogonal partition");
  std::string pt_file, pt_out;
  int pt_m = 0, pt_k = 0, pt_k1 = -1;
  se_pt->add_option("file", pt_file)->required();
  se_pt->add_option("m", pt_m)->required();
  se_pt->add_option("k", pt_k)->required();
  se_pt->add_option("--k1", pt_k1, "require block strength k1");
  se_pt->add_option("--out", pt_out, "write the partition here");
  se->add_option("--budget-seconds", se_seconds)->capture_default_str();
  se->add_option("--budget-nodes", se_nodes)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*vg) return run_verify_gen(vg_file, vg_k, vg_quantum, threads);
    if (*vo) return run_verify_oa(vo_file, vo_strength, vo_md, vo_irr, threads);
    if (*vd) return run_verify_ds(vd_file);
    if (*st) {
      MixedState m = [&] {
        if (!st_gen.empty()) {
          GeneratorMatrix g = load_generator(st_gen);
          return mixed_state(pure_decomposition(g));
        }
        if (!st_scheme.empty()) {
          DifferenceScheme d = load_scheme(st_scheme);
          SchemeBlocks blocks = scheme_to_mixed_state_blocks(d);
          PartitionCertificate rep = certify_partition(blocks.parent, blocks.partition, d.strength);
          if (!rep.pass()) throw std::runtime_error("scheme blocks fail the certificate checks");
          return block_mixture(blocks.parent.rows, blocks.partition.blocks, d.symbols);
        }
        if (!st_oa.empty()) {
          if (st_part.empty()) throw std::runtime_error("--from-partition needs --partition");
          OrthogonalArray a = load_oa(st_oa);
          OrthogonalPartition p = load_partition(st_part);
          PartitionCertificate rep = certify_partition(a, p, a.claimed_strength);
          if (!rep.pass()) throw std::runtime_error("partition fails the certificate checks");
          if (p.block_strength > 0 && !verify_partition(a, p)) {
            throw std::runtime_error("blocks miss their declared strength");
          }
          return block_mixture(a.rows, p.blocks, a.symbols);
        }
        throw std::runtime_error("choose --from-gen, --from-scheme or --from-partition");
      }();
      return report_state(m, st_check_k, st_export, threads);
    }
    if (*rp) return run_reproduce(rp_table, rp_format, threads);
    if (*se_ds) {
      GroupTable group = ds_group.empty() ? GroupTable::default_for(ds_d)
                                          : GroupTable::named(ds_group);
      SchemeSearchResult res =
          search_difference_scheme(ds_r, ds_n, ds_d, ds_k, {se_nodes, se_seconds}, group);
      std::cout << "nodes: " << res.nodes << '\n';
      if (res.status == SearchStatus::kFound) {
        std::cout << "found\n";
        std::ostringstream buf;
        write_scheme(buf, *res.scheme);
        if (!ds_out.empty()) {
          save_text(ds_out, buf.str());
          std::cout << "wrote " << ds_out << '\n';
        } else {
          std::cout << buf.str();
        }
        return kExitOk;
      }
      if (res.status == SearchStatus::kProvenNonexistent) {
        std::cout << "proven-nonexistent (normalized space exhausted)\n";
        return kExitVerifyFail;
      }
      std::cout << "not-found-within-budget\n";
      return kExitBudget;
    }
    if (*se_pt) {
      OrthogonalArray a = load_oa(pt_file);
      std::optional<int> k1;
      if (pt_k1 >= 0) k1 = pt_k1;
      PartitionSearchResult res = partition_search(a, pt_m, pt_k, k1, {se_nodes, se_seconds});
      std::cout << "nodes: " << res.nodes << '\n';
      if (res.status == SearchStatus::kFound) {
        std::cout << "found\n";
        std::ostringstream buf;
        write_partition(buf, *res.partition);
        if (!pt_out.empty()) {
          save_text(pt_out, buf.str());
          std::cout << "wrote " << pt_out << '\n';
        } else {
          std::cout << buf.str();
        }
        return kExitOk;
      }
      if (res.status == SearchStatus::kProvenNonexistent) {
        std::cout << "proven-nonexistent (assignment space exhausted)\n";
        return kExitVerifyFail;
      }
      std::cout << "not-found-within-budget\n";
      return kExitBudget;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFail;
  }
  return kExitOk;
}
