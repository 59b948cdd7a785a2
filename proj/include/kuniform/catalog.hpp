#pragma once

#include <string>
#include <vector>

#include "kuniform/rational.hpp"

namespace kuniform {

// One cell of the reproduction suite: construct the state along its route,
// verify everything, and compare against the cataloged purity. MATCH needs
// exact purity equality plus certified uniformity >= k.
struct ReproductionRow {
  enum class Status { kMatch, kMismatch, kDiscrepancyNoted, kSkippedFixture };

  std::string table;  // qubit | qutrit | ququart
  int k = 0;
  int n = 0;
  int d = 0;
  std::string route;
  std::string expected_purity;
  char highest_tag = ' ';  // purity-attestation case a..e, when cataloged

  Status status = Status::kSkippedFixture;
  std::string measured_purity;
  int measured_uniformity = -1;
  std::string note;
};

struct ReproductionOptions {
  int threads = 1;
};

// table: "qubit", "1"/"qutrit", or "2"/"ququart"
std::vector<ReproductionRow> reproduce_table(const std::string& table,
                                             const ReproductionOptions& opts);

std::string format_rows_text(const std::vector<ReproductionRow>& rows);
std::string format_rows_tsv(const std::vector<ReproductionRow>& rows);
bool has_mismatch(const std::vector<ReproductionRow>& rows);

}  // namespace kuniform
