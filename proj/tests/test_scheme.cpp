#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kuniform/io.hpp"
#include "kuniform/scheme.hpp"

using namespace kuniform;

TEST_CASE("the 16x6 fixture verifies over the field group, not mod 4") {
  DifferenceScheme d = load_scheme(fixture_path("ds_16_6_4.ds"));
  CHECK(d.group == GroupTable::elementary(4));
  CHECK(verify_difference_scheme(d));
  CHECK_FALSE(verify_difference_scheme(d.rows, d.strength, GroupTable::cyclic(4)));
}

TEST_CASE("the 18x5 fixture verifies over Z3") {
  DifferenceScheme d = load_scheme(fixture_path("ds_18_5_3.ds"));
  CHECK(verify_difference_scheme(d));
  CHECK(d.runs() == 18);
}

TEST_CASE("the all-zero array is not a scheme of strength two") {
  SymbolMatrix zeros = SymbolMatrix::Zero(2, 3);
  CHECK_FALSE(verify_difference_scheme(zeros, 2, GroupTable::cyclic(2)));
}

TEST_CASE("kernel schemes exist for the cataloged parameters") {
  for (int k = 2; k <= 8; ++k) {
    DifferenceScheme d3 = kernel_difference_scheme(3, k, GroupTable::cyclic(3));
    CHECK(d3.runs() == static_cast<int>(std::pow(3, k - 1)));
    CHECK(d3.columns() == k + 1);
    DifferenceScheme d4 = kernel_difference_scheme(4, k, GroupTable::elementary(4));
    CHECK(d4.runs() == static_cast<int>(std::pow(4, k - 1)));
  }
  DifferenceScheme d2 = kernel_difference_scheme(2, 3, GroupTable::cyclic(2));
  CHECK(d2.runs() == 4);
  // even k over Z2 has no all-unit functional with zero sum
  CHECK_FALSE(try_kernel_difference_scheme(2, 4, GroupTable::cyclic(2)).has_value());
  // strength-3 over any cyclic order via (1,-1,...) patterns
  for (int d : {5, 6, 7}) {
    DifferenceScheme s = kernel_difference_scheme(d, 3, GroupTable::cyclic(d));
    CHECK(s.runs() == d * d);
  }
}

TEST_CASE("conic schemes for odd prime powers") {
  for (int d : {3, 5, 7, 9}) {
    DifferenceScheme s = conic_difference_scheme(d);
    CHECK(s.runs() == d * d);
    CHECK(s.columns() == d + 1);
    CHECK(s.strength == 3);
    CHECK(verify_difference_scheme(s));
  }
  CHECK_THROWS_AS(conic_difference_scheme(2), std::invalid_argument);
  CHECK_THROWS_AS(conic_difference_scheme(4), std::invalid_argument);
}

TEST_CASE("scheme search finds the 4x4 binary scheme quickly") {
  SchemeSearchResult res = search_difference_scheme(4, 4, 2, 3, {1'000'000, 5.0});
  REQUIRE(res.status == SearchStatus::kFound);
  CHECK(verify_difference_scheme(*res.scheme));
  CHECK(res.scheme->runs() == 4);
  // deterministic: the same call reproduces the same scheme
  SchemeSearchResult res2 = search_difference_scheme(4, 4, 2, 3, {1'000'000, 5.0});
  CHECK(res.scheme->rows == res2.scheme->rows);
}

TEST_CASE("two-row two-column search: the definition admits a scheme") {
  // exhaustive over the normalized two-row space; {00,01} balances both cosets
  SchemeSearchResult res = search_difference_scheme(2, 2, 2, 2, {10'000, 5.0});
  CHECK(res.status == SearchStatus::kFound);
  CHECK(verify_difference_scheme(*res.scheme));
}

TEST_CASE("a genuinely impossible instance is proven nonexistent") {
  // two rows, three columns, strength 2 forces contradictory column pairs
  SchemeSearchResult res = search_difference_scheme(2, 3, 2, 2, {10'000'000, 10.0});
  CHECK(res.status == SearchStatus::kProvenNonexistent);
  // strength-4 binary scheme on 5 columns with 8 rows cannot exist: its
  // expansion would pair complementary rows inside the parity array
  SchemeSearchResult res2 = search_difference_scheme(8, 5, 2, 4, {50'000'000, 60.0});
  CHECK(res2.status == SearchStatus::kProvenNonexistent);
}

TEST_CASE("search rediscovers a 16x6 scheme over the field group") {
  SchemeSearchResult res =
      search_difference_scheme(16, 6, 4, 3, {50'000'000, 120.0}, GroupTable::elementary(4));
  REQUIRE(res.status == SearchStatus::kFound);
  CHECK(verify_difference_scheme(*res.scheme));
  CHECK(res.scheme->runs() == 16);
  CHECK(res.scheme->columns() == 6);
}

TEST_CASE("budget exhaustion is distinguished from nonexistence") {
  SchemeSearchResult res = search_difference_scheme(18, 5, 3, 3, {50, 600.0});
  CHECK(res.status == SearchStatus::kBudgetExhausted);
}
