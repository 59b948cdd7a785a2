#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "kuniform/io.hpp"

using namespace kuniform;

namespace {

template <typename T, typename Writer, typename Reader>
std::string roundtrip(const T& value, Writer write, Reader read) {
  std::ostringstream first;
  write(first, value);
  std::istringstream in(first.str());
  T back = read(in);
  std::ostringstream second;
  write(second, back);
  CHECK(first.str() == second.str());
  return first.str();
}

}  // namespace

TEST_CASE("round trips are byte-exact on every fixture") {
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir())) {
    const std::string path = entry.path().string();
    const std::string ext = entry.path().extension().string();
    if (ext == ".gen") {
      roundtrip(load_generator(path), write_generator, read_generator);
    } else if (ext == ".oa") {
      roundtrip(load_oa(path), write_oa, read_oa);
    } else if (ext == ".ds") {
      roundtrip(load_scheme(path), write_scheme, read_scheme);
    } else if (ext == ".code") {
      roundtrip(load_code(path), write_code, read_code);
    }
  }
}

TEST_CASE("comment lines and compact digit rows both parse") {
  std::istringstream in(
      "# leading comment\n"
      "oa 2 3 2 1\n"
      "010\n"
      "# interior comment\n"
      "1 0 1\n");
  OrthogonalArray a = read_oa(in);
  CHECK(a.runs() == 2);
  CHECK(a.rows(0, 1) == 1);
  CHECK(a.rows(1, 2) == 1);
}

TEST_CASE("parse failures carry a reason") {
  std::istringstream bad_header("oa 2 3\n");
  CHECK_THROWS_AS(read_oa(bad_header), ParseError);
  std::istringstream truncated("oa 2 3 2 1\n0 1 0\n");
  CHECK_THROWS_AS(read_oa(truncated), ParseError);
  std::istringstream out_of_range("oa 1 3 2 1\n0 2 0\n");
  CHECK_THROWS_AS(read_oa(out_of_range), ParseError);
  std::istringstream dup("oa 2 2 2 0\n0 1\n0 1\n");
  CHECK_THROWS_AS(read_oa(dup), ParseError);
  std::istringstream bad_group("ds 2 2 4 2 gf9\n0 0\n0 1\n");
  CHECK_THROWS_AS(read_scheme(bad_group), ParseError);
  std::istringstream bad_claims("code 3 2 1\n1 1\nclaims md=2 strength=1\n");
  CHECK_THROWS_AS(read_code(bad_claims), ParseError);
}

TEST_CASE("partition files round trip") {
  OrthogonalPartition p;
  p.block_strength = 2;
  p.blocks = {{0, 3}, {1, 2}};
  std::ostringstream out;
  write_partition(out, p);
  std::istringstream in(out.str());
  OrthogonalPartition back = read_partition(in);
  CHECK(back.block_strength == 2);
  CHECK(back.blocks == p.blocks);
  std::istringstream disorder("partition 2 0\nblock 1\n0\nblock 0\n1\n");
  CHECK_THROWS_AS(read_partition(disorder), ParseError);
}

TEST_CASE("state export round trips with exact amplitudes") {
  SymbolMatrix rows(2, 3);
  rows << 0, 1, 2, 2, 1, 0;
  MixedState m = block_mixture(
      rows, {std::vector<int>{0}, std::vector<int>{1}}, 3);
  std::ostringstream out;
  write_state(out, m);
  std::istringstream in(out.str());
  MixedState back = read_state(in);
  CHECK(back.size() == 2);
  CHECK(back.sites == 3);
  CHECK(mixture_purity(back) == mixture_purity(m));
  std::ostringstream again;
  write_state(again, back);
  CHECK(out.str() == again.str());
}

TEST_CASE("existence facts load with provenance") {
  const ExistenceFacts& facts = ExistenceFacts::builtin();
  CHECK(facts.known_nonexistent(81, 8, 3, 4));
  CHECK_FALSE(facts.known_nonexistent(243, 8, 3, 4));
  auto it = facts.min_runs.find({5, 3, 3});
  REQUIRE(it != facts.min_runs.end());
  CHECK(it->second.first == 54);
  CHECK_FALSE(it->second.second.empty());
}

TEST_CASE("fixture directory override") {
  CHECK(fixture_exists("ds_16_6_4.ds"));
  CHECK_FALSE(fixture_exists("no_such_file.oa"));
}
