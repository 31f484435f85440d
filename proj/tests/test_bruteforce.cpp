#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmp/classical_sim.hpp"
#include "hmp/errors.hpp"
#include "hmp/matching_families.hpp"
#include "oracles.hpp"

using namespace hmp;

namespace {

MatchingFamily two_matching_family() {
  return MatchingFamily(4, {{Edge{1, 2}, Edge{3, 4}}, {Edge{1, 3}, Edge{2, 4}}}, std::nullopt,
                        Construction::ExplicitFile);
}

std::vector<oracle::PairMatching> as_pairs(const MatchingFamily& f) {
  std::vector<oracle::PairMatching> out;
  for (const auto& m : f.matchings()) {
    oracle::PairMatching pm;
    for (const Edge& e : m) pm.emplace_back(e.u, e.v);
    out.push_back(pm);
  }
  return out;
}

void check_result_protocol(const BruteForceResult& res, const MatchingFamily& fam, double epsilon) {
  CHECK(res.protocol.cost() == res.cost);
  const auto report = evaluate_protocol(res.protocol, fam);
  CHECK(report.worst_case_error <= epsilon + 1e-9);
  CHECK(report.worst_case_error == doctest::Approx(res.worst_case_error).epsilon(1e-9));
}

}  // namespace

TEST_CASE("independent enumeration: zero-error costs") {
  const auto n2 = cyclic_family(2);
  CHECK(oracle::zero_error_min_cost(2, as_pairs(n2), 2) == 1);
  // No 1-bit sender works on the four-vertex families.
  CHECK(oracle::zero_error_min_cost(4, as_pairs(two_matching_family()), 1) == -1);
  CHECK(oracle::zero_error_min_cost(4, as_pairs(cyclic_family(4)), 1) == -1);
}

TEST_CASE("bruteforce_min_cost matches the enumeration") {
  const auto n2 = cyclic_family(2);
  const auto r2 = bruteforce_min_cost(n2, 2, 0.0);
  CHECK(r2.cost == 1);
  check_result_protocol(r2, n2, 0.0);

  const auto fam = two_matching_family();
  const auto r4 = bruteforce_min_cost(fam, 2, 0.0);
  CHECK(r4.cost == 2);
  check_result_protocol(r4, fam, 0.0);

  const auto c4 = cyclic_family(4);
  CHECK(bruteforce_min_cost(c4, 2, 0.0).cost == 2);
}

TEST_CASE("guessing is optimal at error one half") {
  const auto fam = two_matching_family();
  const auto r = bruteforce_min_cost(fam, 2, 0.5);
  CHECK(r.cost == 0);
  CHECK(r.worst_case_error == doctest::Approx(0.5));
  check_result_protocol(r, fam, 0.5);
  CHECK(evaluate_protocol(guess_protocol(2, fam), fam).worst_case_error == 0.5);
}

TEST_CASE("cost is monotone in epsilon and in t") {
  const auto six = cyclic_family(6);
  int previous = 1 << 20;
  for (double eps : {0.0, 0.1, 0.25, 1.0 / 3.0, 0.4, 0.5, 0.75}) {
    const auto r = bruteforce_min_cost(six, 2, eps);
    CHECK(r.cost <= previous);
    previous = r.cost;
    check_result_protocol(r, six, eps);
  }
  for (double eps : {0.0, 0.25}) {
    int last = 0;
    for (int t = 1; t <= 3; ++t) {
      const int cost = bruteforce_min_cost(six.prefix(t), 2, eps).cost;
      CHECK(cost >= last);
      last = cost;
    }
  }
  int last = 0;
  for (int t = 1; t <= 2; ++t) {
    const int cost = bruteforce_min_cost(cyclic_family(4).prefix(t), 2, 0.0).cost;
    CHECK(cost >= last);
    last = cost;
  }
  CHECK(bruteforce_min_cost(six, 2, 0.0).cost == 3);
}

TEST_CASE("cell_game_value") {
  const auto fam = two_matching_family();
  std::vector<BitString> all;
  for (std::uint64_t c = 0; c < 16; ++c) all.push_back(BitString::from_uint(c, 4));
  CHECK(cell_game_value(fam, 1, all) == doctest::Approx(0.5));
  const std::vector<BitString> one{BitString::parse("0110")};
  CHECK(cell_game_value(fam, 1, one) == doctest::Approx(1.0));
  // Edge (1,2) has parity 0 on both strings.
  const std::vector<BitString> two{BitString::parse("0000"), BitString::parse("0001")};
  CHECK(cell_game_value(fam, 1, two) == doctest::Approx(1.0));
  // Edge parities (0,0), (0,1), (1,0): rows two and three have disjoint
  // supports, so no mix beats 1/2.
  const std::vector<BitString> three{BitString::parse("0000"), BitString::parse("0001"), BitString::parse("0100")};
  CHECK(cell_game_value(fam, 1, three) == doctest::Approx(0.5));
}

TEST_CASE("shared-seed search") {
  const auto n2 = cyclic_family(2);
  SearchOptions opts;
  opts.mode = SearchMode::SharedSeeds;
  opts.shared_seeds = 2;
  const auto r = bruteforce_min_cost(n2, 2, 0.0, opts);
  CHECK(r.cost == 1);
  CHECK(r.partitions.size() == 2);
  check_result_protocol(r, n2, 0.0);

  const auto fam = two_matching_family();
  CHECK(bruteforce_min_cost(fam, 2, 0.5, opts).cost == 0);
  CHECK_THROWS_AS(bruteforce_min_cost(fam, 2, 0.0, opts), SearchRefused);
}

TEST_CASE("limits") {
  CHECK_THROWS_AS(bruteforce_min_cost(cyclic_family(4), 3, 0.0), InvalidInput);
  CHECK_THROWS_AS(bruteforce_min_cost(cyclic_family(4), 2, -0.1), InvalidInput);
  CHECK_THROWS_AS(bruteforce_min_cost(cyclic_family(10), 2, 0.0), SearchRefused);
  try {
    bruteforce_min_cost(cyclic_family(10), 2, 0.0);
  } catch (const SearchRefused& e) {
    CHECK(e.estimated_size() > 1e100);
  }
  SearchOptions tiny;
  tiny.max_nodes = 10;
  CHECK_THROWS_AS(bruteforce_min_cost(cyclic_family(6), 2, 0.0, tiny), SearchRefused);
}

TEST_CASE("search is deterministic") {
  const auto six = cyclic_family(6);
  const auto a = bruteforce_min_cost(six, 2, 0.25);
  const auto b = bruteforce_min_cost(six, 2, 0.25);
  CHECK(a.partitions == b.partitions);
  CHECK(a.nodes_explored == b.nodes_explored);
}
