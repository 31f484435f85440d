// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "hmp/classical_sim.hpp"
#include "hmp/cli.hpp"
#include "hmp/info_metrics.hpp"
#include "hmp/matching_families.hpp"
#include "hmp/quantum_sim.hpp"
#include "oracles.hpp"

using namespace hmp;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::vector<oracle::Pair> pairs(const Graph& g) {
  std::vector<oracle::Pair> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

MatchingFamily two_matching_family() {
  return MatchingFamily(4, {{Edge{1, 2}, Edge{3, 4}}, {Edge{1, 3}, Edge{2, 4}}}, std::nullopt,
                        Construction::ExplicitFile);
}

bool decomposition_ok(const Graph& g) {
  const auto deg = g.regular_degree();
  if (!deg) return false;
  const auto ms = decompose_regular_bipartite(g);
  if (static_cast<int>(ms.size()) != *deg) return false;
  std::set<Edge> seen;
  for (const auto& m : ms) {
    if (!is_perfect_matching(m, g.vertex_count())) return false;
    for (const Edge& e : m) {
      if (!g.has_edge(e) || !seen.insert(e).second) return false;
    }
  }
  return seen.size() == g.edges().size();
}

// Criteria 1 and 2 share one pass over the instances.
struct QuantumSweep {
  std::uint64_t runs = 0;
  std::uint64_t wrong_answers = 0;
  std::uint64_t wrong_costs = 0;
};

QuantumSweep quantum_sweep() {
  QuantumSweep q;
  for (int n = 2; n <= 16; n += 2) {
    const auto fam = cyclic_family(n);
    const int r = required_alpha_bits(fam.t(), 2);
    const CostReport expected{ceil_log2(static_cast<std::uint64_t>(n)), ceil_log2(static_cast<std::uint64_t>(fam.t())),
                              ceil_log2(static_cast<std::uint64_t>(n)) + ceil_log2(static_cast<std::uint64_t>(fam.t()))};
    for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << n); ++cv) {
      const BitString c = BitString::from_uint(cv, static_cast<std::size_t>(n));
      for (int j = 1; j <= fam.t(); ++j) {
        const auto inst = HmpInstance::with_index(n, 2, r, static_cast<std::uint64_t>(j), c);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          const auto run = run_quantum_smp(inst, fam, derive_seed(cv * 64 + static_cast<std::uint64_t>(j), seed));
          ++q.runs;
          if (!relation_holds(inst, fam, run.answer)) ++q.wrong_answers;
          if (!(run.cost == expected)) ++q.wrong_costs;
        }
      }
    }
  }
  return q;
}

Verdict criterion3() {
  std::vector<Graph> graphs;
  std::vector<Edge> c6;
  for (int i = 1; i <= 6; ++i) c6.push_back(Edge::make(i, i % 6 + 1));
  graphs.emplace_back(6, c6);
  std::vector<Edge> k33;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 4; b <= 6; ++b) k33.push_back(Edge{a, b});
  }
  graphs.emplace_back(6, k33);
  graphs.push_back(projective_plane_graph(2));
  graphs.push_back(projective_plane_graph(3));
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 * (1 + static_cast<int>(rng.uniform(25)));
    const int deg = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(n / 2)));
    graphs.push_back(random_regular_bipartite(n, deg, rng));
  }
  int bad = 0;
  for (const auto& g : graphs) bad += decomposition_ok(g) ? 0 : 1;
  return {bad == 0, std::to_string(graphs.size()) + " graphs, " + std::to_string(bad) + " failures"};
}

Verdict criterion4() {
  Rng rng(4);
  int corpus = 0;
  int disagreements = 0;
  while (corpus < 600) {
    const int n = 3 + static_cast<int>(rng.uniform(8));
    const double p = 0.2 + 0.5 * rng.uniform01();
    std::vector<Edge> edges;
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (rng.uniform01() < p) edges.push_back(Edge{a, b});
      }
    }
    const Graph g(n, edges);
    // Keep connected graphs only.
    const auto adj = g.adjacency();
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    std::vector<int> stack{1};
    seen[1] = true;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) continue;
    ++corpus;
    const int shortest = oracle::shortest_cycle(n, pairs(g));
    for (int d = 1; d <= 5; ++d) {
      if (verify_girth(g, d) != (shortest == 0 || shortest > 2 * d)) ++disagreements;
    }
  }
  const bool heawood = verify_girth(projective_plane_graph(2), 2);
  const bool k22 = verify_girth(Graph(4, {Edge{1, 3}, Edge{1, 4}, Edge{2, 3}, Edge{2, 4}}), 2);
  std::ostringstream os;
  os << corpus << " connected graphs, " << disagreements << " disagreements; Heawood d=2 "
     << (heawood ? "passes" : "fails") << ", K2,2 d=2 " << (k22 ? "passes" : "fails");
  return {disagreements == 0 && heawood && !k22, os.str()};
}

Verdict criterion5() {
  const auto n2 = cyclic_family(2);
  const auto two = two_matching_family();
  const int bf2 = bruteforce_min_cost(n2, 2, 0.0).cost;
  const int bf4 = bruteforce_min_cost(two, 2, 0.0).cost;

  std::vector<oracle::PairMatching> p2{{{1, 2}}};
  std::vector<oracle::PairMatching> p4{{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}};
  const int oracle2 = oracle::zero_error_min_cost(2, p2, 2);
  const bool no_one_bit = oracle::zero_error_min_cost(4, p4, 1) == -1;
  // Two bits suffice: send (c1 xor c2, c1 xor c3) and answer that edge.
  bool two_bits = true;
  for (std::uint32_t c = 0; c < 16; ++c) {
    std::vector<std::uint32_t> cell;
    for (std::uint32_t d = 0; d < 16; ++d) {
      const bool same = (oracle::bit(c, 4, 1) ^ oracle::bit(c, 4, 2)) == (oracle::bit(d, 4, 1) ^ oracle::bit(d, 4, 2)) &&
                        (oracle::bit(c, 4, 1) ^ oracle::bit(c, 4, 3)) == (oracle::bit(d, 4, 1) ^ oracle::bit(d, 4, 3));
      if (same) cell.push_back(d);
    }
    for (const auto& m : p4) two_bits = two_bits && oracle::zero_error_cell(cell, m, 4);
  }
  const int oracle4 = no_one_bit && two_bits ? 2 : -1;
  std::ostringstream os;
  os << "n=2: search " << bf2 << ", oracle " << oracle2 << "; n=4: search " << bf4 << ", oracle " << oracle4;
  return {bf2 == 1 && oracle2 == 1 && bf4 == 2 && oracle4 == 2, os.str()};
}

Verdict criterion6() {
  std::ostringstream os;
  bool increasing = true;
  bool dominates = true;
  int previous = -1;
  for (int n : {2, 4, 6}) {
    const auto fam = cyclic_family(n);
    const int classical = bruteforce_min_cost(fam, 2, 0.0).cost;
    const int quantum = quantum_cost(n, fam.t()).total;
    os << "n=" << n << " classical " << classical << " quantum " << quantum << "; ";
    increasing = increasing && classical > previous;
    if (n >= 4) dominates = dominates && classical >= quantum;
    previous = classical;
  }
  os << "classical strictly increasing: " << (increasing ? "yes" : "no")
     << ", classical >= quantum for n >= 4: " << (dominates ? "yes" : "no");
  return {increasing && dominates, os.str()};
}

Verdict criterion7() {
  const auto facts = check_information_facts(1000, 77, 64);
  Rng rng(7);
  int violations = 0;
  const int checks = 100'000;
  for (int i = 0; i < checks; ++i) {
    const double beta = 0.5 + 10.0 * rng.uniform01();
    const int size = 1 + static_cast<int>(rng.uniform(20));
    std::vector<double> samples;
    for (int s = 0; s < size; ++s) samples.push_back(rng.coin() ? beta * rng.uniform01() : beta * static_cast<double>(rng.uniform(2)));
    const double alpha = beta * rng.uniform01();
    if (!markov_bound_check(samples, beta, alpha).holds) ++violations;
  }
  std::ostringstream os;
  os << "max residuals: conditional entropy " << facts.max_conditional_entropy_residual << ", conditional MI "
     << facts.max_conditional_mi_residual << ", chain rule " << facts.max_chain_rule_residual
     << "; superadditivity violations " << facts.superadditivity_violations << "; Markov violations " << violations
     << "/" << checks;
  return {facts.holds(1e-9) && violations == 0, os.str()};
}

Verdict criterion8() {
  Rng rng(8);
  int holds = 0;
  const int configs = 100;
  double worst_gap = -1e300;
  for (int i = 0; i < configs; ++i) {
    const int n = 2 * (2 + static_cast<int>(rng.uniform(5)));
    const int k = 2 + static_cast<int>(rng.uniform(3));
    const int bits = 1 + static_cast<int>(rng.uniform(3));
    const auto fam = cyclic_family(n);
    const auto p = random_table_protocol(k, std::vector<int>(static_cast<std::size_t>(k - 1), bits), fam, rng.next());
    const auto rep = information_accounting(p, fam);
    worst_gap = std::max(worst_gap, rep.i_ab_c - rep.bundle_bits);
    if (rep.i_ab_c <= rep.bundle_bits + 1e-9 && rep.bundle_bound_holds) ++holds;
  }
  std::ostringstream os;
  os << holds << "/" << configs << " exact-mode configurations satisfy I(A,B;C) <= I(W;C) <= H(W) <= |W| (max I(A,B;C)-|W| = "
     << worst_gap << ")";
  return {holds == configs, os.str()};
}

Verdict criterion9() {
  const auto fam = two_matching_family();
  const auto p = edge_parity_protocol(2, fam);
  bool trace = true;
  for (std::uint64_t cv = 0; cv < 16; ++cv) {
    const BitString c = BitString::from_uint(cv, 4);
    const auto rec = extract_AB(p, fam, c);
    BitString b;
    b.push_back(c[0] != c[1]);
    b.push_back(c[0] != c[2]);
    trace = trace && rec.s == 2 && rec.A == std::vector<Edge>{Edge{1, 2}, Edge{1, 3}} && rec.B == b;
  }
  int families = 0;
  int violations = 0;
  std::vector<MatchingFamily> girth6{projective_plane_family(2), projective_plane_family(3), projective_plane_family(5)};
  if (auto g = random_girth_family(40, 4, 2, 9, 200)) girth6.push_back(*g);
  for (const auto& f : girth6) {
    for (int k : {3, 4}) {
      const auto q = random_table_protocol(k, std::vector<int>(static_cast<std::size_t>(k - 1), 2), f, 3);
      const auto rep = information_accounting(q, f, AccountingOptions{AccountingMode::Sampled, 500, 5});
      ++families;
      if (!rep.span_lower_bound || rep.span_bound_violated) ++violations;
    }
  }
  std::ostringstream os;
  os << "hand trace " << (trace ? "matches" : "differs") << "; span diagnostic on " << families
     << " girth-6 runs, " << violations << " violations";
  return {trace && violations == 0, os.str()};
}

Verdict criterion10() {
  const std::vector<std::vector<std::string>> commands{
      {"gen-family", "--kind", "girth", "--n", "30", "--t", "3", "--d", "2", "--seed", "21"},
      {"gen-family", "--kind", "pg", "--q", "3", "--format", "csv"},
      {"run-quantum", "--n", "10", "--runs", "500", "--seed", "31"},
      {"bruteforce-classical", "--n", "6", "--epsilon", "0.25", "--seed", "5"},
      {"extract", "--n", "8", "--k", "3", "--protocol", "random", "--mode", "sampled", "--samples", "3000", "--seed", "6"},
      {"sweep", "--ns", "2,4,6", "--seed", "7"},
  };
  int identical = 0;
  for (const auto& cmd : commands) {
    std::string a, b;
    for (std::string* dst : {&a, &b}) {
      std::vector<const char*> argv{"hmp"};
      for (const auto& s : cmd) argv.push_back(s.c_str());
      std::ostringstream out, err;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      *dst = std::to_string(code) + "\n" + out.str();
    }
    if (a == b && a.rfind("0\n", 0) == 0) ++identical;
  }
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) + " subcommand invocations byte-identical"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& name, const std::function<Verdict()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  QuantumSweep q;
  report(1, "quantum exactness", [&] {
    q = quantum_sweep();
    return Verdict{q.wrong_answers == 0, std::to_string(q.runs) + " runs over even n <= 16, " +
                                             std::to_string(q.wrong_answers) + " wrong answers"};
  });
  report(2, "quantum cost", [&] {
    return Verdict{q.runs > 0 && q.wrong_costs == 0,
                   std::to_string(q.wrong_costs) + " cost reports differ from ceil(log2 n) + ceil(log2 t)"};
  });
  report(3, "decomposition", criterion3);
  report(4, "girth verification", criterion4);
  report(5, "brute-force oracle equivalence", criterion5);
  report(6, "gap trend", criterion6);
  report(7, "information identities", criterion7);
  report(8, "bundle upper bound", criterion8);
  report(9, "extraction loop", criterion9);
  report(10, "determinism", criterion10);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
