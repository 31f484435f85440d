#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "hmp/errors.hpp"
#include "hmp/info_metrics.hpp"
#include "hmp/rng.hpp"

namespace hmp {

namespace {

ExtractionRecord run_extraction(const OneWayProtocol& protocol, const MatchingFamily& family, const BitString& c,
                                const MessageBundle& bundle, Rng& rng) {
  const int n = family.n();
  const int k = protocol.k;
  const int r = bundle.r;
  ExtractionRecord rec;
  rec.bundle_bits = bundle.total_bits;
  std::vector<bool> in_support(static_cast<std::size_t>(n) + 1, false);

  for (;;) {
    int chosen = 0;
    for (int j = 1; j <= family.t() && chosen == 0; ++j) {
      const Matching& m = family.matching(j);
      const bool eligible = std::all_of(m.begin(), m.end(), [&](const Edge& e) {
        return !(in_support[static_cast<std::size_t>(e.u)] && in_support[static_cast<std::size_t>(e.v)]);
      });
      if (eligible) chosen = j;
    }
    if (chosen == 0) break;

    const auto alphas = encode_matching_index(static_cast<std::uint64_t>(chosen), k, r);
    const auto messages = bundle.messages_for(alphas);
    const HmpInstance instance(n, k, r, alphas, c);
    const PlayerView view = view_of(instance, k);
    const std::size_t d = protocol.private_seeds > 1 ? static_cast<std::size_t>(rng.uniform(protocol.private_seeds)) : 0;
    const Answer ans = protocol.decoder(messages, view, 0, d);

    const Edge edge = Edge::make(ans.i1, ans.i2);
    const Matching& m = family.matching(chosen);
    if (ans.i1 == ans.i2 || std::find(m.begin(), m.end(), edge) == m.end()) {
      throw InvalidInput("recipient answered a pair outside the queried matching");
    }
    rec.A.push_back(edge);
    rec.B.push_back(ans.e);
    rec.matchings_used.push_back(chosen);
    in_support[static_cast<std::size_t>(edge.u)] = true;
    in_support[static_cast<std::size_t>(edge.v)] = true;
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (in_support[static_cast<std::size_t>(v)]) rec.support.push_back(v);
  }
  rec.s = static_cast<int>(rec.A.size());
  return rec;
}

void check_compatible(const OneWayProtocol& protocol, const MatchingFamily& family, const BitString& c) {
  protocol.validate();
  if (static_cast<int>(c.size()) != family.n()) throw InvalidInput("c does not match the family's vertex count");
  if (!protocol.deterministic_senders()) {
    throw InvalidInput("extraction needs deterministic senders; derandomize them first");
  }
}

template <typename Key>
std::int64_t intern(std::map<Key, std::int64_t>& table, const Key& key) {
  auto [it, inserted] = table.emplace(key, static_cast<std::int64_t>(table.size()));
  return it->second;
}

}  // namespace

ExtractionRecord extract_AB(const OneWayProtocol& protocol, const MatchingFamily& family, const BitString& c,
                            std::uint64_t seed) {
  check_compatible(protocol, family, c);
  const int r = required_alpha_bits(family.t(), protocol.k);
  const MessageBundle bundle = build_message_bundle(protocol, c, r);
  Rng rng(seed);
  return run_extraction(protocol, family, c, bundle, rng);
}

AccountingReport information_accounting(const OneWayProtocol& protocol, const MatchingFamily& family,
                                        const AccountingOptions& options) {
  const int n = family.n();
  AccountingReport rep;
  rep.mode = options.mode;
  rep.n = n;
  rep.k = protocol.k;
  rep.t = family.t();
  rep.r = required_alpha_bits(family.t(), protocol.k);
  check_compatible(protocol, family, BitString(static_cast<std::size_t>(n)));
  if (n > 62) throw InvalidInput("information accounting supports n <= 62");

  if (options.mode == AccountingMode::Exact) {
    if (n > 12) {
      throw SearchRefused("exact accounting enumerates 2^n strings and is limited to n <= 12 (requested 2^" +
                              std::to_string(n) + " strings)",
                          std::ldexp(1.0, n));
    }
    if (!protocol.deterministic()) throw InvalidInput("exact accounting needs a deterministic recipient");
    rep.samples = std::uint64_t{1} << n;
  } else {
    if (options.samples == 0) throw InvalidInput("sampled accounting needs at least one sample");
    rep.samples = options.samples;
  }

  std::map<std::vector<Edge>, std::int64_t> a_ids;
  std::map<BitString, std::int64_t> b_ids;
  std::map<BitString, std::int64_t> w_ids;
  std::map<Outcome, double> weights;
  std::vector<std::uint64_t> hits;
  std::vector<std::uint64_t> tries;
  std::uint64_t s_total = 0;
  rep.min_s = std::numeric_limits<int>::max();
  rep.max_s = 0;

  Rng c_rng(derive_seed(options.seed, 0));
  for (std::uint64_t i = 0; i < rep.samples; ++i) {
    std::uint64_t cv = 0;
    if (options.mode == AccountingMode::Exact) {
      cv = i;
    } else {
      for (int b = 0; b < n; ++b) cv = (cv << 1) | (c_rng.coin() ? 1U : 0U);
    }
    const BitString c = BitString::from_uint(cv, static_cast<std::size_t>(n));
    const MessageBundle bundle = build_message_bundle(protocol, c, rep.r);
    Rng rng(derive_seed(options.seed, i + 1));
    const ExtractionRecord rec = run_extraction(protocol, family, c, bundle, rng);
    rep.bundle_bits = bundle.total_bits;

    const Outcome o{intern(a_ids, rec.A), intern(b_ids, rec.B), static_cast<std::int64_t>(cv),
                    intern(w_ids, bundle.concatenated())};
    weights[o] += 1.0;

    s_total += static_cast<std::uint64_t>(rec.s);
    rep.min_s = std::min(rep.min_s, rec.s);
    rep.max_s = std::max(rep.max_s, rec.s);
    if (hits.size() < static_cast<std::size_t>(rec.s)) {
      hits.resize(static_cast<std::size_t>(rec.s), 0);
      tries.resize(static_cast<std::size_t>(rec.s), 0);
    }
    for (int j = 0; j < rec.s; ++j) {
      const Edge& e = rec.A[static_cast<std::size_t>(j)];
      const bool truth = c[static_cast<std::size_t>(e.u - 1)] != c[static_cast<std::size_t>(e.v - 1)];
      ++tries[static_cast<std::size_t>(j)];
      if (rec.B[static_cast<std::size_t>(j)] == truth) ++hits[static_cast<std::size_t>(j)];
    }
  }

  const auto joint = EmpiricalDistribution::from_weights(weights);
  const std::vector<int> A{0}, B{1}, C{2}, W{3}, AB{0, 1};
  rep.i_ab_c = mutual_information(joint, AB, C);
  rep.i_a_c = mutual_information(joint, A, C);
  rep.i_b_c_given_a = mutual_information(joint, B, C, A);
  rep.i_w_c = mutual_information(joint, W, C);
  rep.h_w = entropy(joint, W);

  rep.mean_s = static_cast<double>(s_total) / static_cast<double>(rep.samples);
  for (std::size_t j = 0; j < hits.size(); ++j) {
    rep.success_rates.push_back(static_cast<double>(hits[j]) / static_cast<double>(tries[j]));
  }
  rep.min_success = rep.success_rates.empty() ? 1.0 : *std::min_element(rep.success_rates.begin(), rep.success_rates.end());
  rep.margin = rep.min_success - 0.5;
  rep.epsilon_measured = 2.0 * rep.min_success - 1.0;
  rep.xi = rep.epsilon_measured * rep.epsilon_measured / 64.0;

  if (const auto d = family.girth_parameter(); d && *d % 2 == 0) {
    const int kk = *d / 2;
    rep.span_k = kk;
    rep.span_lower_bound = std::pow(static_cast<double>(family.t()), 1.0 - 1.0 / (2.0 * kk + 1.0)) / (360.0 * kk);
    rep.span_bound_violated = static_cast<double>(rep.min_s) < *rep.span_lower_bound;
  }

  constexpr double tol = 1e-9;
  rep.bundle_bound_holds = rep.i_ab_c <= rep.i_w_c + tol && rep.i_w_c <= rep.h_w + tol &&
                           rep.h_w <= static_cast<double>(rep.bundle_bits) + tol;
  return rep;
}

}  // namespace hmp
