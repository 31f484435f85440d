#include "hmp/classical_sim.hpp"

#include <algorithm>
#include <numeric>

#include "hmp/errors.hpp"
#include "hmp/rng.hpp"

namespace hmp {

namespace {

std::vector<BitString> alphas_of(const PlayerView& view) {
  std::vector<BitString> out;
  out.reserve(view.visible_alphas.size());
  for (const auto& [pos, s] : view.visible_alphas) out.push_back(s);
  return out;
}

PlayerView sender_view(int k, int player, std::span<const BitString> alphas, const BitString& c) {
  PlayerView view;
  view.player = player;
  view.k = k;
  for (int pos = 1; pos <= k - 1; ++pos) {
    if (pos != player) view.visible_alphas.emplace_back(pos, alphas[static_cast<std::size_t>(pos - 1)]);
  }
  view.c = c;
  return view;
}

std::vector<BitString> projection_without(std::span<const BitString> alphas, int position) {
  std::vector<BitString> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (static_cast<int>(i) + 1 != position) out.push_back(alphas[i]);
  }
  return out;
}

std::uint64_t hash_bits(std::uint64_t h, const BitString& bits) {
  std::uint64_t chunk = 0;
  int filled = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    chunk = (chunk << 1) | (bits[i] ? 1U : 0U);
    if (++filled == 63) {
      h = mix64(h ^ chunk);
      chunk = 0;
      filled = 0;
    }
  }
  h = mix64(h ^ chunk ^ (static_cast<std::uint64_t>(bits.size()) << 56));
  return h;
}

std::uint64_t hash_view(std::uint64_t h, const PlayerView& view) {
  h = mix64(h ^ static_cast<std::uint64_t>(view.player));
  for (const auto& [pos, s] : view.visible_alphas) h = hash_bits(mix64(h + static_cast<std::uint64_t>(pos)), s);
  if (view.c) h = hash_bits(mix64(h ^ 0xc0ffeeULL), *view.c);
  return h;
}

BitString bits_from_hash(std::uint64_t h, int width) {
  BitString out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) {
    if (i % 64 == 0 && i > 0) h = mix64(h);
    out.set(static_cast<std::size_t>(i), ((h >> (i % 64)) & 1U) != 0);
  }
  return out;
}

const Matching& matching_for(const MatchingFamily& family, const PlayerView& view) {
  const auto alphas = alphas_of(view);
  const std::uint64_t j = decode_matching_index(alphas);
  if (j > static_cast<std::uint64_t>(family.t())) throw RelationUndefined("decoder queried with an index beyond the family");
  return family.matching(static_cast<int>(j));
}

std::size_t matching_position(const PlayerView& view) {
  return static_cast<std::size_t>(decode_matching_index(alphas_of(view)) - 1);
}

bool parity(const BitString& c, const Edge& e) {
  return c[static_cast<std::size_t>(e.u - 1)] != c[static_cast<std::size_t>(e.v - 1)];
}

}  // namespace

int OneWayProtocol::cost() const { return std::accumulate(message_bits.begin(), message_bits.end(), 0); }

void OneWayProtocol::validate() const {
  if (k < 2) throw InvalidInput("protocol needs k >= 2");
  if (static_cast<int>(message_bits.size()) != k - 1 || static_cast<int>(senders.size()) != k - 1) {
    throw InvalidInput("protocol needs exactly k-1 senders with declared message widths");
  }
  for (int bits : message_bits) {
    if (bits < 0) throw InvalidInput("message widths must be non-negative");
  }
  for (const auto& s : senders) {
    if (!s) throw InvalidInput("protocol sender function is missing");
  }
  if (!decoder) throw InvalidInput("protocol decoder is missing");
  if (shared_seeds == 0 || private_seeds == 0) throw InvalidInput("protocol randomness must be an explicit non-empty seed set");
}

std::vector<BitString> OneWayProtocol::send(const HmpInstance& instance, std::size_t shared_seed) const {
  if (instance.k() != k) throw InvalidInput("instance and protocol disagree on k");
  std::vector<BitString> messages;
  messages.reserve(static_cast<std::size_t>(k - 1));
  for (int i = 1; i <= k - 1; ++i) {
    BitString msg = senders[static_cast<std::size_t>(i - 1)](view_of(instance, i), shared_seed);
    if (static_cast<int>(msg.size()) != message_bits[static_cast<std::size_t>(i - 1)]) {
      throw InvalidInput("sender " + std::to_string(i) + " produced a message of the wrong width");
    }
    messages.push_back(std::move(msg));
  }
  return messages;
}

Answer OneWayProtocol::answer(const HmpInstance& instance, std::size_t shared_seed, std::size_t private_seed) const {
  const auto messages = send(instance, shared_seed);
  return decoder(messages, view_of(instance, k), shared_seed, private_seed);
}

ErrorReport evaluate_protocol(const OneWayProtocol& protocol, const MatchingFamily& family,
                              const InputDistribution& distribution) {
  protocol.validate();
  const int n = family.n();
  if (n > 20) throw InvalidInput("exact evaluation enumerates 2^n strings; n > 20 is not supported");
  const int k = protocol.k;
  const int r = required_alpha_bits(family.t(), k);
  const double seeds = static_cast<double>(protocol.shared_seeds) * static_cast<double>(protocol.private_seeds);

  ErrorReport report;
  report.distribution = distribution.kind;
  for (int j = 1; j <= family.t(); ++j) {
    for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << n); ++cv) {
      HmpInstance inst = HmpInstance::with_index(n, k, r, static_cast<std::uint64_t>(j), BitString::from_uint(cv, static_cast<std::size_t>(n)));
      const PlayerView recipient = view_of(inst, k);
      std::size_t wrong = 0;
      for (std::size_t s = 0; s < protocol.shared_seeds; ++s) {
        const auto messages = protocol.send(inst, s);
        for (std::size_t d = 0; d < protocol.private_seeds; ++d) {
          if (!relation_holds(inst, family, protocol.decoder(messages, recipient, s, d))) ++wrong;
        }
      }
      report.per_input_errors.push_back({InputKey{static_cast<std::uint64_t>(j), inst.c()}, static_cast<double>(wrong) / seeds});
    }
  }

  double total_weight = 0.0;
  double weighted = 0.0;
  for (const auto& entry : report.per_input_errors) {
    report.worst_case_error = std::max(report.worst_case_error, entry.error);
    double w = 1.0;
    if (distribution.kind == DistributionKind::Explicit) {
      auto it = distribution.weights.find(entry.input);
      w = it == distribution.weights.end() ? 0.0 : it->second;
      if (w < 0) throw InvalidInput("distribution weights must be non-negative");
    }
    total_weight += w;
    weighted += w * entry.error;
  }
  if (total_weight <= 0) throw InvalidInput("distribution puts no weight on any valid input");
  report.distributional_error = weighted / total_weight;
  return report;
}

OneWayProtocol derandomize_senders(const OneWayProtocol& protocol) {
  protocol.validate();
  if (protocol.shared_seeds == 1) return protocol;
  auto original = std::make_shared<const OneWayProtocol>(protocol);
  const std::size_t seeds = protocol.shared_seeds;

  OneWayProtocol out;
  out.k = protocol.k;
  out.shared_seeds = 1;
  out.private_seeds = seeds * protocol.private_seeds;
  out.label = protocol.label + "+derandomized";
  for (int i = 0; i < protocol.k - 1; ++i) {
    const int width = protocol.message_bits[static_cast<std::size_t>(i)];
    out.message_bits.push_back(static_cast<int>(seeds) * width);
    out.senders.push_back([original, i, width, seeds](const PlayerView& view, std::size_t) {
      BitString all;
      for (std::size_t s = 0; s < seeds; ++s) {
        BitString part = original->senders[static_cast<std::size_t>(i)](view, s);
        if (static_cast<int>(part.size()) != width) throw InvalidInput("sender produced a message of the wrong width");
        all.append(part);
      }
      return all;
    });
  }
  out.decoder = [original](std::span<const BitString> messages, const PlayerView& view, std::size_t,
                           std::size_t private_seed) {
    const std::size_t s = private_seed / original->private_seeds;
    const std::size_t d = private_seed % original->private_seeds;
    std::vector<BitString> slices;
    for (std::size_t i = 0; i < messages.size(); ++i) {
      const auto width = static_cast<std::size_t>(original->message_bits[i]);
      slices.push_back(messages[i].slice(s * width, width));
    }
    return original->decoder(slices, view, s, d);
  };
  return out;
}

SeedReduction reduce_seed_set(const OneWayProtocol& protocol, const MatchingFamily& family, double target_delta,
                              std::size_t sample_count, std::uint64_t seed) {
  protocol.validate();
  if (sample_count == 0) throw InvalidInput("reduce_seed_set needs a positive sample count");
  SeedReduction result;
  result.target_delta = target_delta;
  result.original_error = evaluate_protocol(protocol, family).worst_case_error;

  std::vector<std::size_t> pool(protocol.shared_seeds);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  if (sample_count < pool.size()) {
    Rng rng(seed);
    for (std::size_t i = 0; i < sample_count; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(sample_count);
    std::sort(pool.begin(), pool.end());
  }
  result.kept_seeds = pool;

  auto original = std::make_shared<const OneWayProtocol>(protocol);
  auto kept = std::make_shared<const std::vector<std::size_t>>(pool);
  OneWayProtocol out;
  out.k = protocol.k;
  out.message_bits = protocol.message_bits;
  out.shared_seeds = pool.size();
  out.private_seeds = protocol.private_seeds;
  out.label = protocol.label + "+reduced";
  for (int i = 0; i < protocol.k - 1; ++i) {
    out.senders.push_back([original, kept, i](const PlayerView& view, std::size_t s) {
      return original->senders[static_cast<std::size_t>(i)](view, (*kept)[s]);
    });
  }
  out.decoder = [original, kept](std::span<const BitString> messages, const PlayerView& view, std::size_t s,
                                 std::size_t d) { return original->decoder(messages, view, (*kept)[s], d); };
  result.measured_error = evaluate_protocol(out, family).worst_case_error;
  result.within_target = result.measured_error <= result.original_error + target_delta + 1e-12;
  result.protocol = std::move(out);
  return result;
}

BitString MessageBundle::concatenated() const {
  BitString all;
  for (const auto& row : messages) {
    for (const auto& m : row) all.append(m);
  }
  return all;
}

const BitString& MessageBundle::message_for(int sender, std::span<const BitString> alphas) const {
  if (sender < 1 || sender > k - 1) throw InvalidInput("sender out of range");
  if (static_cast<int>(alphas.size()) != k - 1) throw InvalidInput("bundle lookup needs k-1 index strings");
  const auto& table = lookup_[static_cast<std::size_t>(sender - 1)];
  auto it = table.find(projection_without(alphas, sender));
  if (it == table.end()) throw InvalidInput("index strings not covered by the bundle");
  return messages[it->second][static_cast<std::size_t>(sender - 1)];
}

std::vector<BitString> MessageBundle::messages_for(std::span<const BitString> alphas) const {
  std::vector<BitString> out;
  for (int i = 1; i <= k - 1; ++i) out.push_back(message_for(i, alphas));
  return out;
}

MessageBundle build_message_bundle(const OneWayProtocol& protocol, const BitString& c, int r) {
  protocol.validate();
  if (!protocol.deterministic_senders()) {
    throw InvalidInput("message bundles need deterministic senders; derandomize them first");
  }
  MessageBundle bundle;
  bundle.k = protocol.k;
  bundle.r = r;
  const int k = protocol.k;
  if (k == 2) {
    bundle.tuples.push_back({BitString(static_cast<std::size_t>(r))});
  } else {
    bundle.tuples = special_inputs(r, k);
  }
  bundle.lookup_.resize(static_cast<std::size_t>(k - 1));
  for (std::size_t ti = 0; ti < bundle.tuples.size(); ++ti) {
    const auto& tuple = bundle.tuples[ti];
    std::vector<BitString> row;
    for (int i = 1; i <= k - 1; ++i) {
      BitString msg = protocol.senders[static_cast<std::size_t>(i - 1)](sender_view(k, i, tuple, c), 0);
      if (static_cast<int>(msg.size()) != protocol.message_bits[static_cast<std::size_t>(i - 1)]) {
        throw InvalidInput("sender produced a message of the wrong width");
      }
      bundle.total_bits += static_cast<int>(msg.size());
      row.push_back(std::move(msg));
      bundle.lookup_[static_cast<std::size_t>(i - 1)].emplace(projection_without(tuple, i), ti);
    }
    bundle.messages.push_back(std::move(row));
  }
  return bundle;
}

OneWayProtocol constant_protocol(int k, int bits, const MatchingFamily& family) {
  if (k < 2 || bits < 0) throw InvalidInput("constant_protocol needs k >= 2 and bits >= 0");
  auto fam = std::make_shared<const MatchingFamily>(family);
  OneWayProtocol p;
  p.k = k;
  p.label = "constant";
  for (int i = 0; i < k - 1; ++i) {
    p.message_bits.push_back(bits);
    p.senders.push_back([bits](const PlayerView&, std::size_t) { return BitString(static_cast<std::size_t>(bits)); });
  }
  p.decoder = [fam](std::span<const BitString>, const PlayerView& view, std::size_t, std::size_t) {
    const Edge e = matching_for(*fam, view).front();
    return Answer{e.u, e.v, false};
  };
  return p;
}

OneWayProtocol verbatim_protocol(int k, const MatchingFamily& family) {
  if (k < 2) throw InvalidInput("verbatim_protocol needs k >= 2");
  auto fam = std::make_shared<const MatchingFamily>(family);
  OneWayProtocol p;
  p.k = k;
  p.label = "verbatim";
  for (int i = 1; i <= k - 1; ++i) {
    p.message_bits.push_back(i == 1 ? family.n() : 0);
    p.senders.push_back([i](const PlayerView& view, std::size_t) { return i == 1 ? *view.c : BitString(); });
  }
  p.decoder = [fam](std::span<const BitString> messages, const PlayerView& view, std::size_t, std::size_t) {
    const Edge e = matching_for(*fam, view).front();
    return Answer{e.u, e.v, parity(messages[0], e)};
  };
  return p;
}

OneWayProtocol edge_parity_protocol(int k, const MatchingFamily& family, std::optional<std::vector<Edge>> edges) {
  if (k < 2) throw InvalidInput("edge_parity_protocol needs k >= 2");
  std::vector<Edge> chosen;
  if (edges) {
    if (static_cast<int>(edges->size()) != family.t()) throw InvalidInput("edge_parity_protocol needs one edge per matching");
    for (int j = 1; j <= family.t(); ++j) {
      const Edge e = Edge::make((*edges)[static_cast<std::size_t>(j - 1)].u, (*edges)[static_cast<std::size_t>(j - 1)].v);
      const auto& m = family.matching(j);
      if (!std::binary_search(m.begin(), m.end(), e)) throw InvalidInput("chosen edge is not in its matching");
      chosen.push_back(e);
    }
  } else {
    for (const auto& m : family.matchings()) chosen.push_back(m.front());
  }
  auto picks = std::make_shared<const std::vector<Edge>>(std::move(chosen));
  auto fam = std::make_shared<const MatchingFamily>(family);
  OneWayProtocol p;
  p.k = k;
  p.label = "edge-parity";
  for (int i = 1; i <= k - 1; ++i) {
    p.message_bits.push_back(i == 1 ? family.t() : 0);
    p.senders.push_back([i, picks](const PlayerView& view, std::size_t) {
      BitString out;
      if (i == 1) {
        for (const Edge& e : *picks) out.push_back(parity(*view.c, e));
      }
      return out;
    });
  }
  p.decoder = [picks, fam](std::span<const BitString> messages, const PlayerView& view, std::size_t, std::size_t) {
    matching_for(*fam, view);
    const std::size_t j = matching_position(view);
    const Edge e = (*picks)[j];
    return Answer{e.u, e.v, messages[0][j]};
  };
  return p;
}

OneWayProtocol guess_protocol(int k, const MatchingFamily& family) {
  OneWayProtocol p = constant_protocol(k, 0, family);
  auto fam = std::make_shared<const MatchingFamily>(family);
  p.label = "guess";
  p.private_seeds = 2;
  p.decoder = [fam](std::span<const BitString>, const PlayerView& view, std::size_t, std::size_t d) {
    const Edge e = matching_for(*fam, view).front();
    return Answer{e.u, e.v, d == 1};
  };
  return p;
}

OneWayProtocol random_table_protocol(int k, std::vector<int> message_bits, const MatchingFamily& family,
                                     std::uint64_t seed) {
  OneWayProtocol p = random_shared_protocol(k, std::move(message_bits), family, 1, 1, seed);
  p.label = "random-table";
  return p;
}

OneWayProtocol random_shared_protocol(int k, std::vector<int> message_bits, const MatchingFamily& family,
                                      std::size_t shared_seeds, std::size_t private_seeds, std::uint64_t seed) {
  if (k < 2 || static_cast<int>(message_bits.size()) != k - 1) throw InvalidInput("random protocol needs k-1 message widths");
  if (shared_seeds == 0 || private_seeds == 0) throw InvalidInput("random protocol needs non-empty seed sets");
  auto fam = std::make_shared<const MatchingFamily>(family);
  OneWayProtocol p;
  p.k = k;
  p.label = "random-shared";
  p.shared_seeds = shared_seeds;
  p.private_seeds = private_seeds;
  p.message_bits = message_bits;
  for (int i = 0; i < k - 1; ++i) {
    const int width = message_bits[static_cast<std::size_t>(i)];
    if (width < 0) throw InvalidInput("message widths must be non-negative");
    p.senders.push_back([seed, width](const PlayerView& view, std::size_t s) {
      return bits_from_hash(hash_view(derive_seed(seed, s), view), width);
    });
  }
  p.decoder = [fam, seed](std::span<const BitString> messages, const PlayerView& view, std::size_t s, std::size_t d) {
    const Matching& m = matching_for(*fam, view);
    std::uint64_t h = mix64(derive_seed(seed, s) ^ 0xdec0de);
    for (const auto& msg : messages) h = hash_bits(h, msg);
    h = hash_view(h, view);
    const Edge e = m[h % m.size()];
    bool bit = ((h >> 40) & 1U) != 0;
    if (d > 0) bit ^= (mix64(h + d) & 1U) != 0;
    return Answer{e.u, e.v, bit};
  };
  return p;
}

std::string view_key(const PlayerView& view) {
  std::string key;
  for (int pos = 1; pos <= view.k - 1; ++pos) {
    if (pos > 1) key += ',';
    const BitString* a = view.alpha(pos);
    key += a ? a->to_string() : "*";
  }
  key += '|';
  if (view.c) key += view.c->to_string();
  return key;
}

std::string decoder_key(std::span<const BitString> messages, std::span<const BitString> alphas) {
  std::string key;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i > 0) key += ',';
    key += messages[i].to_string();
  }
  key += '|';
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0) key += ',';
    key += alphas[i].to_string();
  }
  return key;
}

ProtocolTable tabulate(const OneWayProtocol& protocol, const MatchingFamily& family) {
  protocol.validate();
  if (!protocol.deterministic_senders()) throw InvalidInput("only protocols with deterministic senders can be tabulated");
  const int n = family.n();
  if (n > 16) throw InvalidInput("tabulation enumerates 2^n strings; n > 16 is not supported");
  ProtocolTable table;
  table.k = protocol.k;
  table.n = n;
  table.r = required_alpha_bits(family.t(), protocol.k);
  table.message_bits = protocol.message_bits;
  table.private_seeds = protocol.private_seeds;
  table.senders.resize(static_cast<std::size_t>(protocol.k - 1));
  for (int j = 1; j <= family.t(); ++j) {
    for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << n); ++cv) {
      HmpInstance inst = HmpInstance::with_index(n, protocol.k, table.r, static_cast<std::uint64_t>(j),
                                                 BitString::from_uint(cv, static_cast<std::size_t>(n)));
      const auto messages = protocol.send(inst, 0);
      for (int i = 1; i <= protocol.k - 1; ++i) {
        table.senders[static_cast<std::size_t>(i - 1)].emplace(view_key(view_of(inst, i)), messages[static_cast<std::size_t>(i - 1)].to_string());
      }
      const std::string key = decoder_key(messages, inst.alphas());
      if (table.decoder.count(key)) continue;
      const PlayerView recipient = view_of(inst, protocol.k);
      std::vector<Answer> answers;
      for (std::size_t d = 0; d < protocol.private_seeds; ++d) answers.push_back(protocol.decoder(messages, recipient, 0, d));
      table.decoder.emplace(key, std::move(answers));
    }
  }
  return table;
}

OneWayProtocol protocol_from_table(const ProtocolTable& table) {
  if (table.k < 2 || static_cast<int>(table.senders.size()) != table.k - 1 ||
      static_cast<int>(table.message_bits.size()) != table.k - 1) {
    throw InvalidInput("protocol table has an inconsistent sender count");
  }
  if (table.private_seeds == 0) throw InvalidInput("protocol table needs at least one private seed");
  for (const auto& [key, answers] : table.decoder) {
    if (answers.size() != table.private_seeds) throw InvalidInput("decoder entry has the wrong number of seeds");
  }
  auto shared = std::make_shared<const ProtocolTable>(table);
  OneWayProtocol p;
  p.k = table.k;
  p.label = "table";
  p.message_bits = table.message_bits;
  p.private_seeds = table.private_seeds;
  for (int i = 0; i < table.k - 1; ++i) {
    p.senders.push_back([shared, i](const PlayerView& view, std::size_t) {
      const auto& senders = shared->senders[static_cast<std::size_t>(i)];
      auto it = senders.find(view_key(view));
      if (it == senders.end()) throw InvalidInput("view missing from sender table: " + view_key(view));
      return BitString::parse(it->second);
    });
  }
  p.decoder = [shared](std::span<const BitString> messages, const PlayerView& view, std::size_t, std::size_t d) {
    const auto alphas = alphas_of(view);
    auto it = shared->decoder.find(decoder_key(messages, alphas));
    if (it == shared->decoder.end()) throw InvalidInput("decoder table has no entry for " + decoder_key(messages, alphas));
    return it->second[d];
  };
  return p;
}

}  // namespace hmp
