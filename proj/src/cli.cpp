#include "hmp/cli.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "hmp/classical_sim.hpp"
#include "hmp/errors.hpp"
#include "hmp/info_metrics.hpp"
#include "hmp/matching_families.hpp"
#include "hmp/quantum_sim.hpp"
#include "hmp/serialization.hpp"

namespace hmp::cli {

namespace {

using io::Json;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

struct FamilySource {
  std::string file;
  std::string kind = "cyclic";
  int n = 4;
  int q = 2;
  int t = 0;
  int d = 2;
  int max_attempts = 100;
};

struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_family_options(CLI::App* cmd, FamilySource& src, bool with_file) {
  if (with_file) cmd->add_option("--family", src.file, "Family file (overrides --kind)");
  cmd->add_option("--kind", src.kind, "Family construction")
      ->check(CLI::IsMember({"cyclic", "pg", "girth"}))
      ->capture_default_str();
  cmd->add_option("--n", src.n, "Vertex count (cyclic, girth)")->capture_default_str();
  cmd->add_option("--q", src.q, "Prime order of the projective plane (pg)")->capture_default_str();
  cmd->add_option("--t", src.t, "Matchings (girth; 0 keeps the whole family elsewhere)")->capture_default_str();
  cmd->add_option("--d", src.d, "Girth parameter: no cycle of length <= 2d (girth)")->capture_default_str();
  cmd->add_option("--max-attempts", src.max_attempts, "Restarts of the girth search")->capture_default_str();
}

Json family_config(const FamilySource& src) {
  Json j;
  if (!src.file.empty()) {
    j["family"] = src.file;
    return j;
  }
  j["kind"] = src.kind;
  if (src.kind == "pg") {
    j["q"] = src.q;
  } else {
    j["n"] = src.n;
  }
  if (src.kind == "girth") {
    j["t"] = src.t;
    j["d"] = src.d;
    j["max_attempts"] = src.max_attempts;
  }
  return j;
}

MatchingFamily load_family(const FamilySource& src, std::uint64_t seed) {
  if (!src.file.empty()) return io::parse_family(io::read_file(src.file)).family;
  if (src.kind == "cyclic") return cyclic_family(src.n);
  if (src.kind == "pg") return projective_plane_family(src.q);
  auto fam = random_girth_family(src.n, src.t, src.d, derive_seed(seed, 0), src.max_attempts);
  if (!fam) {
    throw NotFound("no " + std::to_string(src.t) + "-regular bipartite graph on " + std::to_string(src.n) +
                   " vertices without cycles of length <= " + std::to_string(2 * src.d) + " found in " +
                   std::to_string(src.max_attempts) + " attempts");
  }
  return *fam;
}

Json base_config(const std::string& command, const Common& common, const std::string& format) {
  Json j;
  j["command"] = command;
  j["seed"] = common.seed;
  j["format"] = format;
  return j;
}

std::string resolve_format(const Common& common, const std::string& fallback) {
  return common.format.empty() ? fallback : common.format;
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_cell(v[i]);
    return s;
  }
  return v.dump();
}

/// "# config: {...}" then a header line and one line per row; every row must
/// have the header's keys in order.
std::string to_csv(const Json& config, const Json& rows) {
  std::ostringstream os;
  os << "# config: " << config.dump() << "\n";
  if (rows.empty()) return os.str();
  bool first = true;
  for (const auto& [key, value] : rows.front().items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << "\n";
  for (const auto& row : rows) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      os << (first ? "" : ",") << csv_cell(value);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::string to_json_text(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_gen_family(const Common& common, const FamilySource& src, std::ostream& out) {
  const std::string format = resolve_format(common, "json");
  Json config = base_config("gen-family", common, format);
  config.update(family_config(src));
  const MatchingFamily family = load_family(src, common.seed);
  std::string text;
  if (format == "json") {
    text = io::emit_family(family, config);
  } else {
    Json rows = Json::array();
    for (int j = 1; j <= family.t(); ++j) {
      for (const Edge& e : family.matching(j)) rows.push_back(Json{{"matching", j}, {"u", e.u}, {"v", e.v}});
    }
    text = to_csv(config, rows);
  }
  io::write_output(common.out, text, out);
  return kOk;
}

int cmd_run_quantum(const Common& common, const FamilySource& src, int k, std::uint64_t runs, bool exhaustive,
                    std::ostream& out) {
  const std::string format = resolve_format(common, "json");
  const MatchingFamily family = load_family(src, common.seed);
  const int r = required_alpha_bits(family.t(), k);
  Json config = base_config("run-quantum", common, format);
  config.update(family_config(src));
  config["k"] = k;
  config["r"] = r;
  config["runs"] = runs;
  config["exhaustive"] = exhaustive;
  if (exhaustive && family.n() > 16) throw InvalidInput("exhaustive runs are limited to n <= 16");

  Json records = Json::array();
  std::uint64_t failures = 0;
  auto one = [&](std::uint64_t run, std::uint64_t index, const BitString& c, std::uint64_t seed) {
    const HmpInstance instance = HmpInstance::with_index(family.n(), k, r, index, c);
    const QuantumRun q = run_quantum_smp(instance, family, seed);
    const bool ok = relation_holds(instance, family, q.answer);
    if (!ok) ++failures;
    Json rec;
    rec["run"] = run;
    rec["index"] = index;
    rec["c"] = c.to_string();
    rec["i1"] = q.answer.i1;
    rec["i2"] = q.answer.i2;
    rec["e"] = q.answer.e ? 1 : 0;
    rec["correct"] = ok;
    rec["qubits"] = q.cost.qubits;
    rec["classical_bits"] = q.cost.classical_bits;
    rec["total"] = q.cost.total;
    records.push_back(std::move(rec));
  };

  std::uint64_t run = 0;
  if (exhaustive) {
    for (int j = 1; j <= family.t(); ++j) {
      for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << family.n()); ++cv) {
        one(run, static_cast<std::uint64_t>(j), BitString::from_uint(cv, static_cast<std::size_t>(family.n())),
            derive_seed(common.seed, run));
        ++run;
      }
    }
  } else {
    for (; run < runs; ++run) {
      Rng rng(derive_seed(common.seed, run));
      const std::uint64_t index = 1 + rng.uniform(static_cast<std::uint64_t>(family.t()));
      BitString c(static_cast<std::size_t>(family.n()));
      for (int i = 0; i < family.n(); ++i) c.set(static_cast<std::size_t>(i), rng.coin());
      one(run, index, c, rng.next());
    }
  }

  std::string text;
  if (format == "json") {
    Json doc;
    doc["config"] = config;
    doc["cost"] = io::to_json(quantum_cost(family.n(), family.t()));
    doc["runs"] = records.size();
    doc["failures"] = failures;
    doc["records"] = records;
    text = to_json_text(doc);
  } else {
    text = to_csv(config, records);
  }
  io::write_output(common.out, text, out);
  return failures == 0 ? kOk : kFailure;
}

struct BruteOptions {
  double epsilon = 0.0;
  std::string mode = "deterministic";
  int shared_seeds = 1;
  std::uint64_t max_nodes = 200'000'000;
  double max_candidates = 1e6;
};

SearchOptions search_options(const BruteOptions& b) {
  SearchOptions o;
  o.mode = b.mode == "shared" ? SearchMode::SharedSeeds : SearchMode::Deterministic;
  o.shared_seeds = b.shared_seeds;
  o.max_nodes = b.max_nodes;
  o.max_candidates = b.max_candidates;
  return o;
}

int cmd_bruteforce(const Common& common, const FamilySource& src, const BruteOptions& b, std::ostream& out) {
  const std::string format = resolve_format(common, "json");
  const MatchingFamily family = load_family(src, common.seed);
  Json config = base_config("bruteforce-classical", common, format);
  config.update(family_config(src));
  config["k"] = 2;
  config["epsilon"] = b.epsilon;
  config["mode"] = b.mode;
  config["shared_seeds"] = b.shared_seeds;
  config["max_nodes"] = b.max_nodes;
  config["max_candidates"] = b.max_candidates;

  const BruteForceResult res = bruteforce_min_cost(family, 2, b.epsilon, search_options(b));
  const CostReport q = quantum_cost(family.n(), family.t());
  Json row;
  row["n"] = family.n();
  row["t"] = family.t();
  row["epsilon"] = b.epsilon;
  row["classical_min_cost"] = res.cost;
  row["worst_case_error"] = res.worst_case_error;
  row["nodes_explored"] = res.nodes_explored;
  row["quantum_total_cost"] = q.total;

  std::string text;
  if (format == "json") {
    Json doc;
    doc["config"] = config;
    doc["result"] = row;
    doc["partitions"] = res.partitions;
    if (res.protocol.deterministic_senders()) doc["protocol"] = io::to_json(tabulate(res.protocol, family));
    text = to_json_text(doc);
  } else {
    text = to_csv(config, Json::array({row}));
  }
  io::write_output(common.out, text, out);
  return kOk;
}

struct ExtractOptions {
  int k = 2;
  std::string protocol = "edge-parity";
  std::string table;
  int bits = 1;
  std::string c;
  std::string mode = "exact";
  std::uint64_t samples = 100'000;
};

OneWayProtocol make_protocol(const ExtractOptions& x, const MatchingFamily& family, std::uint64_t seed) {
  if (x.protocol == "constant") return constant_protocol(x.k, x.bits, family);
  if (x.protocol == "verbatim") return verbatim_protocol(x.k, family);
  if (x.protocol == "edge-parity") return edge_parity_protocol(x.k, family);
  if (x.protocol == "guess") return guess_protocol(x.k, family);
  if (x.protocol == "random") {
    return random_table_protocol(x.k, std::vector<int>(static_cast<std::size_t>(x.k - 1), x.bits), family,
                                 derive_seed(seed, 1));
  }
  if (x.table.empty()) throw InvalidInput("--protocol table needs --table <file>");
  const auto table = io::protocol_table_from_json(Json::parse(io::read_file(x.table)));
  if (table.n != family.n() || table.k != x.k) throw InvalidInput("protocol table does not match the family or k");
  return protocol_from_table(table);
}

int cmd_extract(const Common& common, const FamilySource& src, const ExtractOptions& x, std::ostream& out) {
  const std::string format = resolve_format(common, "json");
  const MatchingFamily family = load_family(src, common.seed);
  Json config = base_config("extract", common, format);
  config.update(family_config(src));
  config["k"] = x.k;
  config["protocol"] = x.protocol;
  if (x.protocol == "table") config["table"] = x.table;
  config["bits"] = x.bits;
  config["c"] = x.c;
  config["mode"] = x.mode;
  config["samples"] = x.samples;

  const OneWayProtocol protocol = make_protocol(x, family, common.seed);
  std::optional<ExtractionRecord> record;
  if (!x.c.empty()) record = extract_AB(protocol, family, BitString::parse(x.c), derive_seed(common.seed, 2));
  AccountingOptions opts;
  opts.mode = x.mode == "exact" ? AccountingMode::Exact : AccountingMode::Sampled;
  opts.samples = x.samples;
  opts.seed = derive_seed(common.seed, 3);
  const AccountingReport report = information_accounting(protocol, family, opts);

  std::string text;
  if (format == "json") {
    Json doc;
    doc["config"] = config;
    doc["protocol_cost"] = protocol.cost();
    if (record) doc["extraction"] = io::to_json(*record);
    doc["accounting"] = io::to_json(report);
    text = to_json_text(doc);
  } else {
    Json row = io::to_json(report);
    Json flat;
    for (const auto& [key, value] : row.items()) {
      if (key == "bounds") {
        for (const auto& [bk, bv] : value.items()) flat[bk] = bv;
      } else {
        flat[key] = value;
      }
    }
    flat["protocol_cost"] = protocol.cost();
    if (record) {
      flat["record_s"] = record->s;
      flat["record_B"] = record->B.to_string();
    }
    text = to_csv(config, Json::array({flat}));
  }
  io::write_output(common.out, text, out);
  return kOk;
}

int cmd_sweep(const Common& common, const std::vector<int>& ns, const BruteOptions& b, std::ostream& out) {
  const std::string format = resolve_format(common, "csv");
  Json config = base_config("sweep", common, format);
  config["kind"] = "cyclic";
  config["ns"] = ns;
  config["epsilon"] = b.epsilon;
  config["mode"] = b.mode;
  config["shared_seeds"] = b.shared_seeds;
  config["max_nodes"] = b.max_nodes;
  config["max_candidates"] = b.max_candidates;

  std::vector<int> sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Json rows = Json::array();
  for (int n : sorted) {
    const MatchingFamily family = cyclic_family(n);
    const CostReport q = quantum_cost(n, family.t());
    const BruteForceResult res = bruteforce_min_cost(family, 2, b.epsilon, search_options(b));
    Json row;
    row["n"] = n;
    row["t"] = family.t();
    row["quantum_qubits"] = q.qubits;
    row["quantum_classical_bits"] = q.classical_bits;
    row["quantum_total_cost"] = q.total;
    row["classical_min_cost"] = res.cost;
    row["worst_case_error"] = res.worst_case_error;
    row["epsilon"] = b.epsilon;
    rows.push_back(std::move(row));
  }
  std::string text;
  if (format == "json") {
    Json doc;
    doc["config"] = config;
    doc["rows"] = rows;
    text = to_json_text(doc);
  } else {
    text = to_csv(config, rows);
  }
  io::write_output(common.out, text, out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hidden matching problem simulation lab", "hmp"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Root seed")->capture_default_str();
  app.add_option("--out", common.out, "Output path (stdout if omitted)");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  FamilySource gen_src;
  auto* gen = app.add_subcommand("gen-family", "Build a matching family and write the family file");
  add_family_options(gen, gen_src, false);

  FamilySource q_src;
  int q_k = 2;
  std::uint64_t q_runs = 100;
  bool q_all = false;
  auto* rq = app.add_subcommand("run-quantum", "Run the fingerprint protocol on random or all instances");
  add_family_options(rq, q_src, true);
  rq->add_option("--k", q_k, "Players")->check(CLI::Range(2, 64))->capture_default_str();
  rq->add_option("--runs", q_runs, "Random instances")->capture_default_str();
  rq->add_flag("--exhaustive", q_all, "Every c and every matching instead of random instances");

  FamilySource b_src;
  BruteOptions bopts;
  auto* bf = app.add_subcommand("bruteforce-classical", "Minimal one-way classical cost for k = 2");
  add_family_options(bf, b_src, true);
  auto add_search = [](CLI::App* cmd, BruteOptions& o) {
    cmd->add_option("--epsilon", o.epsilon, "Allowed worst-case error")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cmd->add_option("--mode", o.mode, "Sender randomness")
        ->check(CLI::IsMember({"deterministic", "shared"}))
        ->capture_default_str();
    cmd->add_option("--shared-seeds", o.shared_seeds, "Shared seeds in shared mode")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--max-nodes", o.max_nodes, "Partition-search node budget")->capture_default_str();
    cmd->add_option("--max-candidates", o.max_candidates, "Sender multisets allowed in shared mode")->capture_default_str();
  };
  add_search(bf, bopts);

  FamilySource x_src;
  ExtractOptions xopts;
  auto* ex = app.add_subcommand("extract", "Run the (A, B) extraction and information accounting");
  add_family_options(ex, x_src, true);
  ex->add_option("--k", xopts.k, "Players")->check(CLI::Range(2, 64))->capture_default_str();
  ex->add_option("--protocol", xopts.protocol, "Protocol under test")
      ->check(CLI::IsMember({"constant", "verbatim", "edge-parity", "guess", "random", "table"}))
      ->capture_default_str();
  ex->add_option("--table", xopts.table, "Protocol table file (--protocol table)");
  ex->add_option("--bits", xopts.bits, "Message bits per sender (constant, random)")->capture_default_str();
  ex->add_option("--c", xopts.c, "Also report the extraction record for this c");
  ex->add_option("--mode", xopts.mode, "Accounting mode")->check(CLI::IsMember({"exact", "sampled"}))->capture_default_str();
  ex->add_option("--samples", xopts.samples, "Samples in sampled mode")->capture_default_str();

  std::vector<int> ns{2, 4, 6};
  BruteOptions sopts;
  auto* sw = app.add_subcommand("sweep", "Quantum and classical cost over cyclic families");
  sw->add_option("--ns", ns, "Vertex counts")->delimiter(',')->capture_default_str();
  add_search(sw, sopts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e_stream;
    const int code = app.exit(e, o, e_stream);
    out << o.str();
    err << e_stream.str();
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*gen) return cmd_gen_family(common, gen_src, out);
    if (*rq) return cmd_run_quantum(common, q_src, q_k, q_runs, q_all, out);
    if (*bf) return cmd_bruteforce(common, b_src, bopts, out);
    if (*ex) return cmd_extract(common, x_src, xopts, out);
    if (*sw) return cmd_sweep(common, ns, sopts, out);
  } catch (const SearchRefused& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const NotFound& e) {
    err << "not found: " << e.what() << "\n";
    return kRefused;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace hmp::cli
