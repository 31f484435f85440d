#pragma once

// Text formats: the family file, protocol tables and experiment reports.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hmp/classical_sim.hpp"
#include "hmp/graph.hpp"
#include "hmp/info_metrics.hpp"
#include "hmp/matching_families.hpp"
#include "hmp/quantum_sim.hpp"

namespace hmp::io {

using Json = nlohmann::ordered_json;

/// A family file: the family plus, optionally, the config that produced it.
struct FamilyFile {
  MatchingFamily family;
  std::optional<Json> config;
};

/// Fixed layout, one matching per line, fields in the order n, t, d,
/// construction, matchings[, config]. Parsing and re-emitting is lossless.
std::string emit_family(const MatchingFamily& family, const std::optional<Json>& config = {});
FamilyFile parse_family(std::string_view text);

Json to_json(const ProtocolTable& table);
ProtocolTable protocol_table_from_json(const Json& j);

Json to_json(const CostReport& cost);
Json to_json(const EdgeSpanReport& report);
Json to_json(const ExtractionRecord& record);
Json to_json(const AccountingReport& report);

std::string read_file(const std::string& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text, std::ostream& stdout_stream);

}  // namespace hmp::io
