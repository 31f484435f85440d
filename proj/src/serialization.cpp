#include "hmp/serialization.hpp"

#include <fstream>
#include <sstream>

#include "hmp/errors.hpp"

namespace hmp::io {

std::string emit_family(const MatchingFamily& family, const std::optional<Json>& config) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"n\": " << family.n() << ",\n";
  os << "  \"t\": " << family.t() << ",\n";
  os << "  \"d\": ";
  if (family.girth_parameter()) {
    os << *family.girth_parameter();
  } else {
    os << "null";
  }
  os << ",\n";
  os << "  \"construction\": \"" << to_string(family.construction()) << "\",\n";
  os << "  \"matchings\": [";
  for (int j = 0; j < family.t(); ++j) {
    os << (j == 0 ? "\n    [" : ",\n    [");
    const Matching& m = family.matchings()[static_cast<std::size_t>(j)];
    for (std::size_t e = 0; e < m.size(); ++e) {
      if (e) os << ",";
      os << "[" << m[e].u << "," << m[e].v << "]";
    }
    os << "]";
  }
  os << (family.t() ? "\n  ]" : "]");
  if (config) os << ",\n  \"config\": " << config->dump();
  os << "\n}\n";
  return os.str();
}

FamilyFile parse_family(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("family file is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw InvalidInput("family file must be an object");
    const int n = j.at("n").get<int>();
    const int t = j.at("t").get<int>();
    std::optional<int> d;
    if (!j.at("d").is_null()) d = j.at("d").get<int>();
    const Construction construction = construction_from_string(j.at("construction").get<std::string>());
    std::vector<Matching> matchings;
    for (const auto& jm : j.at("matchings")) {
      Matching m;
      for (const auto& je : jm) {
        if (!je.is_array() || je.size() != 2) throw InvalidInput("edges must be two-element arrays");
        m.push_back(Edge::make(je[0].get<int>(), je[1].get<int>()));
      }
      matchings.push_back(std::move(m));
    }
    if (static_cast<int>(matchings.size()) != t) throw InvalidInput("t does not match the number of matchings");
    FamilyFile out{MatchingFamily(n, std::move(matchings), d, construction), std::nullopt};
    if (j.contains("config")) out.config = j.at("config");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed family file: ") + e.what());
  }
}

Json to_json(const ProtocolTable& table) {
  Json j;
  j["k"] = table.k;
  j["n"] = table.n;
  j["r"] = table.r;
  j["message_bits"] = table.message_bits;
  j["private_seeds"] = table.private_seeds;
  Json senders = Json::array();
  for (const auto& s : table.senders) {
    Json m = Json::object();
    for (const auto& [key, msg] : s) m[key] = msg;
    senders.push_back(std::move(m));
  }
  j["senders"] = std::move(senders);
  Json dec = Json::object();
  for (const auto& [key, answers] : table.decoder) {
    Json list = Json::array();
    for (const Answer& a : answers) list.push_back(Json::array({a.i1, a.i2, a.e ? 1 : 0}));
    dec[key] = std::move(list);
  }
  j["decoder"] = std::move(dec);
  return j;
}

ProtocolTable protocol_table_from_json(const Json& j) {
  try {
    ProtocolTable t;
    t.k = j.at("k").get<int>();
    t.n = j.at("n").get<int>();
    t.r = j.at("r").get<int>();
    t.message_bits = j.at("message_bits").get<std::vector<int>>();
    t.private_seeds = j.at("private_seeds").get<std::size_t>();
    for (const auto& s : j.at("senders")) {
      std::map<std::string, std::string> m;
      for (const auto& [key, msg] : s.items()) m.emplace(key, msg.get<std::string>());
      t.senders.push_back(std::move(m));
    }
    for (const auto& [key, list] : j.at("decoder").items()) {
      std::vector<Answer> answers;
      for (const auto& a : list) {
        if (!a.is_array() || a.size() != 3) throw InvalidInput("decoder answers must be [i1, i2, e]");
        answers.push_back(Answer{a[0].get<int>(), a[1].get<int>(), a[2].get<int>() != 0});
      }
      t.decoder.emplace(key, std::move(answers));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed protocol table: ") + e.what());
  }
}

Json to_json(const CostReport& cost) {
  return Json{{"qubits", cost.qubits}, {"classical_bits", cost.classical_bits}, {"total", cost.total}};
}

Json to_json(const EdgeSpanReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["min_touched"] = r.min_touched;
  j["max_touched"] = r.max_touched;
  j["mean_touched"] = r.mean_touched;
  j["k"] = r.k ? Json(*r.k) : Json(nullptr);
  j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  j["violation"] = r.violation;
  return j;
}

Json to_json(const ExtractionRecord& rec) {
  Json j;
  Json a = Json::array();
  for (const Edge& e : rec.A) a.push_back(Json::array({e.u, e.v}));
  j["A"] = std::move(a);
  j["B"] = rec.B.to_string();
  j["support"] = rec.support;
  j["s"] = rec.s;
  j["bundle_bits"] = rec.bundle_bits;
  j["matchings_used"] = rec.matchings_used;
  return j;
}

Json to_json(const AccountingReport& r) {
  Json j;
  j["mode"] = r.mode == AccountingMode::Exact ? "exact" : "sampled";
  j["n"] = r.n;
  j["k"] = r.k;
  j["t"] = r.t;
  j["r"] = r.r;
  j["samples"] = r.samples;
  j["bundle_bits"] = r.bundle_bits;
  j["s_min"] = r.min_s;
  j["s_max"] = r.max_s;
  j["s_mean"] = r.mean_s;
  j["I_AB_C"] = r.i_ab_c;
  j["I_A_C"] = r.i_a_c;
  j["I_B_C_given_A"] = r.i_b_c_given_a;
  j["I_W_C"] = r.i_w_c;
  j["H_W"] = r.h_w;
  j["success_rates"] = r.success_rates;
  j["min_success"] = r.min_success;
  j["margin"] = r.margin;
  j["epsilon_measured"] = r.epsilon_measured;
  j["xi"] = r.xi;
  Json bounds;
  bounds["span_k"] = r.span_k ? Json(*r.span_k) : Json(nullptr);
  bounds["span_lower_bound"] = r.span_lower_bound ? Json(*r.span_lower_bound) : Json(nullptr);
  bounds["span_bound_violated"] = r.span_bound_violated;
  bounds["bundle_upper_bound"] = r.bundle_bits;
  bounds["bundle_bound_holds"] = r.bundle_bound_holds;
  j["bounds"] = std::move(bounds);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
  if (path.empty() || path == "-") {
    stdout_stream << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace hmp::io
