#include "cli/config.hpp"

#include "diqsdc/errors.hpp"

#include <algorithm>
#include <fstream>

namespace diqsdc::cli {

using nlohmann::json;

namespace {

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return item.key() == k; }) == allowed.end()) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("bad value for '") + key + "'");
    }
  }
}

ChannelParams parse_channel(const json& j) {
  expect_keys(j, {"distance_km", "alpha_db_per_km", "p", "device_efficiency"}, "channel");
  ChannelParams ch;
  read(j, "distance_km", ch.distance_km);
  read(j, "alpha_db_per_km", ch.alpha_db_per_km);
  read(j, "p", ch.p);
  read(j, "device_efficiency", ch.device_efficiency);
  return ch;
}

EveModel parse_eve(const json& j) {
  expect_keys(j, {"fraction_round1", "fraction_round2"}, "eve");
  EveModel eve;
  read(j, "fraction_round1", eve.fraction_round1);
  read(j, "fraction_round2", eve.fraction_round2);
  return eve;
}

}  // namespace

ProtocolConfig parse_protocol_config(const json& j) {
  expect_keys(j,
              {"n_pairs", "channel", "variant", "check_fraction", "target_fidelity", "max_k",
               "eve", "seed", "bell_analysis_mode", "min_check_pairs", "threads", "payload"},
              "config");
  ProtocolConfig cfg;
  read(j, "n_pairs", cfg.n_pairs);
  if (j.contains("channel")) cfg.channel = parse_channel(j.at("channel"));
  if (auto it = j.find("variant"); it != j.end()) {
    const std::string v = it->get<std::string>();
    if (v == "original") {
      cfg.variant = Variant::Original;
    } else if (v == "modified") {
      cfg.variant = Variant::Modified;
    } else {
      throw ConfigError("variant must be 'original' or 'modified'");
    }
  }
  read(j, "check_fraction", cfg.check_fraction);
  read(j, "target_fidelity", cfg.target_fidelity);
  read(j, "max_k", cfg.max_k);
  if (j.contains("eve")) cfg.eve = parse_eve(j.at("eve"));
  read(j, "seed", cfg.seed);
  if (auto it = j.find("bell_analysis_mode"); it != j.end()) {
    const std::string m = it->get<std::string>();
    if (m == "complete") {
      cfg.bell_analysis_mode = BellAnalysisMode::Complete;
    } else if (m == "linear_optics") {
      cfg.bell_analysis_mode = BellAnalysisMode::LinearOptics;
    } else {
      throw ConfigError("bell_analysis_mode must be 'complete' or 'linear_optics'");
    }
  }
  read(j, "min_check_pairs", cfg.min_check_pairs);
  read(j, "threads", cfg.threads);
  if (auto it = j.find("payload"); it != j.end()) {
    if (!it->is_array() || it->empty())
      throw ConfigError("payload must be a non-empty array of dibits");
    std::vector<MessageDibit> payload;
    for (const auto& v : *it) {
      const int d = v.get<int>();
      if (d < 0 || d > 3) throw ConfigError("payload dibit out of range 0..3");
      payload.push_back(MessageDibit{static_cast<std::uint8_t>(d)});
    }
    cfg.payload = std::move(payload);
  }
  return cfg;
}

ProtocolConfig load_protocol_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_protocol_config(j);
}

json emit_protocol_config(const ProtocolConfig& cfg) {
  json j;
  j["n_pairs"] = cfg.n_pairs;
  j["channel"] = {{"distance_km", cfg.channel.distance_km},
                  {"alpha_db_per_km", cfg.channel.alpha_db_per_km},
                  {"p", cfg.channel.p},
                  {"device_efficiency", cfg.channel.device_efficiency}};
  j["variant"] = cfg.variant == Variant::Original ? "original" : "modified";
  j["check_fraction"] = cfg.check_fraction;
  j["target_fidelity"] = cfg.target_fidelity;
  j["max_k"] = cfg.max_k;
  if (cfg.eve) {
    j["eve"] = {{"fraction_round1", cfg.eve->fraction_round1},
                {"fraction_round2", cfg.eve->fraction_round2}};
  }
  j["seed"] = cfg.seed;
  j["bell_analysis_mode"] =
      cfg.bell_analysis_mode == BellAnalysisMode::Complete ? "complete" : "linear_optics";
  j["min_check_pairs"] = cfg.min_check_pairs;
  j["threads"] = cfg.threads;
  if (cfg.payload) {
    json arr = json::array();
    for (MessageDibit m : *cfg.payload) arr.push_back(static_cast<int>(m.bits));
    j["payload"] = std::move(arr);
  }
  return j;
}

bool config_equal(const ProtocolConfig& a, const ProtocolConfig& b) {
  const bool eve_eq = a.eve.has_value() == b.eve.has_value() &&
                      (!a.eve || (a.eve->fraction_round1 == b.eve->fraction_round1 &&
                                  a.eve->fraction_round2 == b.eve->fraction_round2));
  const bool payload_eq =
      a.payload.has_value() == b.payload.has_value() &&
      (!a.payload || std::equal(a.payload->begin(), a.payload->end(), b.payload->begin(),
                                b.payload->end(),
                                [](MessageDibit x, MessageDibit y) { return x.bits == y.bits; }));
  return a.n_pairs == b.n_pairs && a.channel.distance_km == b.channel.distance_km &&
         a.channel.alpha_db_per_km == b.channel.alpha_db_per_km &&
         a.channel.p == b.channel.p &&
         a.channel.device_efficiency == b.channel.device_efficiency &&
         a.variant == b.variant && a.check_fraction == b.check_fraction &&
         a.target_fidelity == b.target_fidelity && a.max_k == b.max_k && eve_eq &&
         a.seed == b.seed && a.bell_analysis_mode == b.bell_analysis_mode &&
         a.min_check_pairs == b.min_check_pairs && a.threads == b.threads && payload_eq;
}

json report_stats(const TranscriptStats& stats) {
  const char* stage = stats.aborted_at == AbortStage::None
                          ? "none"
                          : (stats.aborted_at == AbortStage::Round1 ? "round1" : "round2");
  json j;
  j["aborted_at"] = stage;
  j["s1"] = {{"value", stats.s1.value}, {"stderr", stats.s1.stderr_}};
  j["q1"] = {{"value", stats.q1.value}, {"stderr", stats.q1.stderr_}};
  j["s2"] = {{"value", stats.s2.value}, {"stderr", stats.s2.stderr_}};
  j["q2"] = {{"value", stats.q2.value}, {"stderr", stats.q2.stderr_}};
  j["r_loss_empirical"] = stats.r_loss_empirical;
  j["r_error_empirical"] = stats.r_error_empirical;
  j["dibits_sent"] = stats.dibits_sent;
  j["dibits_correct"] = stats.dibits_correct;
  j["dibits_lost"] = stats.dibits_lost;
  j["dibits_unreadable"] = stats.dibits_unreadable;
  j["eve_dibits_learned"] = stats.eve_dibits_learned;
  j["round1_warning"] = stats.round1_warning;
  j["round2_warning"] = stats.round2_warning;
  j["pairs_delivered"] = stats.pairs_delivered;
  j["epp"] = {{"k", stats.epp.k},
              {"per_step_success", stats.epp.per_step_success},
              {"final_fidelity", stats.epp.final_fidelity},
              {"target_fidelity", stats.epp.target_fidelity}};
  return j;
}

}  // namespace diqsdc::cli
