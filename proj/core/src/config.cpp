#include "favlab/config.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "favlab/error.hpp"

namespace favlab {

using nlohmann::json;

namespace {

double number_field(const json& obj, const char* key, std::size_t index) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw Error(Errc::config, "map " + std::to_string(index + 1) + ": '" + key + "' must be a number");
  }
  return it->get<double>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::config, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Ifs parse_ifs(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("maps") || !doc["maps"].is_array() || doc["maps"].empty()) {
    throw Error(Errc::config, "expected an object with a nonempty 'maps' array");
  }
  static const std::array<std::string, 7> known{"r", "theta_over_pi", "theta", "reflect", "tx", "ty", "name"};
  std::vector<Similitude> maps;
  const auto& list = doc["maps"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& m = list[i];
    if (!m.is_object()) throw Error(Errc::config, "map " + std::to_string(i + 1) + " is not an object");
    for (const auto& [key, value] : m.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw Error(Errc::config, "map " + std::to_string(i + 1) + ": unknown key '" + key + "'");
      }
    }
    const bool by_pi = m.contains("theta_over_pi");
    const bool by_rad = m.contains("theta");
    if (by_pi == by_rad) {
      throw Error(Errc::config, "map " + std::to_string(i + 1) + ": give exactly one of theta_over_pi, theta");
    }
    const double theta = by_pi ? number_field(m, "theta_over_pi", i) * kPi : number_field(m, "theta", i);
    bool reflect = false;
    if (m.contains("reflect")) {
      if (!m["reflect"].is_boolean()) throw Error(Errc::config, "map " + std::to_string(i + 1) + ": 'reflect' must be a boolean");
      reflect = m["reflect"].get<bool>();
    }
    try {
      maps.emplace_back(number_field(m, "r", i), theta, reflect ? -1 : 1,
                        Vec2{number_field(m, "tx", i), number_field(m, "ty", i)});
    } catch (const Error& e) {
      if (e.code() == Errc::config) throw;
      throw Error(Errc::config, "map " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  Ifs ifs(std::move(maps));
  if (doc.contains("hull")) {
    std::vector<Vec2> polygon;
    for (const auto& p : doc["hull"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw Error(Errc::config, "hull vertices must be [x, y] pairs");
      }
      polygon.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
      return ifs.with_hull(std::move(polygon));
    } catch (const Error& e) {
      throw Error(Errc::config, std::string("hull: ") + e.what());
    }
  }
  return ifs;
}

Ifs load_ifs(const std::filesystem::path& path) {
  try {
    return parse_ifs(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == Errc::io) throw Error(Errc::config, e.what());
    throw;
  }
}

std::string ifs_to_json(const Ifs& ifs) {
  json doc;
  doc["maps"] = json::array();
  for (const auto& f : ifs.maps()) {
    doc["maps"].push_back({{"r", f.ratio()},
                           {"theta", f.angle()},
                           {"reflect", f.orientation() < 0},
                           {"tx", f.shift().x},
                           {"ty", f.shift().y}});
  }
  if (ifs.has_hull()) {
    doc["hull"] = json::array();
    for (const auto& p : ifs.hull()) doc["hull"].push_back({p.x, p.y});
  }
  return doc.dump();
}

std::string content_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string certificate_to_json(const RelCloseCertificate& cert) {
  json doc;
  doc["words"] = json::array();
  for (const auto& w : cert.words) doc["words"].push_back(w.to_string());
  doc["eps"] = cert.eps;
  doc["theta"] = cert.theta;
  doc["omegas"] = json::array();
  for (const auto& [pair, tail] : cert.omegas) {
    doc["omegas"].push_back({{"pair", {pair.first, pair.second}},
                             {"prefix", tail.prefix().to_string()},
                             {"period", tail.period().to_string()}});
  }
  doc["slacks"] = json::array();
  for (const auto& [pair, s] : cert.slacks) {
    doc["slacks"].push_back(
        {{"pair", {pair.first, pair.second}}, {"ratio", s.ratio}, {"angle", s.angle}, {"offset", s.offset}});
  }
  const auto& p = cert.provenance;
  json prov{{"construction", p.construction}, {"steering_word", p.steering_word}, {"steering_steps", p.steering_steps}};
  if (p.eps1) prov["eps1"] = *p.eps1;
  if (p.eps2) prov["eps2"] = *p.eps2;
  if (p.eps2_bound_a) prov["eps2_bound_a"] = *p.eps2_bound_a;
  if (p.eps2_bound_b) prov["eps2_bound_b"] = *p.eps2_bound_b;
  if (p.band_depth) prov["band_depth"] = *p.band_depth;
  if (p.sigma) prov["sigma"] = *p.sigma;
  doc["provenance"] = prov;
  return doc.dump(2);
}

RelCloseCertificate parse_certificate(std::string_view json_text, std::size_t alphabet) {
  const json doc = parse_json(json_text);
  try {
    RelCloseCertificate cert;
    for (const auto& w : doc.at("words")) cert.words.push_back(Word::parse(w.get<std::string>(), alphabet));
    if (cert.words.empty()) throw Error(Errc::config, "certificate has no words");
    cert.eps = doc.at("eps").get<double>();
    cert.theta = doc.at("theta").get<double>();
    auto pair_of = [&](const json& item) {
      const auto i = item.at("pair").at(0).get<std::size_t>();
      const auto j = item.at("pair").at(1).get<std::size_t>();
      if (!(i < j && j < cert.words.size())) throw Error(Errc::config, "pair index out of range");
      return PairIndex{i, j};
    };
    if (doc.contains("omegas")) {
      for (const auto& item : doc["omegas"]) {
        cert.omegas.insert_or_assign(pair_of(item),
                                     TailWord(Word::parse(item.at("prefix").get<std::string>(), alphabet),
                                              Word::parse(item.at("period").get<std::string>(), alphabet)));
      }
    }
    if (doc.contains("slacks")) {
      for (const auto& item : doc["slacks"]) {
        cert.slacks.insert_or_assign(pair_of(item), PairSlack{item.at("ratio").get<double>(),
                                                              item.at("angle").get<double>(),
                                                              item.at("offset").get<double>()});
      }
    }
    if (doc.contains("provenance")) {
      const auto& p = doc["provenance"];
      auto& out = cert.provenance;
      out.construction = p.value("construction", "");
      out.steering_word = p.value("steering_word", "");
      out.steering_steps = p.value("steering_steps", std::size_t{0});
      if (p.contains("eps1")) out.eps1 = p["eps1"].get<double>();
      if (p.contains("eps2")) out.eps2 = p["eps2"].get<double>();
      if (p.contains("eps2_bound_a")) out.eps2_bound_a = p["eps2_bound_a"].get<double>();
      if (p.contains("eps2_bound_b")) out.eps2_bound_b = p["eps2_bound_b"].get<double>();
      if (p.contains("band_depth")) out.band_depth = p["band_depth"].get<std::size_t>();
      if (p.contains("sigma")) out.sigma = p["sigma"].get<double>();
    }
    if (cert.words.size() > 1 && cert.omegas.size() != cert.pair_count()) {
      throw Error(Errc::config, "certificate needs one omega per pair");
    }
    return cert;
  } catch (const json::exception& e) {
    throw Error(Errc::config, std::string("certificate: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::config) throw;
    throw Error(Errc::config, std::string("certificate: ") + e.what());
  }
}

RelCloseCertificate load_certificate(const std::filesystem::path& path, std::size_t alphabet) {
  try {
    return parse_certificate(read_text_file(path), alphabet);
  } catch (const Error& e) {
    if (e.code() == Errc::io) throw Error(Errc::config, e.what());
    throw;
  }
}

}  // namespace favlab
