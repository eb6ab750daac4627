#include "io/formats.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "common/errors.hpp"

namespace knotfilt::io {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + " must be an integer");
  auto wide = v.get<long long>();
  if (wide < -(1LL << 30) || wide > (1LL << 30)) throw InputError(where + " is out of range");
  return static_cast<int>(wide);
}

std::string token(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + " must be a string");
  auto s = v.get<std::string>();
  if (s.empty()) throw InputError(where + " must be nonempty");
  return s;
}

}  // namespace

ComplexData parse_complex(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("complex file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("complex file must hold a JSON object");
  const json& gens = field(doc, "generators", "complex file");
  const json& arrows = doc.contains("arrows") ? doc["arrows"] : json::array();
  if (!gens.is_array() || !arrows.is_array()) {
    throw InputError("complex file: 'generators' and 'arrows' must be arrays");
  }

  bool knot_kind = false;
  bool filtered_kind = false;
  for (const auto& g : gens) {
    if (!g.is_object()) throw InputError("complex file: every generator must be an object");
    knot_kind |= g.contains("alexander");
    filtered_kind |= g.contains("filt");
  }
  if (knot_kind && filtered_kind) {
    throw InputError("complex file mixes 'filt' and 'alexander' generators");
  }

  std::unordered_map<std::string, Index> index;
  auto endpoint = [&](const json& a, const char* key, std::size_t k) {
    std::string where = "arrow " + std::to_string(k) + " '" + key + "'";
    auto id = token(field(a, key, "arrow " + std::to_string(k)), where);
    auto it = index.find(id);
    if (it == index.end()) throw InputError(where + " names unknown generator '" + id + "'");
    return it->second;
  };

  if (knot_kind) {
    std::vector<knot::KnotGenerator> out;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const auto& g = gens[k];
      std::string where = "generator " + std::to_string(k);
      knot::KnotGenerator kg;
      kg.id = token(field(g, "id", where), where + " id");
      kg.maslov = integer(field(g, "maslov", where), where + " maslov");
      kg.alexander = integer(field(g, "alexander", where), where + " alexander");
      if (!index.emplace(kg.id, static_cast<Index>(k)).second) {
        throw InputError("duplicate generator id '" + kg.id + "'");
      }
      out.push_back(std::move(kg));
    }
    std::vector<knot::KnotArrow> edges;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      const auto& a = arrows[k];
      if (!a.is_object()) throw InputError("complex file: every arrow must be an object");
      std::string where = "arrow " + std::to_string(k);
      edges.push_back({endpoint(a, "from", k), endpoint(a, "to", k),
                       integer(field(a, "nw", where), where + " nw"),
                       integer(field(a, "nz", where), where + " nz")});
    }
    int aux = doc.contains("auxiliary_factors") ? integer(doc["auxiliary_factors"], "auxiliary_factors") : 0;
    return knot::KnotComplex(std::move(out), std::move(edges), aux);
  }

  std::vector<Generator> out;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& g = gens[k];
    std::string where = "generator " + std::to_string(k);
    Generator fg;
    fg.id = token(field(g, "id", where), where + " id");
    if (g.contains("maslov") && !g["maslov"].is_null()) fg.maslov = integer(g["maslov"], where + " maslov");
    fg.filt = integer(field(g, "filt", where), where + " filt");
    if (!index.emplace(fg.id, static_cast<Index>(k)).second) {
      throw InputError("duplicate generator id '" + fg.id + "'");
    }
    out.push_back(std::move(fg));
  }
  std::vector<Arrow> edges;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    if (!arrows[k].is_object()) throw InputError("complex file: every arrow must be an object");
    edges.push_back({endpoint(arrows[k], "from", k), endpoint(arrows[k], "to", k)});
  }
  return FilteredComplex(std::move(out), std::move(edges));
}

std::string to_json_text(const FilteredComplex& c) {
  json doc;
  doc["generators"] = json::array();
  for (const auto& g : c.generators()) {
    json j{{"id", g.id}};
    if (g.maslov) j["maslov"] = *g.maslov;
    j["filt"] = g.filt;
    doc["generators"].push_back(j);
  }
  doc["arrows"] = json::array();
  for (const auto& a : c.arrows()) {
    doc["arrows"].push_back({{"from", c.generator(a.from).id}, {"to", c.generator(a.to).id}});
  }
  return doc.dump(2) + "\n";
}

std::string to_json_text(const knot::KnotComplex& d) {
  json doc;
  doc["generators"] = json::array();
  for (const auto& g : d.generators()) {
    doc["generators"].push_back({{"id", g.id}, {"maslov", g.maslov}, {"alexander", g.alexander}});
  }
  doc["arrows"] = json::array();
  for (const auto& a : d.arrows()) {
    doc["arrows"].push_back({{"from", d.generator(a.from).id},
                             {"to", d.generator(a.to).id},
                             {"nw", a.nw},
                             {"nz", a.nz}});
  }
  if (d.auxiliary_factors() != 0) doc["auxiliary_factors"] = d.auxiliary_factors();
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace knotfilt::io
