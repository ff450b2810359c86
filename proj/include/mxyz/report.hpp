#pragma once

#include <string>

#include <json.hpp>

#include "mxyz/analysis.hpp"
#include "mxyz/code.hpp"

namespace mxyz {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

inline std::string bits_to_string(const gf2::BitVec& v, std::size_t nbits) {
  std::string s(nbits, '0');
  const std::size_t have = v.size() * 64;
  for (std::size_t i = 0; i < nbits && i < have; ++i)
    if (gf2::get(v, i)) s[i] = '1';
  return s;
}

inline gf2::BitVec bits_from_string(const std::string& s) {
  gf2::BitVec v = gf2::make_bitvec(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == '1') gf2::set(v, i);
  return v;
}

inline json params_to_json(const CodeParams& p) {
  json j;
  j["n"] = p.n;
  j["s"] = p.s;
  j["gauge_rank"] = p.gauge_rank;
  j["g"] = p.g;
  j["k"] = p.k;
  j["k_stab"] = p.k_stab;
  if (p.d_certified) j["d_certified"] = *p.d_certified;
  return j;
}

inline json closed_forms_to_json(const std::vector<ClosedFormCheck>& cfs) {
  json arr = json::array();
  for (const auto& c : cfs)
    arr.push_back({{"name", c.name},
                   {"claimed", c.claimed},
                   {"computed", c.computed},
                   {"match", c.match}});
  return arr;
}

inline json triple_to_json(const LogicalTriple& t, std::size_t gauge_size) {
  json j;
  j["line"] = t.line_index;
  j["X"] = t.X.str();
  j["Y"] = t.Y.str();
  j["Z"] = t.Z.str();
  j["dress_x"] = bits_to_string(t.dress_x, gauge_size);
  j["dress_y"] = bits_to_string(t.dress_y, gauge_size);
  j["dress_z"] = bits_to_string(t.dress_z, gauge_size);
  return j;
}

inline LogicalTriple triple_from_json(const json& j, std::size_t n) {
  LogicalTriple t;
  t.line_index = j.at("line").get<long>();
  t.X = PauliWord::parse(j.at("X").get<std::string>(), n);
  t.Y = PauliWord::parse(j.at("Y").get<std::string>(), n);
  t.Z = PauliWord::parse(j.at("Z").get<std::string>(), n);
  t.dress_x = bits_from_string(j.at("dress_x").get<std::string>());
  t.dress_y = bits_from_string(j.at("dress_y").get<std::string>());
  t.dress_z = bits_from_string(j.at("dress_z").get<std::string>());
  return t;
}

inline json code_to_json(const CodeStructure& code) {
  json j;
  j["version"] = kSchemaVersion;
  j["L"] = code.lat.size();
  j["params"] = params_to_json(code.params);
  j["closed_forms"] = closed_forms_to_json(code.closed_forms);
  json gauge = json::array();
  for (const auto& g : code.gauge_gens.members()) gauge.push_back(g.str());
  j["gauge_generators"] = gauge;
  json stab = json::array();
  for (const auto& s : code.stab_gens.members()) stab.push_back(s.str());
  j["stabiliser_generators"] = stab;
  json bare = json::array(), dressed = json::array();
  for (const auto& t : code.bare_logicals)
    bare.push_back(triple_to_json(t, code.gauge_gens.size()));
  for (const auto& t : code.dressed_logicals)
    dressed.push_back(triple_to_json(t, code.gauge_gens.size()));
  j["bare_logicals"] = bare;
  j["dressed_logicals"] = dressed;
  return j;
}

inline CodeStructure code_from_json(const json& j) {
  if (j.at("version").get<std::string>() != kSchemaVersion)
    throw std::runtime_error("code_from_json: unsupported schema version");
  const std::size_t L = j.at("L").get<std::size_t>();
  Lattice lat(L);
  const std::size_t n = lat.num_sites();
  CodeStructure code{lat, OperatorSet(n), OperatorSet(n), {}, {}, {}, {}};
  for (const auto& s : j.at("gauge_generators"))
    code.gauge_gens.add(PauliWord::parse(s.get<std::string>(), n));
  for (const auto& s : j.at("stabiliser_generators"))
    code.stab_gens.add(PauliWord::parse(s.get<std::string>(), n));
  for (const auto& t : j.at("bare_logicals"))
    code.bare_logicals.push_back(triple_from_json(t, n));
  for (const auto& t : j.at("dressed_logicals"))
    code.dressed_logicals.push_back(triple_from_json(t, n));
  const auto& p = j.at("params");
  code.params.n = p.at("n").get<std::size_t>();
  code.params.s = p.at("s").get<std::size_t>();
  code.params.gauge_rank = p.at("gauge_rank").get<std::size_t>();
  code.params.g = p.at("g").get<std::size_t>();
  code.params.k = p.at("k").get<long>();
  code.params.k_stab = p.at("k_stab").get<long>();
  if (p.contains("d_certified"))
    code.params.d_certified = p.at("d_certified").get<std::size_t>();
  for (const auto& c : j.at("closed_forms"))
    code.closed_forms.push_back({c.at("name").get<std::string>(),
                                 c.at("claimed").get<long>(),
                                 c.at("computed").get<long>(),
                                 c.at("match").get<bool>()});
  return code;
}

inline json checks_to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.detail}});
  return arr;
}

/// Standard report envelope; keys serialize sorted, so identical content
/// yields byte-identical documents.
inline json make_report(const std::string& command, json parameters,
                        json results, json checks = json::array()) {
  json j;
  j["version"] = kSchemaVersion;
  j["command"] = command;
  j["parameters"] = std::move(parameters);
  j["results"] = std::move(results);
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace mxyz
