#pragma once

// JSON shapes for certificates, decisions, witness pairs and scan reports.
// Keys are emitted in a fixed order and payloads carry no timestamps, so the
// same value always serializes to the same bytes.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "corrwit/construct.hpp"
#include "corrwit/decide.hpp"
#include "corrwit/error.hpp"
#include "corrwit/lattice.hpp"
#include "corrwit/oracle.hpp"

namespace corrwit::json {

using Json = nlohmann::ordered_json;

inline Json to_json(const LatticeVector& v) { return Json(std::vector<Int>(v.begin(), v.end())); }

inline Json to_json(const Triple& t) { return Json{{"a", t.a}, {"b", t.b}, {"c", t.c}}; }

inline Json to_json(const WitnessCertificate& cert) {
  Json moves = Json::array();
  for (Move m : cert.moves()) moves.push_back(std::string(to_string(m)));
  return Json{{"target", to_json(cert.target())},
              {"ambient_n", cert.ambient_n()},
              {"base_x", to_json(cert.base_x().vec())},
              {"base_y", to_json(cert.base_y().vec())},
              {"moves", std::move(moves)}};
}

inline Json to_json(const Decision& d) {
  return Json{{"verdict", std::string(to_string(d.verdict))},
              {"reason", std::string(to_string(d.reason))},
              {"conjectural", d.conjectural()}};
}

inline Json to_json(const WitnessPair& w) {
  return Json{{"form", std::string(to_string(w.form))},
              {"target", to_json(w.target)},
              {"x", to_json(w.x)},
              {"y", to_json(w.y)}};
}

inline Json to_json(const LinearSystemDescription& d) {
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    entries.push_back(Json{{"role", e.role},
                           {"m", to_json(e.m)},
                           {"degree", e.m[0]},
                           {"summands", Json{{"base_x", e.summands.base_x}, {"base_y", e.summands.base_y}}},
                           {"text", e.text}});
  }
  Json summands = Json::array();
  for (const auto& s : d.dj_summands) summands.push_back(to_json(s));
  return Json{{"systems", std::move(entries)}, {"dj_summands", std::move(summands)}, {"disclaimer", d.disclaimer}};
}

inline Json to_json(const ScanEntry& e) {
  Json j{{"a", e.target.a}, {"b", e.target.b}, {"c", e.target.c}, {"witnessed", e.witness.has_value()},
         {"conclusive", e.conclusive}};
  if (e.witness) {
    j["x"] = to_json(e.witness->x);
    j["y"] = to_json(e.witness->y);
  }
  return j;
}

inline Json scan_summary(const ScanReport& r) {
  return Json{{"summary",
               Json{{"lattice", r.spec.name()},
                    {"form", std::string(to_string(r.form))},
                    {"max_b", r.max_b},
                    {"bound", r.spec.coordinate_bound},
                    {"norm_cap", r.norm_cap},
                    {"triples", r.entries.size()},
                    {"witnessed", r.witnessed()},
                    {"unwitnessed", r.unwitnessed()}}}};
}

/// One JSON object per line, one line per triple, then the summary footer.
inline std::string scan_report_lines(const ScanReport& r) {
  std::string out;
  for (const auto& e : r.entries) out += to_json(e).dump() + "\n";
  out += scan_summary(r).dump() + "\n";
  return out;
}

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

inline Int as_int(const Json& j, std::string_view field) {
  if (!j.is_number_integer()) malformed(std::string(field) + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    malformed(std::string(field) + " is out of range");
  }
  return j.get<Int>();
}

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline LatticeVector as_vector(const Json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) malformed(std::string(field) + " must be a nonempty array");
  std::vector<Int> coords;
  for (const auto& v : j) coords.push_back(as_int(v, field));
  return LatticeVector(std::move(coords));
}

}  // namespace detail

/// Parses the certificate shape. Syntax or shape problems raise
/// MalformedInput; a base vector that is not of DJ type raises
/// NotDeJonquieresType; mismatched widths raise LengthMismatch.
inline WitnessCertificate certificate_from_json(const Json& j) {
  using namespace detail;
  const Json& target = member(j, "target");
  const Triple t{as_int(member(target, "a"), "target.a"), as_int(member(target, "b"), "target.b"),
                 as_int(member(target, "c"), "target.c")};
  const Int ambient = as_int(member(j, "ambient_n"), "ambient_n");
  LatticeVector bx = as_vector(member(j, "base_x"), "base_x");
  LatticeVector by = as_vector(member(j, "base_y"), "base_y");
  const Json& mj = member(j, "moves");
  if (!mj.is_array()) malformed("moves must be an array");
  std::vector<Move> moves;
  for (const auto& m : mj) {
    if (m == "swap") {
      moves.push_back(Move::Swap);
    } else if (m == "shear") {
      moves.push_back(Move::Shear);
    } else {
      malformed("unknown move " + m.dump());
    }
  }
  return WitnessCertificate(DJVector(std::move(bx)), DJVector(std::move(by)), std::move(moves), t, ambient);
}

inline WitnessCertificate parse_certificate(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::malformed(e.what());
  }
  return certificate_from_json(j);
}

}  // namespace corrwit::json
