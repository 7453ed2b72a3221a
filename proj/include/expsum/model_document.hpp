#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "expsum/error.hpp"
#include "expsum/format.hpp"
#include "expsum/prony.hpp"

namespace expsum {

/// Storable form of an exponential model (schema version 1):
///
///   {
///     "schema_version": 1,
///     "dt": 1,
///     "terms": [ {"amp": [re, im], "exp": [re, im]}, ... ],
///     "meta": { "key": "text", ... }
///   }
///
/// Numbers are written with 17 significant digits so doubles survive a
/// round trip bit for bit. Unknown keys are rejected on parse.
struct ModelDocument {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  double dt = 1.0;
  std::vector<ExpTerm> terms;
  std::map<std::string, std::string> meta;

  static ModelDocument from_model(const ExponentialModel& model,
                                  std::map<std::string, std::string> meta = {}) {
    return {kSchemaVersion, model.dt(), model.terms(), std::move(meta)};
  }

  ExponentialModel to_model() const { return ExponentialModel(terms, dt); }

  friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

inline std::string serialize_model(const ModelDocument& doc) {
  auto pair = [](Complex z) {
    return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
  };
  std::string out = "{\n";
  out += "  \"schema_version\": " + std::to_string(doc.schema_version) + ",\n";
  out += "  \"dt\": " + format_double(doc.dt) + ",\n";
  out += "  \"terms\": [";
  for (std::size_t i = 0; i < doc.terms.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"amp\": " + pair(doc.terms[i].amplitude) +
           ", \"exp\": " + pair(doc.terms[i].exponent) + "}";
  }
  out += doc.terms.empty() ? "],\n" : "\n  ],\n";
  out += "  \"meta\": {";
  bool first = true;
  for (const auto& [key, value] : doc.meta) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    " + nlohmann::json(key).dump() + ": " + nlohmann::json(value).dump();
  }
  out += first ? "}\n" : "\n  }\n";
  out += "}\n";
  return out;
}

namespace detail {

inline void require_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw Error(ErrorKind::ParseError,
                  "unknown field '" + key + "' in " + std::string(where));
    }
  }
}

inline double json_number(const nlohmann::json& v, std::string_view what) {
  if (!v.is_number()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a number");
  return v.get<double>();
}

inline Complex json_complex(const nlohmann::json& v, std::string_view what) {
  if (!v.is_array() || v.size() != 2) {
    throw Error(ErrorKind::ParseError, std::string(what) + " must be a [re, im] pair");
  }
  return {json_number(v[0], what), json_number(v[1], what)};
}

}  // namespace detail

inline ModelDocument parse_model_document(std::string_view text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("model JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::ParseError, "model document must be an object");
  detail::require_keys(root, {"schema_version", "dt", "terms", "meta"}, "model document");
  for (auto key : {"schema_version", "dt", "terms"}) {
    if (!root.contains(key)) {
      throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    }
  }

  ModelDocument doc;
  const auto& version = root["schema_version"];
  if (!version.is_number_integer() || version.get<long long>() != ModelDocument::kSchemaVersion) {
    throw Error(ErrorKind::ParseError, "unsupported schema_version");
  }
  doc.dt = detail::json_number(root["dt"], "dt");

  const auto& terms = root["terms"];
  if (!terms.is_array()) throw Error(ErrorKind::ParseError, "terms must be an array");
  for (const auto& term : terms) {
    if (!term.is_object()) throw Error(ErrorKind::ParseError, "term must be an object");
    detail::require_keys(term, {"amp", "exp"}, "term");
    if (!term.contains("amp") || !term.contains("exp")) {
      throw Error(ErrorKind::ParseError, "term needs both 'amp' and 'exp'");
    }
    doc.terms.push_back({detail::json_complex(term["amp"], "amp"),
                         detail::json_complex(term["exp"], "exp")});
  }

  if (root.contains("meta")) {
    const auto& meta = root["meta"];
    if (!meta.is_object()) throw Error(ErrorKind::ParseError, "meta must be an object");
    for (const auto& [key, value] : meta.items()) {
      if (!value.is_string()) {
        throw Error(ErrorKind::ParseError, "meta value for '" + key + "' must be text");
      }
      doc.meta.emplace(key, value.get<std::string>());
    }
  }
  return doc;
}

}  // namespace expsum
