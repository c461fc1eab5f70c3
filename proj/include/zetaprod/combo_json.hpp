#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "errors.hpp"
#include "lcombo.hpp"

namespace zetaprod::lcombo {

// Combo spec document: {"q": 5, "terms": [{"b": 1.0, "char_index": 1}, ...]}.
// char_index follows the characters_mod enumeration order.
inline ComboSpec combo_spec_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("combo spec: invalid JSON: ") + e.what());
  }
  if (!doc.contains("q") || !doc.contains("terms") || !doc["terms"].is_array())
    throw ConfigError("combo spec: need fields q and terms[]");
  const long q = doc["q"].get<long>();
  const auto chars = arith::characters_mod(q);
  std::vector<std::pair<double, arith::Character>> terms;
  for (const auto& term : doc["terms"]) {
    if (!term.contains("b") || !term.contains("char_index"))
      throw ConfigError("combo spec: each term needs b and char_index");
    const double b = term["b"].get<double>();
    const long idx = term["char_index"].get<long>();
    if (idx < 0 || idx >= static_cast<long>(chars.size()))
      throw ConfigError("combo spec: char_index out of range");
    terms.emplace_back(b, chars[static_cast<std::size_t>(idx)]);
  }
  return ComboSpec::make(q, terms);
}

inline ComboSpec combo_spec_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("combo spec: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return combo_spec_from_json_text(text);
}

} // namespace zetaprod::lcombo
