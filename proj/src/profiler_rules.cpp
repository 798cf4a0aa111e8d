// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include <regex>

#include <yaml-cpp/yaml.h>

#include "dataworth/errors.hpp"
#include "dataworth/profiler.hpp"
#include "yaml_util.hpp"

namespace dataworth {

namespace {

SensitivityRule rule(const char* id, SensitivityCategory category, const char* name_pattern,
                     const char* value_pattern = "", const char* confidence = "1") {
  SensitivityRule r;
  r.id = id;
  r.category = category;
  r.name_pattern = name_pattern;
  r.value_pattern = value_pattern;
  r.confidence = Rational::parse(confidence);
  return r;
}

}  // namespace

const char* to_string(SensitivityCategory c) {
  switch (c) {
    case SensitivityCategory::pii: return "pii";
    case SensitivityCategory::protected_attribute: return "protected";
    case SensitivityCategory::financial: return "financial";
    case SensitivityCategory::health: return "health";
    case SensitivityCategory::confidential: return "confidential";
  }
  return "pii";
}

std::optional<SensitivityCategory> parse_sensitivity_category(std::string_view text) {
  for (auto c : {SensitivityCategory::pii, SensitivityCategory::protected_attribute, SensitivityCategory::financial,
                 SensitivityCategory::health, SensitivityCategory::confidential}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

RulePack RulePack::builtin() {
  using C = SensitivityCategory;
  RulePack p;
  p.rules = {
      rule("pii.email", C::pii, "(^|_)e_?mail(_|$)", R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})"),
      rule("pii.phone", C::pii, "(^|_)(phone|mobile|cell|telephone|tel)(_|$)",
           R"(\+?[0-9]{0,3}[ .-]?\(?[0-9]{3}\)?[ .-][0-9]{3}[ .-][0-9]{4})", "0.9"),
      rule("pii.ssn", C::pii, "(^|_)(ssn|social_security(_number)?)(_|$)", R"([0-9]{3}-[0-9]{2}-[0-9]{4})"),
      rule("pii.person_name", C::pii, "^((first|last|full|given|family|sur)_?)?name$", "", "0.7"),
      rule("pii.address", C::pii, "(^|_)(address|street|zip|zip_code|postcode|postal_code)(_|$)", "", "0.8"),
      rule("pii.birth_date", C::pii, "(^|_)(dob|date_of_birth|birth_?date|birthday)(_|$)"),
      rule("pii.ip_address", C::pii, "(^|_)ip(_address)?(_|$)",
           R"((25[0-5]|2[0-4][0-9]|1?[0-9]?[0-9])(\.(25[0-5]|2[0-4][0-9]|1?[0-9]?[0-9])){3})", "0.8"),
      rule("pii.passport", C::pii, "(^|_)(passport|national_id|driver_?s?_licen[cs]e)(_|$)"),
      rule("protected.gender", C::protected_attribute, "(^|_)(gender|sex)(_|$)"),
      rule("protected.race", C::protected_attribute, "(^|_)(race|ethnicity|ethnic_group|caste)(_|$)"),
      rule("protected.age", C::protected_attribute, "(^|_)age(_|$)"),
      rule("protected.religion", C::protected_attribute, "(^|_)(religion|faith)(_|$)"),
      rule("protected.nationality", C::protected_attribute, "(^|_)(nationality|citizenship|national_origin)(_|$)"),
      rule("protected.disability", C::protected_attribute, "(^|_)disabilit(y|ies)(_|$)"),
      rule("protected.marital_status", C::protected_attribute, "(^|_)marital(_status)?(_|$)"),
      rule("protected.sexual_orientation", C::protected_attribute, "(^|_)sexual_orientation(_|$)"),
      rule("financial.amounts", C::financial,
           "(^|_)(salary|income|revenue|wage|wages|price|cost|amount|balance|profit|payment|earnings)(_|$)", "",
           "0.8"),
      rule("financial.accounts", C::financial, "(^|_)(account_?(no|number)?|iban|swift|card_?number|credit_card)(_|$)"),
      rule("financial.card_number", C::financial, "", R"([0-9]{4}[ -]?[0-9]{4}[ -]?[0-9]{4}[ -]?[0-9]{4})", "0.9"),
      rule("health.clinical", C::health,
           "(^|_)(diagnosis|disease|icd(_?10)?|medical|medication|treatment|symptoms?|blood_(type|pressure)|bmi|"
           "health|hospital|patient)(_|$)"),
      rule("confidential.secrets", C::confidential,
           "(^|_)(password|passwd|secret|token|api_key|private_key|confidential)(_|$)"),
  };
  return p;
}

void RulePack::set_enabled(std::string_view rule_id, bool enabled) {
  for (auto& r : rules) {
    if (r.id == rule_id) {
      r.enabled = enabled;
      return;
    }
  }
  throw NotFoundError("rule", std::string(rule_id), std::nullopt);
}

RulePack parse_rulepack(std::string_view text, const std::string& origin) {
  using detail::fail;
  YAML::Node root = detail::load_yaml(text, origin);
  RulePack pack;
  if (!root.IsDefined() || root.IsNull()) return pack;
  if (!root.IsMap()) fail(origin, root, "", "expected a mapping with 'rules'");
  YAML::Node rules = root["rules"];
  if (!rules.IsDefined() || rules.IsNull()) return pack;
  if (!rules.IsSequence()) fail(origin, rules, "rules", "expected a list");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const YAML::Node n = rules[i];
    const std::string field = "rules[" + std::to_string(i) + "]";
    if (!n.IsMap()) fail(origin, n, field, "expected a mapping");
    SensitivityRule r;
    r.id = detail::require_scalar(n, "id", origin, field);
    const std::string category = detail::require_scalar(n, "category", origin, field);
    auto c = parse_sensitivity_category(category);
    if (!c) fail(origin, n["category"], field + ".category", "unknown category '" + category + "'");
    r.category = *c;
    r.name_pattern = detail::optional_scalar(n, "name_pattern", origin, field);
    r.value_pattern = detail::optional_scalar(n, "value_pattern", origin, field);
    if (r.name_pattern.empty() && r.value_pattern.empty()) {
      fail(origin, n, field, "rule needs name_pattern or value_pattern");
    }
    for (const char* key : {"name_pattern", "value_pattern"}) {
      const std::string& pattern = std::string_view(key) == "name_pattern" ? r.name_pattern : r.value_pattern;
      if (pattern.empty()) continue;
      try {
        std::regex re(pattern, std::regex::ECMAScript | std::regex::icase);
      } catch (const std::regex_error& e) {
        fail(origin, n[key], field + "." + key, std::string("invalid regex: ") + e.what());
      }
    }
    for (const char* key : {"value_threshold", "confidence"}) {
      YAML::Node v = n[key];
      if (!v.IsDefined() || v.IsNull()) continue;
      Rational x;
      if (!v.IsScalar() || !Rational::try_parse(v.Scalar(), x) || x < Rational(0) || x > Rational(1)) {
        fail(origin, v, field + "." + key, "expected a number in [0,1]");
      }
      (std::string_view(key) == "confidence" ? r.confidence : r.value_threshold) = x;
    }
    r.enabled = detail::optional_bool(n, "enabled", origin, field, true);
    for (const auto& existing : pack.rules) {
      if (existing.id == r.id) fail(origin, n, field + ".id", "duplicate rule id '" + r.id + "'");
    }
    pack.rules.push_back(std::move(r));
  }
  return pack;
}

RulePack read_rulepack(const std::filesystem::path& path) {
  return parse_rulepack(detail::read_file(path), path.string());
}

std::string write_rulepack(const RulePack& pack) {
  YAML::Emitter out;
  out << YAML::BeginMap << YAML::Key << "rules" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : pack.rules) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << r.id;
    out << YAML::Key << "category" << YAML::Value << to_string(r.category);
    if (!r.name_pattern.empty()) out << YAML::Key << "name_pattern" << YAML::Value << YAML::SingleQuoted << r.name_pattern;
    if (!r.value_pattern.empty()) {
      out << YAML::Key << "value_pattern" << YAML::Value << YAML::SingleQuoted << r.value_pattern;
      out << YAML::Key << "value_threshold" << YAML::Value << r.value_threshold.to_string();
    }
    out << YAML::Key << "confidence" << YAML::Value << r.confidence.to_string();
    out << YAML::Key << "enabled" << YAML::Value << (r.enabled ? "true" : "false");
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace dataworth
