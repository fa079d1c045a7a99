#pragma once

/**
 * @file report.hpp
 * @brief Check records and deterministic text / machine serialization.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "statman/errors.hpp"

namespace statman {

enum class Verdict { pass, fail, match, mismatch, info, not_applicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::info: return "info";
    case Verdict::not_applicable: return "n/a";
  }
  return "?";
}

inline Verdict pass_if(bool ok) { return ok ? Verdict::pass : Verdict::fail; }
inline Verdict match_if(bool ok) { return ok ? Verdict::match : Verdict::mismatch; }

struct Check {
  std::string id;
  /// Formula or quantity the check evaluates, e.g. "R(E,F)xi = g(F,xi)E - g(E,xi)F".
  std::string anchor;
  Verdict verdict = Verdict::info;
  std::string value;
  std::string expected;
  std::vector<std::string> conventions;
  std::string note;

  bool ok() const { return verdict != Verdict::fail && verdict != Verdict::mismatch; }
};

struct Section {
  std::string name;
  std::vector<Check> checks;

  Check& add(Check c) {
    checks.push_back(std::move(c));
    return checks.back();
  }

  const Check* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
  const Check& at(const std::string& id) const {
    if (const Check* c = find(id)) return *c;
    throw std::out_of_range("no check '" + id + "' in section '" + name + "'");
  }

  bool all_ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
  }
};

struct Report {
  std::string title;
  std::vector<Section> sections;

  Section& section(const std::string& name) {
    for (auto& s : sections)
      if (s.name == name) return s;
    sections.push_back({name, {}});
    return sections.back();
  }
  void append(Section s) { sections.push_back(std::move(s)); }

  const Check* find(const std::string& id) const {
    for (const auto& s : sections)
      if (const Check* c = s.find(id)) return c;
    return nullptr;
  }

  std::map<std::string, int> tally() const {
    std::map<std::string, int> t;
    for (const auto& s : sections)
      for (const auto& c : s.checks) ++t[to_string(c.verdict)];
    return t;
  }
};

enum class Format { text, machine };

inline nlohmann::json to_json(const Check& c) {
  nlohmann::json j;
  j["id"] = c.id;
  j["anchor"] = c.anchor;
  j["verdict"] = to_string(c.verdict);
  j["value"] = c.value;
  j["expected"] = c.expected;
  j["conventions"] = c.conventions;
  j["note"] = c.note;
  return j;
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["report"] = r.title;
  j["sections"] = nlohmann::json::array();
  for (const auto& s : r.sections) {
    nlohmann::json js;
    js["name"] = s.name;
    js["checks"] = nlohmann::json::array();
    for (const auto& c : s.checks) js["checks"].push_back(to_json(c));
    j["sections"].push_back(std::move(js));
  }
  j["summary"] = r.tally();
  return j;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) {
  // column widths count code points so UTF-8 anchors still align
  std::size_t len = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++len;
  return len >= w ? s : s + std::string(w - len, ' ');
}

inline std::size_t width(const std::string& s) {
  std::size_t len = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++len;
  return len;
}

}  // namespace detail

inline std::string emit_text(const Report& r) {
  std::ostringstream out;
  out << r.title << "\n";
  std::size_t wv = 0, wi = 0, wval = 0;
  for (const auto& s : r.sections)
    for (const auto& c : s.checks) {
      wv = std::max(wv, detail::width(to_string(c.verdict)));
      wi = std::max(wi, detail::width(c.id));
      wval = std::max(wval, std::min<std::size_t>(detail::width(c.value), 28));
    }
  for (const auto& s : r.sections) {
    out << "\n[" << s.name << "]\n";
    for (const auto& c : s.checks) {
      std::string line = "  " + detail::pad(to_string(c.verdict), wv) + "  " + detail::pad(c.id, wi) + "  " +
                         detail::pad(c.value, wval);
      if (!c.expected.empty()) line += "  expected " + c.expected;
      if (!c.conventions.empty()) {
        line += "  {";
        for (std::size_t i = 0; i < c.conventions.size(); ++i) line += (i ? "," : "") + c.conventions[i];
        line += "}";
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << "\n";
      if (!c.anchor.empty()) out << "      " << c.anchor << "\n";
      if (!c.note.empty()) out << "      note: " << c.note << "\n";
    }
  }
  const auto t = r.tally();
  out << "\nsummary:";
  for (const auto& [k, v] : t) out << " " << k << "=" << v;
  out << "\n";
  return out.str();
}

/// Deterministic bytes: machine form is JSON with sorted keys (nlohmann's
/// default object map is ordered), two-space indent, trailing LF.
inline std::string emit(const Report& r, Format f) {
  if (f == Format::machine) return to_json(r).dump(2) + "\n";
  return emit_text(r);
}

}  // namespace statman
