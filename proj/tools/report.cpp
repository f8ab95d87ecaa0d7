#include "report.hpp"

#include <algorithm>

namespace mekler::cli {

Json make_report(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "none";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool all_scalar(const Json& arr) {
  return std::none_of(arr.begin(), arr.end(),
                      [](const Json& v) { return v.is_object(); });
}

void write_value(std::ostream& out, const std::string& key, const Json& v) {
  if (v.is_object()) {
    if (v.empty()) out << key << ": {}\n";
    for (const auto& [k, child] : v.items()) write_value(out, key + "." + k, child);
  } else if (v.is_array() && !all_scalar(v)) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      write_value(out, key + "[" + std::to_string(i) + "]", v[i]);
    }
  } else if (v.is_array()) {
    out << key << ": [";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out << (i ? ", " : "") << (v[i].is_array() ? v[i].dump() : scalar_text(v[i]));
    }
    out << "]\n";
  } else {
    out << key << ": " << scalar_text(v) << "\n";
  }
}

}  // namespace

void write_text(std::ostream& out, const Json& report) {
  for (const auto& [k, v] : report.items()) write_value(out, k, v);
}

void write_report(std::ostream& out, const Json& report, const std::string& format) {
  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    write_text(out, report);
  }
}

}  // namespace mekler::cli
