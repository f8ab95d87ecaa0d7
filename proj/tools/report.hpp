#pragma once

// Report documents shared by every subcommand: an ordered JSON object that is
// either dumped as JSON or flattened to `key: value` lines.

#include <ostream>
#include <string>

#include "json.hpp"

namespace mekler::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// {"schema_version": 1, "command": name}
Json make_report(const std::string& command);

// Objects become dotted keys, arrays of objects indexed keys, scalar arrays
// and nested arrays one compact line. null prints as "none".
void write_text(std::ostream& out, const Json& report);

void write_report(std::ostream& out, const Json& report, const std::string& format);

}  // namespace mekler::cli
