#pragma once

// BilinearSystem as JSON: {"p", "dimV", "dimW", "beta": [[i, j, [w...]], ...]}
// with i < j; pairs that are not listed have value zero.

#include <filesystem>

#include "mekler/bilinear.hpp"
#include "report.hpp"

namespace mekler::cli {

Json system_to_json(const BilinearSystem& sys);
// Throws InputError on a malformed document.
BilinearSystem system_from_json(const Json& j);
BilinearSystem read_system_file(const std::filesystem::path& path);

}  // namespace mekler::cli
