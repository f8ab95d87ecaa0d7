#include "system_json.hpp"

#include <fstream>

#include "mekler/errors.hpp"

namespace mekler::cli {

Json system_to_json(const BilinearSystem& sys) {
  Json j;
  j["p"] = sys.p();
  j["dimV"] = sys.dim_v();
  j["dimW"] = sys.dim_w();
  Json beta = Json::array();
  for (std::size_t i = 0; i < sys.dim_v(); ++i) {
    for (std::size_t k = i + 1; k < sys.dim_v(); ++k) {
      const auto& w = sys.pair_values()[sys.pair_index(i, k)];
      if (!is_zero(w)) beta.push_back(Json::array({i, k, w}));
    }
  }
  j["beta"] = std::move(beta);
  return j;
}

BilinearSystem system_from_json(const Json& j) {
  try {
    const auto p = j.at("p").get<Scalar>();
    const auto dim_v = j.at("dimV").get<std::size_t>();
    const auto dim_w = j.at("dimW").get<std::size_t>();
    if (!is_prime(p)) throw InputError("p must be prime");
    const std::size_t pairs = dim_v * (dim_v == 0 ? 0 : dim_v - 1) / 2;
    std::vector<Coords> values(pairs, Coords(dim_w, 0));
    std::vector<bool> seen(pairs, false);
    for (const auto& entry : j.at("beta")) {
      if (!entry.is_array() || entry.size() != 3) {
        throw InputError("beta entries must be [i, j, [w...]]");
      }
      const auto i = entry[0].get<std::size_t>();
      const auto k = entry[1].get<std::size_t>();
      if (!(i < k && k < dim_v)) throw InputError("beta entry needs i < j < dimV");
      const auto idx = i * (2 * dim_v - i - 1) / 2 + (k - i - 1);
      if (seen[idx]) throw InputError("beta pair listed twice");
      seen[idx] = true;
      values[idx] = entry[2].get<Coords>();
    }
    return BilinearSystem(p, dim_v, dim_w, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad system document: ") + e.what());
  }
}

BilinearSystem read_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return system_from_json(j);
}

}  // namespace mekler::cli
