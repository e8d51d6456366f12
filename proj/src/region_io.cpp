#include "rfim/region_io.hpp"

#include <stdexcept>
#include <string>

namespace rfim {

namespace {

Vertex vertex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("vertex must be [x, y]");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

}  // namespace

Region region_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "box") {
    Vertex c = j.contains("center") ? vertex_from_json(j.at("center")) : Vertex{};
    return Region::box(c, j.at("L").get<int>());
  }
  if (kind == "annulus") {
    Vertex c = j.contains("center") ? vertex_from_json(j.at("center")) : Vertex{};
    return Region::annulus(c, j.at("l1").get<int>(), j.at("l2").get<int>());
  }
  if (kind == "explicit") {
    std::vector<Vertex> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(vertex_from_json(v));
    return Region(std::move(vs));
  }
  throw std::invalid_argument("unknown region kind '" + kind + "'");
}

nlohmann::json region_to_json(const Region& r) {
  nlohmann::json vs = nlohmann::json::array();
  for (const Vertex& v : r.vertices()) vs.push_back({v.x, v.y});
  return {{"kind", "explicit"}, {"vertices", std::move(vs)}};
}

}  // namespace rfim
