#include "mgfrft/graph_io.hpp"

#include <json.hpp>

#include "mgfrft/csv.hpp"
#include "mgfrft/error.hpp"

namespace mgfrft {

std::string graph_to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.size();
  j["directed"] = g.directed();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.from, e.to, e.weight});
  j["edges"] = std::move(edges);
  return j.dump() + "\n";
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  try {
    const auto n = j.at("n").get<std::int64_t>();
    if (n < 1) throw ParseError("graph JSON: n must be positive");
    const bool directed = j.value("directed", false);
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw ParseError("graph JSON: each edge must be [i, j] or [i, j, w]");
      }
      const auto from = e[0].get<std::int64_t>();
      const auto to = e[1].get<std::int64_t>();
      if (from < 0 || to < 0) throw ParseError("graph JSON: negative node id");
      edges.push_back({static_cast<std::size_t>(from), static_cast<std::size_t>(to),
                       e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    return Graph::from_edges(static_cast<std::size_t>(n), edges, directed);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
}

Graph load_graph(const std::string& path) { return graph_from_json(csv::read_file(path)); }

void save_graph(const Graph& g, const std::string& path) { csv::write_file(path, graph_to_json(g)); }

}  // namespace mgfrft
