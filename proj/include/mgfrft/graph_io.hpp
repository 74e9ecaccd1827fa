#pragma once

#include <string>

#include "mgfrft/graph.hpp"

namespace mgfrft {

/// {"n": int, "directed": bool, "edges": [[i, j, w], ...]} with 0-based ids.
/// Undirected graphs list each edge once (i < j on output).
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

}  // namespace mgfrft
