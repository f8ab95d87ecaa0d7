#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "mekler/graph.hpp"

namespace mekler {

// Edge-list format: the first content line holds the vertex count n, every
// following line one pair `u v` of 0-based indices. Blank lines and `#`
// comments are ignored. Throws ParseError naming the offending line.
Graph parse_edge_list(std::istream& in);

// Undirected DOT subset: `[strict] graph [name] { stmt* }` where a statement
// is a node id or an edge chain `a -- b -- c`, optionally ended by `;` or `,`.
// Attributes, subgraphs and digraphs are rejected. When every node id is a
// decimal integer the ids are the vertex indices; otherwise vertices are
// numbered in order of first appearance.
Graph parse_dot(std::istream& in);

// Dispatches on content: DOT if the first token is `graph`, `strict` or
// `digraph`, edge list otherwise. Throws InputError if the file cannot be read.
Graph read_graph_file(const std::filesystem::path& path);

std::string to_edge_list(const Graph& g);

}  // namespace mekler
