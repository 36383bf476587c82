#pragma once

#include <filesystem>
#include <iosfwd>

#include "salt/graph.hpp"

namespace salt {

// 9th DIMACS challenge shortest-path format: "p sp <n> <m>" then m lines
// "a <u> <v> <w>" with 1-based ids; "c" lines are comments.
Graph parse_dimacs_gr(std::istream& in);
void write_dimacs_gr(std::ostream& out, const Graph& g);

// Companion coordinates: "p aux sp co <n>" then "v <id> <x> <y>".
Coordinates parse_dimacs_co(std::istream& in, std::uint32_t vertex_count);
void write_dimacs_co(std::ostream& out, const Coordinates& coords);

Graph load_dimacs_gr(const std::filesystem::path& path);
Coordinates load_dimacs_co(const std::filesystem::path& path, std::uint32_t vertex_count);

}  // namespace salt
