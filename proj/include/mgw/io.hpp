#pragma once

#include <string>

#include "json.hpp"
#include "mgw/bratteli.hpp"
#include "mgw/full_group.hpp"
#include "mgw/schreier.hpp"

namespace mgw {

using Json = nlohmann::ordered_json;

// Permutations are image arrays. Every object also carries the text form so
// reports stay readable; parsing reads the structured fields only.
Json to_json(const Permutation& p);
Json to_json(const Generator& g);
Json to_json(const GroupWord& g);
Json to_json(const Portrait& p);
Json to_json(const PiecewiseElement& x);

Permutation permutation_from_json(const Json& j);
/// Throws InputError on malformed input.
Generator generator_from_json(const Json& j, int d);
GroupWord group_word_from_json(const Json& j);
PiecewiseElement piecewise_from_json(const Json& j);

Json level_graph_json(const LevelGraph& g);
std::string level_graph_dot(const LevelGraph& g);

Json gray_piece_json(const GrayPiece& piece);
/// Vertex 0 (the basepoint) is drawn filled.
std::string gray_piece_dot(const GrayPiece& piece);

/// Levels 0..levels of the stationary diagram, level 0 being the top vertex.
Json bratteli_json(int d, int levels);
std::string bratteli_dot(int d, int levels);

}  // namespace mgw
