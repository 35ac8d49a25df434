#include "mgw/io.hpp"

#include <sstream>

#include "mgw/errors.hpp"

namespace mgw {

namespace {

std::string node_name(const BVertex& v, int level) { return "\"" + std::to_string(level) + ":" + v.to_string() + "\""; }

}  // namespace

Json to_json(const Permutation& p) {
  Json j = Json::array();
  for (Letter x : p.images()) j.push_back(static_cast<int>(x));
  return j;
}

Json to_json(const Generator& g) {
  Json j;
  switch (g.kind()) {
    case GeneratorKind::kIdentity:
      j["kind"] = "e";
      break;
    case GeneratorKind::kA:
      j["kind"] = "a";
      j["perm"] = to_json(g.as_a().perm);
      break;
    case GeneratorKind::kB: {
      j["kind"] = "b";
      j["rho"] = to_json(g.as_b().rho);
      Json s = Json::array();
      for (const auto& p : g.as_b().sigma) s.push_back(to_json(p));
      j["sigma"] = std::move(s);
      break;
    }
  }
  j["text"] = g.to_string();
  return j;
}

Json to_json(const GroupWord& g) {
  Json letters = Json::array();
  for (const auto& x : g.letters()) letters.push_back(to_json(x));
  return {{"d", g.degree()}, {"letters", std::move(letters)}, {"text", g.to_string()}};
}

Json to_json(const Portrait& p) {
  Json children = Json::array();
  for (const auto& c : p.children) children.push_back(to_json(c));
  return {{"depth", p.depth}, {"root", to_json(p.root)}, {"children", std::move(children)}};
}

Json to_json(const PiecewiseElement& x) {
  Json pieces = Json::array();
  for (const auto& [u, g] : x.pieces) pieces.push_back({{"domain", u.to_string()}, {"word", g.to_string()}});
  return {{"d", x.d}, {"pieces", std::move(pieces)}};
}

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("permutation must be an image array");
  std::vector<Letter> images;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 0 || x.get<int>() > 255) throw InputError("bad permutation image");
    images.push_back(static_cast<Letter>(x.get<int>()));
  }
  return Permutation(std::move(images));
}

Generator generator_from_json(const Json& j, int d) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "e") return Generator::identity();
    if (kind == "a") {
      Permutation p = permutation_from_json(j.at("perm"));
      if (p.degree() != d) throw InputError("permutation degree differs from d");
      return Generator::a(std::move(p));
    }
    if (kind == "b") {
      Permutation rho = permutation_from_json(j.at("rho"));
      std::vector<Permutation> sigma;
      for (const auto& s : j.at("sigma")) sigma.push_back(permutation_from_json(s));
      if (rho.degree() != d || static_cast<int>(sigma.size()) != d) throw InputError("B generator degree differs from d");
      return Generator::b(std::move(rho), std::move(sigma));
    }
    throw InputError("unknown generator kind " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed generator: ") + e.what());
  }
}

GroupWord group_word_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    std::vector<Generator> letters;
    for (const auto& x : j.at("letters")) letters.push_back(generator_from_json(x, d));
    return GroupWord(d, std::move(letters));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed group word: ") + e.what());
  }
}

PiecewiseElement piecewise_from_json(const Json& j) {
  try {
    PiecewiseElement x{j.at("d").get<int>(), {}};
    for (const auto& p : j.at("pieces"))
      x.pieces.emplace_back(ClopenSet::parse(p.at("domain").get<std::string>(), x.d),
                            parse_group_word(p.at("word").get<std::string>(), x.d));
    x.validate();
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed piecewise element: ") + e.what());
  }
}

Json level_graph_json(const LevelGraph& g) {
  Json vertices = Json::array(), edges = Json::array();
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) vertices.push_back({{"id", v}, {"word", word_to_string(g.word_of(v))}});
  for (std::size_t k = 0; k < g.adj.size(); ++k)
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
      edges.push_back({{"from", v}, {"to", g.adj[k][v]}, {"label", g.labels[k]}});
  return {{"d", g.d},         {"n", g.n},         {"generators", g.labels}, {"connected", g.connected()},
          {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

std::string level_graph_dot(const LevelGraph& g) {
  std::ostringstream os;
  os << "digraph level_" << g.n << " {\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    os << "  v" << v << " [label=\"" << word_to_string(g.word_of(v)) << "\"";
    if (v == 0) os << ", style=filled";
    os << "];\n";
  }
  for (std::size_t k = 0; k < g.adj.size(); ++k)
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
      os << "  v" << v << " -> v" << g.adj[k][v] << " [label=\"" << g.labels[k] << "\"];\n";
  os << "}\n";
  return os.str();
}

Json gray_piece_json(const GrayPiece& piece) {
  Json segment = Json::array(), vertices = Json::array(), edges = Json::array();
  for (int i = -piece.segment.left; i <= piece.segment.right; ++i)
    segment.push_back({{"index", i}, {"gray", piece.segment.at(i).to_string()}});
  for (std::size_t v = 0; v < piece.size(); ++v)
    vertices.push_back({{"id", v}, {"point", piece.vertices[v].to_string()}, {"projection", piece.index[v]}});
  // Each undirected edge is listed once, from its smaller endpoint.
  for (std::size_t v = 0; v < piece.size(); ++v)
    for (const auto& [label, w] : piece.edges[v])
      if (static_cast<std::size_t>(w) >= v) edges.push_back({{"from", v}, {"to", w}, {"label", label_to_string(label)}});
  return {{"d", piece.d},         {"left", piece.segment.left},     {"right", piece.segment.right},
          {"basepoint", 0},       {"segment", std::move(segment)}, {"vertices", std::move(vertices)},
          {"edges", std::move(edges)}};
}

std::string gray_piece_dot(const GrayPiece& piece) {
  std::ostringstream os;
  os << "graph piece {\n";
  for (std::size_t v = 0; v < piece.size(); ++v) {
    os << "  v" << v << " [label=\"" << piece.vertices[v].to_string() << "\\n" << piece.index[v] << "\"";
    if (v == 0) os << ", style=filled, fillcolor=gold";
    os << "];\n";
  }
  for (std::size_t v = 0; v < piece.size(); ++v)
    for (const auto& [label, w] : piece.edges[v])
      if (static_cast<std::size_t>(w) >= v)
        os << "  v" << v << " -- v" << w << " [label=\"" << label_to_string(label) << "\"];\n";
  os << "}\n";
  return os.str();
}

Json bratteli_json(int d, int levels) {
  const auto& dg = diagram(d);
  Json lv = Json::array(), edges = Json::array();
  for (int n = 0; n <= levels; ++n) {
    Json names = Json::array();
    if (n == 0) names.push_back(BVertex::top_vertex().to_string());
    else
      for (const auto& v : dg.level_vertices()) names.push_back(v.to_string());
    lv.push_back(std::move(names));
  }
  for (int n = 0; n < levels; ++n) {
    const std::vector<BVertex> from = n == 0 ? std::vector<BVertex>{BVertex::top_vertex()} : dg.level_vertices();
    for (const auto& v : from)
      for (const auto& e : dg.edges(v))
        edges.push_back({{"level", n}, {"from", v.to_string()}, {"to", e.target.to_string()}, {"label", e.label}});
  }
  return {{"d", d}, {"levels", levels}, {"vertices", std::move(lv)}, {"edges", std::move(edges)}};
}

std::string bratteli_dot(int d, int levels) {
  const auto& dg = diagram(d);
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n";
  for (int n = 0; n <= levels; ++n) {
    os << "  { rank=same;";
    if (n == 0) os << ' ' << node_name(BVertex::top_vertex(), 0) << ';';
    else
      for (const auto& v : dg.level_vertices()) os << ' ' << node_name(v, n) << ';';
    os << " }\n";
  }
  for (int n = 0; n < levels; ++n) {
    const std::vector<BVertex> from = n == 0 ? std::vector<BVertex>{BVertex::top_vertex()} : dg.level_vertices();
    for (const auto& v : from)
      for (const auto& e : dg.edges(v))
        os << "  " << node_name(v, n) << " -> " << node_name(e.target, n + 1) << " [label=\"" << static_cast<int>(e.label)
           << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mgw
