#include "gpforge/topology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "gpforge/errors.hpp"

namespace gpforge {

long long DeltaComplex::euler_characteristic() const {
  return static_cast<long long>(vertex_count) - static_cast<long long>(edges.size()) +
         static_cast<long long>(triangles.size());
}

void DeltaComplex::check() const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e][0] >= vertex_count || edges[e][1] >= vertex_count) {
      throw InvalidComplexError("edge " + std::to_string(e) + " has an endpoint out of range");
    }
  }
  for (std::size_t f = 0; f < triangles.size(); ++f) {
    const auto& [e01, e02, e12] = triangles[f];
    if (e01 >= edges.size() || e02 >= edges.size() || e12 >= edges.size()) {
      throw InvalidComplexError("triangle " + std::to_string(f) + " has a face out of range");
    }
    bool ok = edges[e01][0] == edges[e02][0] && edges[e01][1] == edges[e12][0] && edges[e02][1] == edges[e12][1];
    if (!ok) throw InvalidComplexError("triangle " + std::to_string(f) + " has incompatible faces");
  }
}

DeltaComplex presentation_complex(const Presentation& p) {
  DeltaComplex c;
  c.vertex_count = 1;
  for (std::size_t g = 0; g < p.generator_count(); ++g) c.edges.push_back({0, 0});
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    Word core = cyclically_reduce(free_reduce(p.relators[i], p.alphabet)).core;
    if (core.empty()) throw InputError("relator " + std::to_string(i + 1) + " is trivial; simplify first");
    auto letters = core.expand();
    std::size_t centre = c.vertex_count++;
    std::size_t first_spoke = c.edges.size();
    for (std::size_t j = 0; j < letters.size(); ++j) c.edges.push_back({0, centre});
    for (std::size_t j = 0; j < letters.size(); ++j) {
      std::size_t loop = *p.alphabet.index_of(letters[j].symbol);
      std::size_t here = first_spoke + j;
      std::size_t next = first_spoke + (j + 1) % letters.size();
      if (letters[j].sign > 0) {
        c.triangles.push_back({loop, here, next});
      } else {
        c.triangles.push_back({loop, next, here});
      }
    }
  }
  c.check();
  return c;
}

DeltaComplex barycentric_subdivide(const DeltaComplex& c) {
  c.check();
  const std::size_t V = c.vertex_count;
  const std::size_t E = c.edges.size();
  DeltaComplex s;
  s.vertex_count = V + E + c.triangles.size();
  auto edge_mid = [&](std::size_t e) { return V + e; };
  auto tri_centre = [&](std::size_t f) { return V + E + f; };

  // Half edges 2e, 2e+1 run from the endpoints of e to its midpoint.
  for (std::size_t e = 0; e < E; ++e) {
    s.edges.push_back({c.edges[e][0], edge_mid(e)});
    s.edges.push_back({c.edges[e][1], edge_mid(e)});
  }
  // Per triangle: three vertex spokes, then three edge spokes (e01, e02, e12).
  for (std::size_t f = 0; f < c.triangles.size(); ++f) {
    const auto& [e01, e02, e12] = c.triangles[f];
    const std::size_t corner[3] = {c.edges[e01][0], c.edges[e01][1], c.edges[e02][1]};
    for (std::size_t corner_vertex : corner) s.edges.push_back({corner_vertex, tri_centre(f)});
    for (std::size_t e : {e01, e02, e12}) s.edges.push_back({edge_mid(e), tri_centre(f)});
  }
  // One triangle per flag vertex < edge < triangle, with vertices ordered
  // (vertex, edge midpoint, centre).
  constexpr std::size_t ends[3][2] = {{0, 1}, {0, 2}, {1, 2}};  // corners spanned by e01, e02, e12
  for (std::size_t f = 0; f < c.triangles.size(); ++f) {
    const std::size_t base = 2 * E + 6 * f;
    for (std::size_t q = 0; q < 3; ++q) {
      const std::size_t e = c.triangles[f][q];
      for (std::size_t side = 0; side < 2; ++side) {
        s.triangles.push_back({2 * e + side, base + ends[q][side], base + 3 + q});
      }
    }
  }
  s.check();
  return s;
}

SimplicialComplex to_simplicial(const DeltaComplex& c) {
  c.check();
  SimplicialComplex x;
  x.vertex_count = c.vertex_count;
  std::set<std::array<std::size_t, 2>> edge_sets;
  for (const auto& [a, b] : c.edges) {
    if (a == b) throw InternalError("degenerate edge survives subdivision");
    if (!edge_sets.insert({std::min(a, b), std::max(a, b)}).second) {
      throw InternalError("two edges share the same endpoints");
    }
  }
  std::set<std::array<std::size_t, 2>> covered;
  std::set<std::vector<std::size_t>> facets;
  for (const auto& [e01, e02, e12] : c.triangles) {
    std::vector<std::size_t> v{c.edges[e01][0], c.edges[e01][1], c.edges[e02][1]};
    std::sort(v.begin(), v.end());
    if (v[0] == v[1] || v[1] == v[2]) throw InternalError("degenerate triangle survives subdivision");
    if (!facets.insert(v).second) throw InternalError("two triangles share the same vertices");
    covered.insert({v[0], v[1]});
    covered.insert({v[0], v[2]});
    covered.insert({v[1], v[2]});
  }
  for (const auto& e : edge_sets) {
    if (!covered.count(e)) facets.insert({e[0], e[1]});
  }
  x.facets.assign(facets.begin(), facets.end());
  return x;
}

SimplicialComplex triangulate(const Presentation& p) {
  DeltaComplex c = presentation_complex(p);
  c = barycentric_subdivide(c);
  c = barycentric_subdivide(c);
  SimplicialComplex x = to_simplicial(c);
  if (x.euler_characteristic() != c.euler_characteristic()) {
    throw InternalError("Euler characteristic changed while reading off the simplicial complex");
  }
  if (!is_connected(x)) throw InternalError("triangulation is disconnected");
  return x;
}

std::vector<std::array<std::size_t, 2>> SimplicialComplex::edges() const {
  std::set<std::array<std::size_t, 2>> out;
  for (const auto& f : facets) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) out.insert({f[i], f[j]});
    }
  }
  return {out.begin(), out.end()};
}

std::vector<std::array<std::size_t, 3>> SimplicialComplex::triangles() const {
  std::vector<std::array<std::size_t, 3>> out;
  for (const auto& f : facets) {
    if (f.size() == 3) out.push_back({f[0], f[1], f[2]});
  }
  return out;
}

long long SimplicialComplex::euler_characteristic() const {
  return static_cast<long long>(vertex_count) - static_cast<long long>(edges().size()) +
         static_cast<long long>(triangles().size());
}

ChainComplexData chain_complex(const DeltaComplex& c) {
  c.check();
  ChainComplexData d{SparseMatrix(c.vertex_count, c.edges.size()), SparseMatrix(c.edges.size(), c.triangles.size())};
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    d.d1.add(c.edges[e][1], e, 1);
    d.d1.add(c.edges[e][0], e, -1);
  }
  for (std::size_t f = 0; f < c.triangles.size(); ++f) {
    const auto& [e01, e02, e12] = c.triangles[f];
    d.d2.add(e12, f, 1);
    d.d2.add(e02, f, -1);
    d.d2.add(e01, f, 1);
  }
  return d;
}

ChainComplexData chain_complex(const SimplicialComplex& x) {
  auto edges = x.edges();
  auto tris = x.triangles();
  std::map<std::array<std::size_t, 2>, std::size_t> edge_index;
  for (std::size_t i = 0; i < edges.size(); ++i) edge_index[edges[i]] = i;
  ChainComplexData d{SparseMatrix(x.vertex_count, edges.size()), SparseMatrix(edges.size(), tris.size())};
  for (std::size_t e = 0; e < edges.size(); ++e) {
    d.d1.add(edges[e][1], e, 1);
    d.d1.add(edges[e][0], e, -1);
  }
  for (std::size_t f = 0; f < tris.size(); ++f) {
    const auto& [i, j, k] = tris[f];
    d.d2.add(edge_index.at({j, k}), f, 1);
    d.d2.add(edge_index.at({i, k}), f, -1);
    d.d2.add(edge_index.at({i, j}), f, 1);
  }
  return d;
}

namespace {

std::vector<std::set<std::size_t>> adjacency(const SimplicialComplex& x) {
  std::vector<std::set<std::size_t>> adj(x.vertex_count);
  for (const auto& [a, b] : x.edges()) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  return adj;
}

}  // namespace

bool is_connected(const SimplicialComplex& x) {
  if (x.vertex_count == 0) return false;
  auto adj = adjacency(x);
  std::vector<bool> seen(x.vertex_count, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == x.vertex_count;
}

Presentation edge_path_presentation(const SimplicialComplex& x) {
  if (!is_connected(x)) throw DisconnectedError("complex is not connected");
  auto adj = adjacency(x);
  std::set<std::array<std::size_t, 2>> tree;
  std::vector<bool> seen(x.vertex_count, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      tree.insert({std::min(v, w), std::max(v, w)});
      queue.push_back(w);
    }
  }

  Presentation p;
  auto name = [](std::size_t i, std::size_t j) { return "e_" + std::to_string(i) + "_" + std::to_string(j); };
  for (const auto& e : x.edges()) {
    if (!tree.count(e)) p.alphabet.add(name(e[0], e[1]));
  }
  auto step = [&](std::size_t i, std::size_t j) {
    if (tree.count({i, j})) return Word{};
    return Word::letter(name(i, j));
  };
  for (const auto& [i, j, k] : x.triangles()) {
    Word r = step(i, j) * step(j, k) * step(i, k).inverse();
    if (!r.empty()) p.relators.push_back(std::move(r));
  }
  return p;
}

std::string format_simplicial(const SimplicialComplex& x) {
  std::ostringstream out;
  out << "vertices " << x.vertex_count << '\n';
  for (const auto& f : x.facets) {
    out << "simplex";
    for (std::size_t v : f) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

SimplicialComplex parse_simplicial(std::string_view text) {
  SimplicialComplex x;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    if (keyword == "vertices") {
      if (header || !(fields >> x.vertex_count)) throw ParseError("bad 'vertices' line", line_no, 1);
      header = true;
    } else if (keyword == "simplex") {
      if (!header) throw ParseError("'simplex' before 'vertices'", line_no, 1);
      std::vector<std::size_t> f;
      std::size_t v;
      while (fields >> v) f.push_back(v);
      if (!fields.eof()) throw ParseError("bad vertex index", line_no, 1);
      if (f.size() < 2 || f.size() > 3) throw ParseError("simplices have 2 or 3 vertices", line_no, 1);
      if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end()) {
        throw ParseError("vertex indices must be strictly ascending", line_no, 1);
      }
      if (f.back() >= x.vertex_count) throw ParseError("vertex index out of range", line_no, 1);
      x.facets.push_back(std::move(f));
    } else {
      throw ParseError("expected 'vertices' or 'simplex'", line_no, 1);
    }
  }
  if (!header) throw ParseError("missing 'vertices' line", line_no + 1, 1);
  std::sort(x.facets.begin(), x.facets.end());
  return x;
}

}  // namespace gpforge
