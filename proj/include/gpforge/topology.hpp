#pragma once

// From presentations to finite simplicial complexes and back.
//
// The presentation 2-complex has one vertex, a loop per generator and a
// polygon per relator. Polygons are coned off from a centre vertex so that
// every 2-cell is a triangle, giving a Delta-complex; two barycentric
// subdivisions turn it into a simplicial complex with the same fundamental
// group. Coning a disc does not change the space, so the Euler
// characteristic stays 1 - |S| + |R|.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gpforge/homology.hpp"
#include "gpforge/presentations.hpp"

namespace gpforge {

/// Edges run from their first to their second vertex. A triangle lists its
/// faces (e01, e02, e12) as in a Delta-complex: with vertices v0, v1, v2,
/// e01 runs v0 -> v1, e02 runs v0 -> v2 and e12 runs v1 -> v2. Vertices and
/// edges may be identified arbitrarily.
struct DeltaComplex {
  std::size_t vertex_count = 0;
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::array<std::size_t, 3>> triangles;

  long long euler_characteristic() const;
  /// Throws InvalidComplexError if indices or face maps are inconsistent.
  void check() const;
};

struct SimplicialComplex {
  std::size_t vertex_count = 0;
  // Maximal simplices as ascending vertex tuples of size 2 or 3, sorted
  // lexicographically. Vertices in no facet are implied by vertex_count.
  std::vector<std::vector<std::size_t>> facets;

  std::vector<std::array<std::size_t, 2>> edges() const;      // all 1-simplices, sorted
  std::vector<std::array<std::size_t, 3>> triangles() const;  // all 2-simplices, sorted
  long long euler_characteristic() const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;
};

/// Throws InputError on an empty relator.
DeltaComplex presentation_complex(const Presentation& p);

DeltaComplex barycentric_subdivide(const DeltaComplex& c);

/// Reads off a simplicial complex; throws InternalError if the complex has
/// a degenerate or repeated simplex.
SimplicialComplex to_simplicial(const DeltaComplex& c);

SimplicialComplex triangulate(const Presentation& p);

ChainComplexData chain_complex(const DeltaComplex& c);
ChainComplexData chain_complex(const SimplicialComplex& x);

bool is_connected(const SimplicialComplex& x);

/// Presentation of pi_1 from a BFS spanning tree rooted at vertex 0 (smaller
/// neighbours first). Generators are the non-tree edges, named `e_i_j`;
/// relators are the boundary words of the triangles, with trivial ones
/// omitted. Throws DisconnectedError unless x is connected.
Presentation edge_path_presentation(const SimplicialComplex& x);

/// `vertices N` followed by one `simplex i j [k]` line per facet.
std::string format_simplicial(const SimplicialComplex& x);
SimplicialComplex parse_simplicial(std::string_view text);

}  // namespace gpforge
