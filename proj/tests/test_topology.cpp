#include <doctest.h>

#include "gpforge/errors.hpp"
#include "gpforge/homology.hpp"
#include "gpforge/topology.hpp"
#include "oracles.hpp"

using namespace gpforge;

TEST_CASE("presentation complex shape") {
  Presentation p = oracle::load("bs23.grp");
  DeltaComplex c = presentation_complex(p);
  // One relator of length 7 coned off: 2 vertices, 2 loops + 7 spokes, 7 triangles.
  CHECK(c.vertex_count == 2);
  CHECK(c.edges.size() == 9);
  CHECK(c.triangles.size() == 7);
  CHECK(c.euler_characteristic() == 0);
  CHECK_THROWS_AS(presentation_complex(parse_presentation("gens a\nrel 1\n")), InputError);
}

TEST_CASE("barycentric subdivision multiplies triangles by six") {
  DeltaComplex c = presentation_complex(oracle::load("torus.grp"));
  DeltaComplex b1 = barycentric_subdivide(c);
  DeltaComplex b2 = barycentric_subdivide(b1);
  CHECK(b1.triangles.size() == 6 * c.triangles.size());
  CHECK(b2.triangles.size() == 36 * c.triangles.size());
  CHECK(b1.euler_characteristic() == c.euler_characteristic());
  CHECK(b2.euler_characteristic() == c.euler_characteristic());
  b2.check();
}

TEST_CASE("delta complex checks face maps") {
  DeltaComplex c;
  c.vertex_count = 2;
  c.edges = {{0, 1}, {0, 1}, {0, 0}};
  c.triangles = {{0, 1, 2}};
  CHECK_THROWS_AS(c.check(), InvalidComplexError);
}

TEST_CASE("triangulation keeps euler characteristic and first homology") {
  for (const char* name : {"bs23.grp", "torus.grp", "genus2.grp", "rp2.grp", "c3.grp"}) {
    Presentation p = oracle::load(name);
    SimplicialComplex x = triangulate(p);
    CAPTURE(name);
    CHECK(x.euler_characteristic() ==
          1 - static_cast<long long>(p.generator_count()) + static_cast<long long>(p.relator_count()));
    auto h = complex_homology(chain_complex(x));
    CHECK(h[0].format() == "rank=1 torsion=[]");
    CHECK(h[1] == abelianization(p));
    CHECK(is_connected(x));
    CHECK(abelianization(edge_path_presentation(x)) == abelianization(p));
  }
}

TEST_CASE("simplicial text round trip") {
  SimplicialComplex x = triangulate(oracle::load("rp2.grp"));
  std::string text = format_simplicial(x);
  CHECK(parse_simplicial(text) == x);
  CHECK(format_simplicial(triangulate(oracle::load("rp2.grp"))) == text);
  CHECK_THROWS_AS(parse_simplicial("simplex 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_simplicial("vertices 3\nsimplex 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_simplicial("vertices 2\nsimplex 0 2\n"), ParseError);
}

TEST_CASE("disconnected complexes have no edge path group") {
  SimplicialComplex x = parse_simplicial("vertices 3\nsimplex 0 1\n");
  CHECK_FALSE(is_connected(x));
  CHECK_THROWS_AS(edge_path_presentation(x), DisconnectedError);
}

TEST_CASE("free group triangulates to a graph") {
  SimplicialComplex x = triangulate(oracle::load("free2.grp"));
  CHECK(x.triangles().empty());
  CHECK(x.euler_characteristic() == -1);
  CHECK(complex_homology(chain_complex(x))[1].rank == 2);
}
