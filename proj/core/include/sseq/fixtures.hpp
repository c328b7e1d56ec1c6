#pragma once

#include "sseq/simplicial.hpp"

namespace sseq::fixtures {

OrderedComplex point();
OrderedComplex standard_simplex(int n);  // full n-simplex
OrderedComplex circle();                 // triangle S^1: 3 vertices, 3 edges
OrderedComplex sphere2();                // boundary of the 3-simplex
OrderedComplex rp2();                    // 6-vertex projective plane
/* Antipodal quotient of the barycentric subdivision of the 16-cell
 * boundary: 40 vertices, 192 tetrahedra. */
OrderedComplex rp3();
OrderedComplex torus();                  // 9-vertex staircase S^1 x S^1
OrderedComplex klein_bottle();           // 9 vertices, fibered over circle()

SimplicialMap torus_to_circle();         // first-factor projection
SimplicialMap klein_to_circle();

/* Cone with the apex appended after the base vertices. */
OrderedComplex cone(const OrderedComplex& base, const std::string& apex_name = "apex");

/* Fixture registry for the CLI: name -> complex. */
OrderedComplex by_name(const std::string& name);
std::vector<std::string> names();

GroupTable cyclic_group(int n);
GroupTable klein_four_group();

}  // namespace sseq::fixtures
