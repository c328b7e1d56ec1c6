#pragma once

#include <json.hpp>

#include "sseq/couple.hpp"
#include "sseq/instances.hpp"

namespace sseq::io {

using json = nlohmann::json;

/* Complex files: {"schema_version":1, "vertices":[names...],
 * "simplices":[[indices]...]} with the full, face-closed simplex list.
 * Non-closed sets are rejected. */
json complex_to_json(const OrderedComplex& K);
OrderedComplex complex_from_json(const json& j);

/* Maps: {"schema_version":1, "source":<complex|"fixture:name">,
 * "target":..., "vertex_map":[target indices]} */
SimplicialMap map_from_json(const json& j);

/* Graded rings: {"schema_version":1, "levels":{"q":"Z"|"Z/m"|"0"},
 * "pairing":[{"q":..,"t":..,"constant":"c"}],
 * "period":{"degree":d,"unit":true}} */
json ring_to_json(const GradedRing& A);
GradedRing ring_from_json(const json& j);

/* Groups: {"schema_version":1, "table":[[...]]} */
GroupTable group_from_json(const json& j);

/* Coefficient shorthand: "Z", "Z/m", "laurent:d", "two_line", or a full
 * graded ring object. */
GradedRing coefficients_from_json(const json& j);

/* A complex reference: inline object or "fixture:<name>". */
OrderedComplex resolve_complex(const json& j);

/* Tower specifications (CLI input). */
TowerSpec towerspec_from_json(const json& j);

/* Page files: entries (f, c, rank, torsion, d target and matrix), integer
 * entries in full decimal, rows sorted by bidegree. */
json page_to_json(const Page& page, const Int& modulus);
json pages_to_json(const std::vector<Page>& pages, const Int& modulus);
std::string pages_to_csv(const std::vector<Page>& pages);

/* Couple files mirror the page format with a node tag (D or E) per entry
 * and the i/j/k map tables. */
json couple_to_json(const BigradedExactCouple& c);

/* Engine (f,c) <-> homotopy-style (p,q) indexing of a page file, with
 * quadratic sign families substituted along the dictionary. Applying the
 * conversion twice returns the original file byte for byte. */
json reindex_page_file(const json& page_file);

/* Deterministic serialization used for every file the tools write. */
std::string dump_canonical(const json& j);

json load_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace sseq::io
