#pragma once

#include <map>
#include <string>
#include <vector>

#include "sseq/exactlin.hpp"
#include "sseq/intmat.hpp"

namespace sseq {

/* Vertices of a simplex as strictly increasing indices. */
using Simplex = std::vector<int>;

/* Finite ordered simplicial complex. The vertex order is fixed at
 * construction; simplices are stored per dimension in lexicographic
 * order, which fixes every basis the library uses. */
class OrderedComplex {
public:
    OrderedComplex() = default;
    /* The simplex list must be closed under faces and contain every used
     * vertex as a singleton; throws SchemaError otherwise. */
    OrderedComplex(std::vector<std::string> vertex_names, std::vector<Simplex> simplices);

    /* Convenience: compute the closure of a maximal-face list. */
    static OrderedComplex from_maximal(std::vector<std::string> vertex_names,
                                       const std::vector<Simplex>& maximal);

    int vertex_count() const { return int(vertex_names_.size()); }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    int dim() const { return int(by_dim_.size()) - 1; }
    const std::vector<Simplex>& simplices(int d) const;
    int count(int d) const;
    int index_of(int d, const Simplex& s) const;  // -1 if absent
    bool has(const Simplex& s) const;
    std::vector<Simplex> all_simplices() const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, int>> index_;
};

/* Map of ordered complexes given by a vertex assignment. Image of every
 * simplex must be a simplex after deleting repeats, and the assignment
 * must be monotone on each simplex. */
class SimplicialMap {
public:
    SimplicialMap(OrderedComplex source, OrderedComplex target, std::vector<int> vertex_map);

    const OrderedComplex& source() const { return src_; }
    const OrderedComplex& target() const { return dst_; }
    const std::vector<int>& vertex_map() const { return map_; }

    /* Image with repeats deleted. */
    Simplex image(const Simplex& s) const;
    /* C_d(source) -> C_d(target); degenerate images contribute 0. */
    IntMat chain_matrix(int d) const;
    /* Cochain pullback C^d(target) -> C^d(source). */
    IntMat cochain_matrix(int d) const;

private:
    OrderedComplex src_, dst_;
    std::vector<int> map_;
};

/* Basis-labelled integer chain complex; boundary[d] maps degree d to
 * degree d-1. The constructor checks boundary*boundary = 0. */
class IntChainComplex {
public:
    IntChainComplex() = default;
    IntChainComplex(std::vector<std::vector<std::string>> labels, std::vector<IntMat> boundary);

    int dim() const { return int(labels_.size()) - 1; }
    int rank(int d) const;
    const std::vector<std::string>& labels(int d) const;
    const IntMat& boundary(int d) const;  // d in [1, dim]

    /* Coboundary on Hom(C_p, -) with the sign-corrected convention
     * (delta a)(c) = -(-1)^p a(boundary c). */
    IntMat delta_matrix(int p) const;

    /* H^p with coefficients Z (modulus 0) or Z/m, presented over the
     * cochain basis in degree p. */
    Subquotient cohomology(int p, const Int& modulus) const;

    /* dim H^p(C; Z/p) for prime p, by field elimination (fast path). */
    long field_cohomology_dim(int deg, const Int& prime) const;

private:
    std::vector<std::vector<std::string>> labels_;
    std::vector<IntMat> boundary_;
};

IntChainComplex chain_complex(const OrderedComplex& K);

/* Cochain on a complex, with coefficients Z (modulus 0) or Z/m. */
struct Cochain {
    const OrderedComplex* complex = nullptr;
    int degree = 0;
    Int modulus = 0;
    IntVec values;  // one per degree-cell, in basis order

    Cochain() = default;
    Cochain(const OrderedComplex& K, int deg, Int mod);
    Cochain(const OrderedComplex& K, int deg, Int mod, IntVec vals);

    Int reduce(const Int& x) const { return modulus == 0 ? x : int_mod(x, modulus); }
    bool is_zero() const;
    bool operator==(const Cochain& o) const;
};

/* (delta a)(c) = -(-1)^p a(boundary c). */
Cochain delta(const Cochain& a);

/* (a cup b)(v0..v_{p+q}) = (-1)^{qp} a(front) * b(back), p = deg a, q = deg b. */
Cochain cup(const Cochain& a, const Cochain& b);

/* Degreewise signs translating between these conventions and the classical
 * ones (delta = a(boundary c), cup without sign). */
struct ClassicalIso {
    std::vector<int> phi;  // phi[p] in {+1, -1}, phi[0] = +1
    bool delta_identity = false;  // phi . delta_new = delta_classical . phi
    bool cup_identity = false;    // phi(a cup_new b) = phi a cup_classical phi b
    bool found() const { return delta_identity && cup_identity; }
};

/* Searches all sign families with phi(0) = +1 through max_degree and
 * returns the one satisfying both identities; also spot-checks the family
 * on actual cochains of K. */
ClassicalIso classical_iso(const OrderedComplex& K, int max_degree = 6);

/* Classical-convention operators, for comparison tests. */
Cochain delta_classical(const Cochain& a);
Cochain cup_classical(const Cochain& a, const Cochain& b);

/* Staircase triangulation of |K| x |L|: vertices are pairs ordered
 * lexicographically, simplices are monotone chains whose projections are
 * simplices. Projections are simplicial. */
struct ProductComplex {
    OrderedComplex complex;
    SimplicialMap proj1, proj2;
    /* vertex (i, j) -> index in the product */
    int vertex_index(int i, int j) const { return i * l0_ + j; }
    int l0_ = 0;
};
ProductComplex product(const OrderedComplex& K, const OrderedComplex& L);

/* Finite group given by its multiplication table. Throws InvalidGroupTable
 * unless the table is a group. */
struct GroupTable {
    std::vector<std::vector<int>> table;
    int identity = 0;

    explicit GroupTable(std::vector<std::vector<int>> t);
    int order() const { return int(table.size()); }
    int mul(int a, int b) const { return table[a][b]; }
};

/* Normalized bar complex of BG through degree maxdim: degree-n basis is
 * tuples (g_1..g_n) with no identity entry. */
struct BarComplex {
    GroupTable group;
    int maxdim;
    std::vector<std::vector<std::vector<int>>> tuples;  // per degree
    IntChainComplex chains;

    int index_of(int d, const std::vector<int>& tuple) const;
};
BarComplex nerve(const GroupTable& G, int maxdim);

}  // namespace sseq
