#pragma once

#include <optional>

#include "sseq/fixtures.hpp"
#include "sseq/graded.hpp"
#include "sseq/ssengine.hpp"

namespace sseq {

/* Skeletal-filtration tower of K with graded coefficients A: one cell per
 * (p-simplex, nonzero level degree q) with total degree p - q inside the
 * requested window; filtration p; differential the graded coboundary;
 * product the graded cup along the front/back diagonal. */
struct AhssTower {
    FilteredCochainComplex complex;
    GradedRing ring;
    int n_min = 0, n_max = 0;
    /* (p, q) -> first global cell index (cells of a block are consecutive
     * in simplex order) plus the block length */
    std::map<std::pair<int, int>, std::pair<int, int>> blocks;

    int cell_index(int p, int q, int simplex_ix) const;  // -1 when absent
    /* restrict a degree-space vector to the (f, c) block: the chain-level
     * identification E_r^{f,c} -> C^{f,c} */
    IntVec block_restrict(Bidegree b, const IntVec& degree_vec) const;
    AmbientBridge bridge() const;
};

AhssTower build_ahss(const OrderedComplex& K, const GradedRing& A, int n_min, int n_max,
                     bool with_product = true);
/* Natural window (finite rings only). */
AhssTower build_ahss(const OrderedComplex& K, const GradedRing& A, bool with_product = true);

/* Pairing of the bigraded cohomology groups H^{p,q}(K;A), placed at engine
 * bidegrees (f = p, c = q), under the graded cup (graded = true) or the
 * plain cup with the sign (-1)^{sp} that ignores coefficient degrees
 * (graded = false). Entries
 * mirror the cells of the corresponding tower window. */
PagePairing cohomology_pairing(const OrderedComplex& K, const GradedRing& A, int n_min, int n_max,
                               bool graded);

/* Preimage filtration: filt(sigma) = dim p(sigma) on the cochains of the
 * source, with the cup product. Converges to H*(source). */
FilteredCochainComplex build_serre(const SimplicialMap& p, const Int& modulus);

/* The two filtrations of the staircase product triangulation. */
struct ProductFiltrationComparison {
    FilteredCochainComplex skeletal;
    FilteredCochainComplex product_filtered;
    bool e1_equal = false;
    bool e2_isomorphic = false;
    std::map<Bidegree, std::pair<FGAbelianGroup, FGAbelianGroup>> e1_table;  // skeletal, product
    std::map<Bidegree, std::pair<FGAbelianGroup, FGAbelianGroup>> e2_table;
};
ProductFiltrationComparison compare_product_filtrations(const OrderedComplex& Kx,
                                                        const OrderedComplex& Ky,
                                                        const Int& modulus);

/* E_2-style table H^q(G; A_t) via the normalized bar complex, entries at
 * (f = q, c = t) for q < maxdim, with the graded cup pairing and the
 * ungraded pairing for the discrepancy comparison. The action must be
 * trivial: a nonempty non-identity action is rejected. */
struct GroupPage {
    BarComplex bar;
    Page page;
    PagePairing pairing;
    PagePairing ungraded_pairing;
};
GroupPage build_group_page(const GroupTable& G, const GradedRing& A, int maxdim,
                           const std::vector<int>& action = {});

/* Closed cover of a complex by subcomplexes. */
struct CoverData {
    OrderedComplex base;
    std::vector<std::vector<Simplex>> pieces;
};

/* Cech double complex of the cover with the column filtration; total
 * differential is Cech + (-1)^m cochain on column m. */
struct DescentTower {
    FilteredCochainComplex complex;
    bool all_pieces_acyclic = false;  // H^{>0}(U_I) = 0 for every intersection
    std::vector<std::pair<std::vector<int>, int>> intersection_sizes;  // (I, #simplices)
};
DescentTower build_descent(const CoverData& cover, const Int& modulus);

/* With acyclic pieces the cochain-degree-0 line of E_2 is H*(base) and the
 * rest vanishes. */
bool descent_e2_identification(const DescentTower& tower, const OrderedComplex& base,
                               const Int& modulus);

/* External cup pairing of two skeletal towers into the tower of the
 * staircase product: cells pair to the product cells whose projections
 * hit them, with the graded cup sign. */
ChainPairing external_cup(const AhssTower& tx, const AhssTower& ty, const AhssTower& txy,
                          const ProductComplex& prod);

/* Parsed description of a tower to build (CLI input). */
struct TowerSpec {
    std::string kind;  // ahss | serre | bockstein | descent | group
    std::optional<OrderedComplex> complex;
    std::optional<SimplicialMap> map;
    std::optional<CoverData> cover;
    std::optional<GroupTable> group;
    std::optional<GradedRing> coefficients;
    Int modulus = 0;
    int max_page = 0;  // 0: through stabilization
    bool diagonal = true;
    std::optional<std::pair<int, int>> degree_window;
};

}  // namespace sseq
