#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "sseq/exactlin.hpp"
#include "sseq/graded.hpp"

namespace sseq {

/* Engine bigrading: f = filtration degree, c = coefficient degree,
 * total cohomological degree n = f - c. d_r moves (f,c) to (f+r, c+r-1). */
struct Bidegree {
    int f = 0;
    int c = 0;
    int n() const { return f - c; }
    auto operator<=>(const Bidegree&) const = default;
    std::string str() const;
};

struct FilteredCell {
    std::string label;
    int degree = 0;  // total degree n
    int filt = 0;    // filtration degree, >= 0
};

using ChainTerms = std::vector<std::pair<int, Int>>;  // (cell index, coefficient)

/* Finite cochain complex with a filtration the differential does not
 * decrease, over Z or Z/m, with an optional filtration-additive product
 * for which the differential is a derivation (checked at construction). */
class FilteredCochainComplex {
public:
    FilteredCochainComplex() = default;
    FilteredCochainComplex(std::vector<FilteredCell> cells,
                           std::vector<ChainTerms> differential, Int modulus);
    FilteredCochainComplex(std::vector<FilteredCell> cells,
                           std::vector<ChainTerms> differential, Int modulus,
                           std::map<std::pair<int, int>, ChainTerms> product);

    int cell_count() const { return int(cells_.size()); }
    const FilteredCell& cell(int i) const { return cells_[i]; }
    const Int& modulus() const { return modulus_; }
    const ChainTerms& differential(int i) const { return diff_[i]; }
    bool has_product() const { return has_product_; }
    const ChainTerms& product(int i, int j) const;

    int max_filt() const { return max_filt_; }
    int min_degree() const { return min_degree_; }
    int max_degree() const { return max_degree_; }

    /* global cell indices of total degree n, in index order */
    const std::vector<int>& degree_cells(int n) const;
    int position_in_degree(int global_index) const;
    /* full differential C^n -> C^{n+1} over the per-degree bases */
    IntMat differential_matrix(int n) const;
    IntVec to_degree_vector(int n, const ChainTerms& chain) const;

private:
    void init();
    std::vector<FilteredCell> cells_;
    std::vector<ChainTerms> diff_;
    Int modulus_ = 0;
    bool has_product_ = false;
    std::map<std::pair<int, int>, ChainTerms> product_;
    int max_filt_ = 0, min_degree_ = 0, max_degree_ = 0;
    std::map<int, std::vector<int>> by_degree_;
    std::vector<int> pos_in_degree_;
};

/* One page of the spectral sequence. Entries are subquotients of the
 * degree-n cochain space; d_r is stored as a map on normal forms, moving
 * bidegrees by d_shift (the engine default is (r, r-1); exact-couple pages
 * use (1, 0) at every stage). */
struct Page {
    int r = 0;
    int d_shift_f = 0, d_shift_c = 0;
    std::map<Bidegree, Subquotient> entries;
    std::map<Bidegree, GroupHom> d;

    Bidegree d_target(Bidegree b) const { return {b.f + d_shift_f, b.c + d_shift_c}; }
    FGAbelianGroup group_at(Bidegree b) const;
    const Subquotient* entry_at(Bidegree b) const;
    std::map<Bidegree, FGAbelianGroup> groups() const;  // nontrivial only
};

/* E_r of the filtered complex: E_r^f = Z_r^f / (Z_{r-1}^{f+1} + d Z_{r-1}^{f-r+1})
 * with Z_r^f = {x in F^f : dx in F^{f+r}}, computed per total degree. */
Page page(const FilteredCochainComplex& C, int r);

/* Stable page; pages do not move for r > max filtration + 1. limiting_r
 * receives the first index from which every later page equals the stable
 * one and every later differential vanishes. */
Page e_infinity(const FilteredCochainComplex& C, int* limiting_r = nullptr);

/* H^n of the total complex, over Z or Z/m per the complex's tag. */
Subquotient total_cohomology(const FilteredCochainComplex& C, int n);

struct AbutmentReport {
    bool ok = true;
    std::string mismatch;  // offending degree if not ok
    /* per (f, n): associated-graded piece vs stable page entry */
    std::map<Bidegree, std::pair<FGAbelianGroup, FGAbelianGroup>> pieces;
};

/* For each total degree, the filtration of H^n(Tot) must have associated
 * graded isomorphic (by the canonical inclusion-induced map) to the
 * stable page. */
AbutmentReport abutment_check(const FilteredCochainComplex& C);

/* Chain-level pairing: pair of cell indices -> chain in the target. */
using ChainPairing = std::function<ChainTerms(int, int)>;

struct PagePairing {
    int r = 0;
    Page px, py, pxy;
    /* (b1, b2) -> table[g1][g2] = target coordinates */
    std::map<std::pair<Bidegree, Bidegree>, std::vector<std::vector<IntVec>>> tables;

    const std::vector<std::vector<IntVec>>* table_at(Bidegree b1, Bidegree b2) const;
};

/* Pairing of pages induced by a filtration-additive, derivation-compatible
 * chain pairing; well-definedness is verified on generators (images of
 * boundary-part generators must vanish in the target page). */
PagePairing page_pairing(const FilteredCochainComplex& Cx, const FilteredCochainComplex& Cy,
                         const FilteredCochainComplex& Cxy, const ChainPairing& mu, int r);

/* Diagonal case: the complex's own product. */
PagePairing page_pairing(const FilteredCochainComplex& C, int r);

struct LeibnizReport {
    bool ok = true;
    std::string failing;  // bidegrees and generators of the first failure
};

/* d_r(x y) = d_r(x) y + (-1)^{deg x} x d_r(y) on all generator pairs. */
LeibnizReport leibniz_check(const PagePairing& pp);

/* Optional identification of the two chain levels per bidegree, mapping
 * ambient vectors of A-entries into the ambient of B-entries. Identity
 * when omitted (requires equal ambients). */
using AmbientBridge = std::function<IntVec(Bidegree, const IntVec&)>;

struct CompareReport {
    bool yes = true;
    std::string counterexample;
    std::map<Bidegree, GroupHom> witnesses;
};

/* Do bidegreewise isomorphisms, scaled by the sign family (evaluated at
 * (f, c)), intertwine the two pairings? Witness isomorphisms are built by
 * projecting A-representatives into B-entries. */
CompareReport compare_global_iso(const PagePairing& a, const PagePairing& b,
                                 const SignFamily& family, const AmbientBridge& bridge = {});

struct DiscrepancyReport {
    bool defined = true;       // every generator pair gave a consistent sign
    bool matches_f2c1 = true;  // ratio == (-1)^{f2 c1} (homotopy-indexed: t(p+q))
    bool matches_f1c2 = true;  // ratio == (-1)^{f1 c2}
    bool matches_plus1 = true;
    long constrained = 0;  // generator pairs that pin the sign
    std::string detail;
};

/* Pointwise sign ratio pairing_a / pairing_b on generator pairs, after
 * scaling the identifications by the sign family (identity measures the
 * raw chain-level ratio). Classified against the two bivariate patterns
 * the graded/ungraded comparison square can realize. */
DiscrepancyReport pairing_discrepancy(const PagePairing& a, const PagePairing& b,
                                      const SignFamily& family = SignFamily::identity(),
                                      const AmbientBridge& bridge = {});

}  // namespace sseq
