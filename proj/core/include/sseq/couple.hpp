#pragma once

#include <optional>

#include "sseq/instances.hpp"
#include "sseq/ssengine.hpp"

namespace sseq {

/* Degree of a couple node: (s, t). The Bockstein couple lives on s = 0
 * with t the cohomological degree; filtration-style couples use both. */
using CoupleDeg = std::pair<int, int>;

/* Exact couple with nodes presented over shared ambient coordinate spaces
 * (one per degree), so pages keep chain-level representatives. Maps are
 * stored by source degree; absent nodes are trivial. */
struct BigradedExactCouple {
    std::map<CoupleDeg, Subquotient> D, E;
    std::map<CoupleDeg, GroupHom> i, j, k;
    CoupleDeg shift_i{0, 0}, shift_j{0, 0}, shift_k{0, 1};
    Int modulus = 0;

    /* declared periodicity along i: isos P: D^deg -> D^{deg+shift} */
    std::optional<CoupleDeg> periodicity_shift;
    std::map<CoupleDeg, GroupHom> periodicity;

    /* towers truncated on the left carry one phantom layer (the honest
     * tower continues by identities); no checks run on that layer */
    std::optional<int> boundary_s;

    FGAbelianGroup d_group(CoupleDeg deg) const;
    FGAbelianGroup e_group(CoupleDeg deg) const;
    const Subquotient* d_node(CoupleDeg deg) const;
    const Subquotient* e_node(CoupleDeg deg) const;
    const GroupHom* map_at(const std::map<CoupleDeg, GroupHom>& table, CoupleDeg deg) const;
};

/* Kernel-equals-image at every node, with absent nodes read as zero.
 * Throws ExactnessViolation on failure. */
void verify_exactness(const BigradedExactCouple& c);

/* Standard derived couple: D' = im(i), E' = ker(jk)/im(jk), i' = i,
 * j' = j i^{-1} (degree shift of j minus that of i), k' = k. Nodes stay
 * presented over the original ambients; exactness of the output is
 * verified. */
BigradedExactCouple derive(const BigradedExactCouple& c);

/* The coefficient-sequence couple of 0 -> Z -·n-> Z -> Z/n -> 0 on the
 * cochains of K: D = H*(K;Z), E = H*(K;Z/n), i = multiplication by n,
 * j = reduction, k = the connecting map, with the sign-corrected
 * coboundary. */
BigradedExactCouple bockstein_couple(const OrderedComplex& K, const Int& n);

struct BocksteinPages {
    Int modulus = 0;
    /* pages[r-1] = E_r table keyed by cohomological degree */
    std::vector<std::map<int, FGAbelianGroup>> tables;
    std::vector<std::map<int, GroupHom>> differentials;  // d_r = j_r k_r
    int stable_index = -1;  // first r at which deriving no longer moves anything

    const std::map<int, FGAbelianGroup>& stable() const { return tables.back(); }
    std::vector<long> ranks(int r, int max_degree) const;  // generator counts per degree
};

/* Pages through r_max or the derivation fixed point, whichever is first.
 * E_{r+1} = H(E_r, d_r) is recomputed independently at every step. */
BocksteinPages bockstein_pages(const BigradedExactCouple& c, int r_max);

/* Pairing on the mod-n Bockstein E_r. For Kx == Ky this is the internal
 * cup pairing on E_r(K); otherwise the external pairing through the
 * staircase product. At r = 1 it is the mod-n cup product on the nose. */
PagePairing bockstein_pairing(const OrderedComplex& Kx, const OrderedComplex& Ky, const Int& n,
                              int r);

/* Synthetic page view of E_r (entries at (f = degree, c = 0), d of
 * bidegree (1,0)), with chain-level representatives. */
Page bockstein_page_view(const BigradedExactCouple& c, int r);

struct LocalizedGroup {
    FGAbelianGroup base;
    IntMat endo;            // the inverted endomorphism on base coordinates
    bool endo_invertible = false;
    std::vector<FGAbelianGroup> graded_pieces;  // filtration by images along i
    std::string presentation;                   // e.g. "Z[1/2]"
};

struct Localization {
    std::map<CoupleDeg, LocalizedGroup> table;
};

/* Colimit of D along the periodicity-twisted i, per degree: the tail
 * endomorphism phi = i . P gets its stable kernel removed and is then
 * inverted symbolically (generators with declared denominators). Requires
 * a declared periodicity. */
Localization beta_localize(const BigradedExactCouple& c);

/* Couple of the filtered complex: D^{(s,n)} = H^n(F^s), E^{(s,n)} =
 * H^n(F^s/F^{s+1}), i restriction, j projection, k connecting. Used to
 * assemble beta-periodic couples from AHSS data. */
BigradedExactCouple filtration_couple(const FilteredCochainComplex& C);

}  // namespace sseq
