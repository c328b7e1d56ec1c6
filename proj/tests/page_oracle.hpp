#pragma once

/* Brute-force recomputation of page entries straight from the cell data:
 * cycle lattices by column reduction, boundary parts by pushforward,
 * isomorphism types by saturation and coset enumeration. Shares nothing
 * with the engine's page machinery beyond reading the complex. */

#include "oracle.hpp"
#include "sseq/ssengine.hpp"

namespace oracle {

inline IntMat page_cycle_lattice(const sseq::FilteredCochainComplex& C, int g, int n, int rr)
{
    const auto& amb = C.degree_cells(n);
    const auto& tgt = C.degree_cells(n + 1);
    std::vector<int> sup, rows;
    for (int p = 0; p < int(amb.size()); ++p)
        if (C.cell(amb[p]).filt >= std::max(g, 0))
            sup.push_back(p);
    for (int q = 0; q < int(tgt.size()); ++q)
        if (C.cell(tgt[q]).filt < g + rr)
            rows.push_back(q);
    IntMat m(int(rows.size()), int(sup.size()));
    for (int c = 0; c < int(sup.size()); ++c)
        for (const auto& [j, coef] : C.differential(amb[sup[c]]))
            for (int q = 0; q < int(rows.size()); ++q)
                if (tgt[rows[q]] == j)
                    m.at(q, c) += coef;
    IntMat k = kernel(m, C.modulus());
    IntMat out(int(amb.size()), k.cols());
    for (int c = 0; c < k.cols(); ++c)
        for (int p = 0; p < int(sup.size()); ++p)
            out.at(sup[p], c) = k.at(p, c);
    return out;
}

inline IntMat page_boundary_lattice(const sseq::FilteredCochainComplex& C, int g, int n, int rr)
{
    /* d of the cycle lattice one degree down */
    const auto& low = C.degree_cells(n - 1);
    const auto& amb = C.degree_cells(n);
    IntMat k = page_cycle_lattice(C, g, n - 1, rr);
    IntMat out(int(amb.size()), k.cols());
    for (int c = 0; c < k.cols(); ++c)
        for (int p = 0; p < int(low.size()); ++p)
            if (k.at(p, c) != 0)
                for (const auto& [j, coef] : C.differential(low[p]))
                    out.at(C.position_in_degree(j), c) += k.at(p, c) * coef;
    return out;
}

/* Isomorphism type of E_r^{f, n}. */
inline FGAbelianGroup page_entry_type(const sseq::FilteredCochainComplex& C, int r, int f, int n)
{
    const auto& amb = C.degree_cells(n);
    IntMat z = page_cycle_lattice(C, f, n, r);
    IntMat b1 = page_cycle_lattice(C, f + 1, n, r - 1);
    IntMat b2 = page_boundary_lattice(C, f - r + 1, n, r - 1);
    IntMat mcols(int(amb.size()), 0);
    if (C.modulus() != 0) {
        std::vector<IntVec> cols;
        for (int p = 0; p < int(amb.size()); ++p) {
            IntVec e(amb.size());
            e[p] = C.modulus();
            cols.push_back(e);
        }
        mcols = IntMat::from_columns(int(amb.size()), cols);
    }
    IntMat t = IntMat::hconcat(IntMat::hconcat(b1, b2), mcols);
    return subquotient_type(int(amb.size()), IntMat::hconcat(z, t), t);
}

}  // namespace oracle
