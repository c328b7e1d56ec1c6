#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sseq/errors.hpp"
#include "sseq/intmat.hpp"

namespace sseq {

/* U * A * V = D with U, V unimodular and D diagonal, nonzero diagonal
 * entries positive and forming a divisibility chain d1 | d2 | ...
 * Inverses witness unimodularity by exact multiplication; tracking them
 * can be switched off on hot paths that never use them. */
struct SmithOptions {
    bool uinv = true;
    bool vinv = true;
};

struct SmithDecomposition {
    IntMat U, Uinv, D, V, Vinv;
    bool has_uinv = true, has_vinv = true;
    int rank = 0;

    Int diag(int i) const;

    /* Checks U*A*V == D, unimodularity via the tracked inverses, positivity
     * and the divisibility chain. Throws std::logic_error on failure. */
    void verify(const IntMat& A) const;
};

/* Deterministic: pivot is the entry of minimal absolute value in the
 * remaining submatrix, ties broken by row-major position. */
SmithDecomposition smith(const IntMat& A);
SmithDecomposition smith(const IntMat& A, const SmithOptions& opt);

struct FGAbelianGroup {
    long rank = 0;
    IntVec torsion;  // each >= 2, t1 | t2 | ...

    bool operator==(const FGAbelianGroup& o) const = default;
    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    int coords() const { return int(torsion.size()) + int(rank); }
    /* Order of the coordinate generator: torsion entry, or 0 for free. */
    Int coord_order(int i) const;
    std::string str() const;
};

/* Z^rows / (column span of A), in normal form. */
FGAbelianGroup cokernel(const IntMat& A);

/* Column echelon basis of the column span: independent columns whose first
 * nonzero rows strictly increase. Deterministic. */
IntMat column_echelon_basis(const IntMat& a);

/* Solve (echelon basis) * x = b by back-substitution. */
std::optional<IntVec> echelon_solve(const IntMat& echelon_basis, const IntVec& b);

/* Kernel of A over Z: column reduction with a tracked transform; columns
 * form a basis of the (saturated) kernel lattice. */
IntMat integer_kernel(const IntMat& a);

/* Solutions x of M x = 0 (mod m); m = 0 means over Z. Columns generate
 * the solution lattice. */
IntMat kernel_mod(const IntMat& M, const Int& m);

/* Rank over the field Z/p, p prime. */
int rank_mod_p(const IntMat& M, const Int& p);

/* Solve A x = b over Z, repeatedly, against one factorization. */
class LatticeSolver {
public:
    explicit LatticeSolver(IntMat A);

    const IntMat& matrix() const { return a_; }
    std::optional<IntVec> solve(const IntVec& b) const;
    bool contains(const IntVec& b) const;
    bool contains_all(const IntMat& columns) const;
    IntMat kernel_basis() const;  // saturated; columns form a basis
    int rank() const { return snf_.rank; }

private:
    IntMat a_;
    SmithDecomposition snf_;
};

/* The group span(S)/span(T) inside Z^ambient, with coordinates.
 *
 * Coordinates have length group.coords(): torsion coordinates first (in
 * divisibility order, reduced into [0, t)), then free coordinates. */
class Subquotient {
public:
    Subquotient() = default;
    /* Throws SubgroupViolation unless span(T) is contained in span(S). */
    Subquotient(int ambient, IntMat gens_S, IntMat gens_T);

    int ambient() const { return ambient_; }
    const FGAbelianGroup& group() const { return group_; }
    const IntMat& gens_S() const { return s_; }
    const IntMat& gens_T() const { return t_; }

    bool spans(const IntVec& v) const;          // v in span(S)?
    IntVec project(const IntVec& v) const;      // class of v; SubgroupViolation if outside
    bool is_zero_class(const IntVec& v) const;  // v in span(T)?
    IntVec lift(const IntVec& coords) const;    // representative in Z^ambient
    IntVec reduce(IntVec coords) const;         // canonicalize coordinates
    IntMat generator_reps() const;              // ambient x coords, lifts of unit coords

private:
    int ambient_ = 0;
    IntMat s_, t_;
    FGAbelianGroup group_;
    IntMat basis_;             // column echelon basis of span(S)
    IntMat rel_u_, rel_uinv_;  // SNF transform of the relation matrix
    IntVec rel_diag_;          // length = basis_.cols(), 0 beyond rank
    std::vector<int> slots_;   // coordinate -> row index in relation SNF
};

inline Subquotient subquotient(int ambient, const IntMat& gens_S, const IntMat& gens_T)
{
    return Subquotient(ambient, gens_S, gens_T);
}

/* Homomorphism between groups in normal form, as a matrix on coordinates.
 * Construction checks the matrix respects the torsion relations. */
struct GroupHom {
    FGAbelianGroup src, dst;
    IntMat matrix;  // dst.coords() x src.coords()

    GroupHom() = default;
    GroupHom(FGAbelianGroup source, FGAbelianGroup target, IntMat m);

    IntVec apply(const IntVec& coords) const;
    bool is_zero() const { return matrix.is_zero(); }
    bool operator==(const GroupHom& o) const = default;

    static GroupHom zero(const FGAbelianGroup& s, const FGAbelianGroup& d);
    static GroupHom identity(const FGAbelianGroup& g);
};

/* The map on subquotients induced by the ambient-level matrix f
 * (dst.ambient x src.ambient). Throws NotWellDefined unless f carries
 * span(S) into span(S') and span(T) into span(T'). */
GroupHom induced_map(const IntMat& f, const Subquotient& src, const Subquotient& dst);

GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f
GroupHom hom_from_columns(const FGAbelianGroup& src, const FGAbelianGroup& dst,
                          const std::vector<IntVec>& images);

/* Relation matrix of the normal form: coords x torsion.size() diagonal. */
IntMat relation_matrix(const FGAbelianGroup& g);

/* Kernel and image of f as subquotients of the coordinate spaces. */
Subquotient hom_kernel(const GroupHom& f);
Subquotient hom_image(const GroupHom& f);
FGAbelianGroup hom_cokernel(const GroupHom& f);
bool is_isomorphism(const GroupHom& f);

/* Do two generating sets span the same subgroup of Z^ambient? */
bool same_span(const IntMat& a, const IntMat& b);

}  // namespace sseq
