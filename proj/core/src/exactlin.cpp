#include "sseq/exactlin.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sseq {

Int SmithDecomposition::diag(int i) const
{
    if (i < D.rows() && i < D.cols())
        return D.at(i, i);
    return 0;
}

void SmithDecomposition::verify(const IntMat& A) const
{
    if (!(U * A * V == D))
        throw std::logic_error("SmithDecomposition: U*A*V != D");
    if (has_uinv && !(U * Uinv == IntMat::identity(U.rows())))
        throw std::logic_error("SmithDecomposition: U not unimodular");
    if (has_vinv && !(V * Vinv == IntMat::identity(V.rows())))
        throw std::logic_error("SmithDecomposition: V not unimodular");
    int n = std::min(D.rows(), D.cols());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < D.cols(); ++j)
            if (i != j && D.at(i, j) != 0)
                throw std::logic_error("SmithDecomposition: D not diagonal");
        if (D.at(i, i) < 0)
            throw std::logic_error("SmithDecomposition: negative diagonal entry");
        if (i + 1 < n && D.at(i, i) != 0 && D.at(i + 1, i + 1) != 0
            && !divides(D.at(i, i), D.at(i + 1, i + 1)))
            throw std::logic_error("SmithDecomposition: divisibility chain violated");
        if (D.at(i, i) == 0 && i + 1 < n && D.at(i + 1, i + 1) != 0)
            throw std::logic_error("SmithDecomposition: zero before nonzero on diagonal");
    }
}

namespace {

/* Min |value| over the trailing submatrix; ties by row-major order. */
bool find_pivot(const IntMat& D, int s, int& pr, int& pc)
{
    bool found = false;
    Int best;
    for (int i = s; i < D.rows(); ++i)
        for (int j = s; j < D.cols(); ++j) {
            const Int& x = D.at(i, j);
            if (x == 0)
                continue;
            Int a = abs(x);
            if (!found || a < best) {
                found = true;
                best = a;
                pr = i;
                pc = j;
                if (best == 1)
                    return true;
            }
        }
    return found;
}

bool row_col_clean(const IntMat& D, int s)
{
    for (int i = s + 1; i < D.rows(); ++i)
        if (D.at(i, s) != 0)
            return false;
    for (int j = s + 1; j < D.cols(); ++j)
        if (D.at(s, j) != 0)
            return false;
    return true;
}

/* Spot check U*A*V == D on probe vectors (cheap at any size). */
void probe_verify(const SmithDecomposition& f, const IntMat& A)
{
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 2; ++t) {
        IntVec x(A.cols());
        for (auto& e : x)
            e = d(rng);
        IntVec lhs = f.U.apply(A.apply(f.V.apply(x)));
        IntVec rhs = f.D.apply(x);
        if (lhs != rhs)
            throw std::logic_error("smith: probe verification failed");
    }
}

}  // namespace

SmithDecomposition smith(const IntMat& A, const SmithOptions& opt)
{
    const int m = A.rows(), n = A.cols();
    SmithDecomposition f;
    f.D = A;
    f.U = IntMat::identity(m);
    f.V = IntMat::identity(n);
    f.has_uinv = opt.uinv;
    f.has_vinv = opt.vinv;
    if (opt.uinv)
        f.Uinv = IntMat::identity(m);
    if (opt.vinv)
        f.Vinv = IntMat::identity(n);

    auto row_add = [&](int dst, int src, const Int& k) {
        f.D.add_row_multiple(dst, src, k);
        f.U.add_row_multiple(dst, src, k);
        if (opt.uinv)
            f.Uinv.add_col_multiple(src, dst, -k);
    };
    auto col_add = [&](int dst, int src, const Int& k) {
        f.D.add_col_multiple(dst, src, k);
        f.V.add_col_multiple(dst, src, k);
        if (opt.vinv)
            f.Vinv.add_row_multiple(src, dst, -k);
    };
    auto row_swap = [&](int i, int j) {
        f.D.swap_rows(i, j);
        f.U.swap_rows(i, j);
        if (opt.uinv)
            f.Uinv.swap_cols(i, j);
    };
    auto col_swap = [&](int i, int j) {
        f.D.swap_cols(i, j);
        f.V.swap_cols(i, j);
        if (opt.vinv)
            f.Vinv.swap_rows(i, j);
    };
    auto row_negate = [&](int i) {
        f.D.negate_row(i);
        f.U.negate_row(i);
        if (opt.uinv)
            f.Uinv.negate_col(i);
    };

    const int steps = std::min(m, n);
    for (int s = 0; s < steps; ++s) {
        int pr, pc;
        if (!find_pivot(f.D, s, pr, pc))
            break;  // trailing submatrix is zero
        row_swap(s, pr);
        col_swap(s, pc);

        while (true) {
            while (!row_col_clean(f.D, s)) {
                for (int i = s + 1; i < m; ++i)
                    if (f.D.at(i, s) != 0)
                        row_add(i, s, -Int(f.D.at(i, s) / f.D.at(s, s)));
                for (int j = s + 1; j < n; ++j)
                    if (f.D.at(s, j) != 0)
                        col_add(j, s, -Int(f.D.at(s, j) / f.D.at(s, s)));
                if (row_col_clean(f.D, s))
                    break;
                if (!find_pivot(f.D, s, pr, pc))
                    break;
                row_swap(s, pr);
                col_swap(s, pc);
            }
            /* force the lone pivot to divide the remaining submatrix */
            int br = -1, bc = -1;
            for (int i = s + 1; i < m && br < 0; ++i)
                for (int j = s + 1; j < n; ++j)
                    if (!divides(f.D.at(s, s), f.D.at(i, j))) {
                        br = i;
                        bc = j;
                        break;
                    }
            if (br < 0)
                break;
            row_add(s, br, 1);
        }
        if (f.D.at(s, s) < 0)
            row_negate(s);
    }

    f.rank = 0;
    for (int i = 0; i < steps; ++i)
        if (f.D.at(i, i) != 0)
            ++f.rank;

    probe_verify(f, A);
    if (std::max(m, n) <= 96)
        f.verify(A);
    return f;
}

SmithDecomposition smith(const IntMat& A)
{
    return smith(A, SmithOptions{});
}

Int FGAbelianGroup::coord_order(int i) const
{
    if (i < int(torsion.size()))
        return torsion[i];
    return 0;
}

std::string FGAbelianGroup::str() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const Int& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    if (rank == 1)
        os << (first ? "" : " + ") << "Z";
    else if (rank > 1)
        os << (first ? "" : " + ") << "Z^" << rank;
    return os.str();
}

FGAbelianGroup cokernel(const IntMat& A)
{
    SmithDecomposition f = smith(A, SmithOptions{false, false});
    FGAbelianGroup g;
    g.rank = A.rows() - f.rank;
    for (int i = 0; i < f.rank; ++i)
        if (f.D.at(i, i) >= 2)
            g.torsion.push_back(f.D.at(i, i));
    return g;
}

IntMat column_echelon_basis(const IntMat& a)
{
    int m = a.rows();
    std::vector<IntVec> cols;
    for (int c = 0; c < a.cols(); ++c) {
        IntVec v = a.column(c);
        if (std::any_of(v.begin(), v.end(), [](const Int& x) { return x != 0; }))
            cols.push_back(std::move(v));
    }
    std::vector<IntVec> fixed;
    for (int r = 0; r < m && !cols.empty(); ++r) {
        while (true) {
            std::vector<int> live;
            for (int i = 0; i < int(cols.size()); ++i)
                if (cols[i][r] != 0)
                    live.push_back(i);
            if (live.size() <= 1) {
                if (live.size() == 1) {
                    int i = live[0];
                    if (cols[i][r] < 0)
                        for (auto& x : cols[i])
                            x = -x;
                    fixed.push_back(std::move(cols[i]));
                    cols.erase(cols.begin() + i);
                }
                break;
            }
            int best = live[0];
            for (int i : live)
                if (abs(cols[i][r]) < abs(cols[best][r]))
                    best = i;
            for (int i : live) {
                if (i == best)
                    continue;
                Int q = cols[i][r] / cols[best][r];
                if (q != 0)
                    for (int t = r; t < m; ++t)
                        cols[i][t] -= q * cols[best][t];
            }
            cols.erase(std::remove_if(cols.begin(), cols.end(),
                                      [r, m](const IntVec& v) {
                                          for (int t = r; t < m; ++t)
                                              if (v[t] != 0)
                                                  return false;
                                          return true;
                                      }),
                       cols.end());
        }
    }
    return IntMat::from_columns(m, fixed);
}

std::optional<IntVec> echelon_solve(const IntMat& basis, const IntVec& b)
{
    int m = basis.rows();
    IntVec rem = b;
    IntVec x(basis.cols());
    for (int c = 0; c < basis.cols(); ++c) {
        int pr = -1;
        for (int r = 0; r < m; ++r)
            if (basis.at(r, c) != 0) {
                pr = r;
                break;
            }
        if (pr < 0)
            continue;
        if (!divides(basis.at(pr, c), rem[pr]))
            return std::nullopt;
        x[c] = int_divexact(rem[pr], basis.at(pr, c));
        if (x[c] != 0)
            for (int r = pr; r < m; ++r)
                rem[r] -= x[c] * basis.at(r, c);
    }
    for (const Int& v : rem)
        if (v != 0)
            return std::nullopt;
    return x;
}

IntMat integer_kernel(const IntMat& a)
{
    const int m = a.rows(), n = a.cols();
    IntMat w = a;
    IntMat v = IntMat::identity(n);
    int fixed = 0;
    for (int r = 0; r < m && fixed < n; ++r) {
        while (true) {
            std::vector<int> live;
            for (int c = fixed; c < n; ++c)
                if (w.at(r, c) != 0)
                    live.push_back(c);
            if (live.size() <= 1) {
                if (live.size() == 1) {
                    w.swap_cols(fixed, live[0]);
                    v.swap_cols(fixed, live[0]);
                    ++fixed;
                }
                break;
            }
            int best = live[0];
            for (int c : live)
                if (abs(w.at(r, c)) < abs(w.at(r, best)))
                    best = c;
            for (int c : live) {
                if (c == best)
                    continue;
                Int q = w.at(r, c) / w.at(r, best);
                if (q != 0) {
                    w.add_col_multiple(c, best, -q);
                    v.add_col_multiple(c, best, -q);
                }
            }
        }
    }
    std::vector<int> kidx;
    for (int c = fixed; c < n; ++c)
        kidx.push_back(c);
    IntMat k = v.columns(kidx);
    /* exactness of the reduction: A * kernel == 0 */
    for (int c = 0; c < k.cols(); ++c) {
        IntVec img = a.apply(k.column(c));
        for (const Int& x : img)
            if (x != 0)
                throw std::logic_error("integer_kernel: verification failed");
    }
    return k;
}

IntMat kernel_mod(const IntMat& M, const Int& m)
{
    if (m == 0)
        return integer_kernel(M);
    IntMat aug = IntMat::hconcat(M, IntMat::identity(M.rows()).scaled(m));
    IntMat k = integer_kernel(aug);
    IntMat out(M.cols(), k.cols());
    for (int r = 0; r < M.cols(); ++r)
        for (int c = 0; c < k.cols(); ++c)
            out.at(r, c) = k.at(r, c);
    return out;
}

int rank_mod_p(const IntMat& M, const Int& p)
{
    IntMat w = M.reduced_mod(p);
    int m = w.rows(), n = w.cols();
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (w.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        w.swap_rows(r, piv);
        Int inv;
        mpz_invert(inv.get_mpz_t(), w.at(r, c).get_mpz_t(), p.get_mpz_t());
        for (int i = r + 1; i < m; ++i) {
            if (w.at(i, c) == 0)
                continue;
            Int f = int_mod(w.at(i, c) * inv, p);
            for (int j = c; j < n; ++j)
                if (w.at(r, j) != 0)
                    w.at(i, j) = int_mod(w.at(i, j) - f * w.at(r, j), p);
        }
        ++r;
    }
    return r;
}

LatticeSolver::LatticeSolver(IntMat A) : a_(std::move(A)), snf_(smith(a_, SmithOptions{false, false})) {}

std::optional<IntVec> LatticeSolver::solve(const IntVec& b) const
{
    if (int(b.size()) != a_.rows())
        throw std::invalid_argument("LatticeSolver::solve: dimension mismatch");
    IntVec c = snf_.U.apply(b);
    IntVec y(a_.cols());
    int n = std::min(a_.rows(), a_.cols());
    for (int i = 0; i < int(c.size()); ++i) {
        Int d = i < n ? snf_.D.at(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0)
                return std::nullopt;
        } else {
            if (!divides(d, c[i]))
                return std::nullopt;
            if (i < a_.cols())
                y[i] = int_divexact(c[i], d);
        }
    }
    return snf_.V.apply(y);
}

bool LatticeSolver::contains(const IntVec& b) const
{
    return solve(b).has_value();
}

bool LatticeSolver::contains_all(const IntMat& columns) const
{
    for (int c = 0; c < columns.cols(); ++c)
        if (!contains(columns.column(c)))
            return false;
    return true;
}

IntMat LatticeSolver::kernel_basis() const
{
    std::vector<int> idx;
    for (int i = snf_.rank; i < a_.cols(); ++i)
        idx.push_back(i);
    return snf_.V.columns(idx);
}

Subquotient::Subquotient(int ambient, IntMat gens_S, IntMat gens_T)
    : ambient_(ambient), s_(std::move(gens_S)), t_(std::move(gens_T))
{
    if (s_.rows() != ambient_ || (t_.cols() > 0 && t_.rows() != ambient_))
        throw std::invalid_argument("Subquotient: generator rows must equal ambient rank");

    basis_ = column_echelon_basis(s_);
    int b = basis_.cols();

    /* relations: T written in the echelon basis */
    IntMat p(b, t_.cols());
    for (int c = 0; c < t_.cols(); ++c) {
        auto x = echelon_solve(basis_, t_.column(c));
        if (!x)
            throw SubgroupViolation("subquotient: generator of T outside span(S)");
        p.set_column(c, *x);
    }

    SmithDecomposition rf = smith(p, SmithOptions{true, false});
    rel_u_ = rf.U;
    rel_uinv_ = rf.Uinv;
    rel_diag_.resize(b);
    for (int i = 0; i < b; ++i)
        rel_diag_[i] = rf.diag(i);

    for (int i = 0; i < b; ++i)
        if (rel_diag_[i] >= 2) {
            slots_.push_back(i);
            group_.torsion.push_back(rel_diag_[i]);
        }
    for (int i = 0; i < b; ++i)
        if (rel_diag_[i] == 0) {
            slots_.push_back(i);
            ++group_.rank;
        }
}

bool Subquotient::spans(const IntVec& v) const
{
    return echelon_solve(basis_, v).has_value();
}

IntVec Subquotient::reduce(IntVec coords) const
{
    for (size_t i = 0; i < group_.torsion.size(); ++i)
        coords[i] = int_mod(coords[i], group_.torsion[i]);
    return coords;
}

IntVec Subquotient::project(const IntVec& v) const
{
    auto x = echelon_solve(basis_, v);
    if (!x)
        throw SubgroupViolation("Subquotient::project: vector outside span(S)");
    IntVec y = rel_u_.apply(*x);
    IntVec coords(slots_.size());
    for (size_t i = 0; i < slots_.size(); ++i)
        coords[i] = y[slots_[i]];
    return reduce(std::move(coords));
}

bool Subquotient::is_zero_class(const IntVec& v) const
{
    IntVec c = project(v);
    for (const Int& x : c)
        if (x != 0)
            return false;
    return true;
}

IntVec Subquotient::lift(const IntVec& coords) const
{
    if (int(coords.size()) != group_.coords())
        throw std::invalid_argument("Subquotient::lift: bad coordinate length");
    IntVec y(basis_.cols());
    for (size_t i = 0; i < slots_.size(); ++i)
        y[slots_[i]] = coords[i];
    return basis_.apply(rel_uinv_.apply(y));
}

IntMat Subquotient::generator_reps() const
{
    IntMat reps(ambient_, group_.coords());
    for (int i = 0; i < group_.coords(); ++i) {
        IntVec e(group_.coords());
        e[i] = 1;
        reps.set_column(i, lift(e));
    }
    return reps;
}

GroupHom::GroupHom(FGAbelianGroup source, FGAbelianGroup target, IntMat m)
    : src(std::move(source)), dst(std::move(target)), matrix(std::move(m))
{
    if (matrix.rows() != dst.coords() || matrix.cols() != src.coords())
        throw std::invalid_argument("GroupHom: matrix shape mismatch");
    for (int c = 0; c < matrix.cols(); ++c) {
        Int ord = src.coord_order(c);
        if (ord == 0)
            continue;
        for (int r = 0; r < matrix.rows(); ++r) {
            Int v = ord * matrix.at(r, c);
            Int dord = dst.coord_order(r);
            if (dord == 0 ? v != 0 : int_mod(v, dord) != 0)
                throw NotWellDefined("GroupHom: matrix does not respect torsion relations");
        }
    }
    for (int r = 0; r < int(dst.torsion.size()); ++r)
        for (int c = 0; c < matrix.cols(); ++c)
            matrix.at(r, c) = int_mod(matrix.at(r, c), dst.torsion[r]);
}

IntVec GroupHom::apply(const IntVec& coords) const
{
    IntVec out = matrix.apply(coords);
    for (size_t i = 0; i < dst.torsion.size(); ++i)
        out[i] = int_mod(out[i], dst.torsion[i]);
    return out;
}

GroupHom GroupHom::zero(const FGAbelianGroup& s, const FGAbelianGroup& d)
{
    return GroupHom(s, d, IntMat(d.coords(), s.coords()));
}

GroupHom GroupHom::identity(const FGAbelianGroup& g)
{
    return GroupHom(g, g, IntMat::identity(g.coords()));
}

GroupHom induced_map(const IntMat& f, const Subquotient& src, const Subquotient& dst)
{
    if (f.rows() != dst.ambient() || f.cols() != src.ambient())
        throw std::invalid_argument("induced_map: ambient dimension mismatch");
    IntMat dst_t_basis = column_echelon_basis(
        dst.gens_T().cols() > 0 ? dst.gens_T() : IntMat(dst.ambient(), 0));
    for (int c = 0; c < src.gens_S().cols(); ++c)
        if (!dst.spans(f.apply(src.gens_S().column(c))))
            throw NotWellDefined("induced_map: image of S not contained in target S");
    for (int c = 0; c < src.gens_T().cols(); ++c)
        if (!echelon_solve(dst_t_basis, f.apply(src.gens_T().column(c))))
            throw NotWellDefined("induced_map: image of T not contained in target T");

    IntMat reps = src.generator_reps();
    IntMat m(dst.group().coords(), src.group().coords());
    for (int c = 0; c < reps.cols(); ++c)
        m.set_column(c, dst.project(f.apply(reps.column(c))));
    return GroupHom(src.group(), dst.group(), std::move(m));
}

GroupHom compose(const GroupHom& g, const GroupHom& f)
{
    if (!(f.dst == g.src))
        throw std::invalid_argument("compose: middle groups differ");
    return GroupHom(f.src, g.dst, g.matrix * f.matrix);
}

GroupHom hom_from_columns(const FGAbelianGroup& src, const FGAbelianGroup& dst,
                          const std::vector<IntVec>& images)
{
    IntMat m(dst.coords(), src.coords());
    if (int(images.size()) != src.coords())
        throw std::invalid_argument("hom_from_columns: one image per source generator");
    for (int c = 0; c < src.coords(); ++c)
        m.set_column(c, images[c]);
    return GroupHom(src, dst, std::move(m));
}

IntMat relation_matrix(const FGAbelianGroup& g)
{
    IntMat r(g.coords(), int(g.torsion.size()));
    for (size_t i = 0; i < g.torsion.size(); ++i)
        r.at(int(i), int(i)) = g.torsion[i];
    return r;
}

Subquotient hom_kernel(const GroupHom& f)
{
    IntMat aug = IntMat::hconcat(f.matrix, relation_matrix(f.dst));
    IntMat k = integer_kernel(aug);
    IntMat klat(f.src.coords(), k.cols());
    for (int r = 0; r < f.src.coords(); ++r)
        for (int c = 0; c < k.cols(); ++c)
            klat.at(r, c) = k.at(r, c);
    IntMat rel = relation_matrix(f.src);
    return Subquotient(f.src.coords(), IntMat::hconcat(klat, rel), rel);
}

Subquotient hom_image(const GroupHom& f)
{
    IntMat rel = relation_matrix(f.dst);
    return Subquotient(f.dst.coords(), IntMat::hconcat(f.matrix, rel), rel);
}

FGAbelianGroup hom_cokernel(const GroupHom& f)
{
    return cokernel(IntMat::hconcat(f.matrix, relation_matrix(f.dst)));
}

bool is_isomorphism(const GroupHom& f)
{
    return hom_cokernel(f).is_trivial() && hom_kernel(f).group().is_trivial();
}

bool same_span(const IntMat& a, const IntMat& b)
{
    if (a.rows() != b.rows())
        return false;
    IntMat ba = column_echelon_basis(a);
    IntMat bb = column_echelon_basis(b);
    for (int c = 0; c < b.cols(); ++c)
        if (!echelon_solve(ba, b.column(c)))
            return false;
    for (int c = 0; c < a.cols(); ++c)
        if (!echelon_solve(bb, a.column(c)))
            return false;
    return true;
}

}  // namespace sseq
