#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace oracle {

int rank(const IntMat& a)
{
    IntMat w = a;
    int m = w.rows(), n = w.cols();
    int r = 0;
    Int prev = 1;
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
        for (int i = r + 1; i < m; ++i) {
            for (int j = c + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(r, c) - w.at(i, c) * w.at(r, j);
                w.at(i, j) = sseq::int_divexact(t, prev);
            }
            w.at(i, c) = 0;
        }
        prev = w.at(r, c);
        ++r;
    }
    return r;
}

namespace {

Int minor_det(const IntMat& a, const std::vector<int>& rows, const std::vector<int>& cols)
{
    return a.submatrix(rows, cols).determinant();
}

void subsets(int n, int k, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
}

}  // namespace

std::vector<Int> invariant_factors_minors(const IntMat& a)
{
    int r = rank(a);
    std::vector<Int> dk(r + 1);
    dk[0] = 1;
    for (int k = 1; k <= r; ++k) {
        std::vector<std::vector<int>> rsets, csets;
        subsets(a.rows(), k, rsets);
        subsets(a.cols(), k, csets);
        Int g = 0;
        for (const auto& rs : rsets)
            for (const auto& cs : csets) {
                g = sseq::int_gcd(g, minor_det(a, rs, cs));
                if (g == 1)
                    break;
            }
        dk[k] = g;
    }
    std::vector<Int> inv(r);
    for (int k = 1; k <= r; ++k)
        inv[k - 1] = sseq::int_divexact(dk[k], dk[k - 1]);
    return inv;
}

IntMat column_basis(const IntMat& a)
{
    int m = a.rows();
    std::vector<IntVec> cols;
    for (int c = 0; c < a.cols(); ++c) {
        IntVec v = a.column(c);
        if (std::any_of(v.begin(), v.end(), [](const Int& x) { return x != 0; }))
            cols.push_back(v);
    }
    std::vector<IntVec> fixed;
    for (int r = 0; r < m; ++r) {
        /* Euclid on the entries of row r across the live columns. */
        while (true) {
            std::vector<int> live;
            for (int i = 0; i < int(cols.size()); ++i)
                if (cols[i][r] != 0)
                    live.push_back(i);
            if (live.size() <= 1)
                break;
            int best = live[0];
            for (int i : live)
                if (abs(cols[i][r]) < abs(cols[best][r]))
                    best = i;
            for (int i : live) {
                if (i == best)
                    continue;
                Int q = cols[i][r] / cols[best][r];
                for (int t = 0; t < m; ++t)
                    cols[i][t] -= q * cols[best][t];
            }
        }
        int live = -1;
        for (int i = 0; i < int(cols.size()); ++i)
            if (cols[i][r] != 0) {
                live = i;
                break;
            }
        if (live >= 0) {
            if (cols[live][r] < 0)
                for (auto& x : cols[live])
                    x = -x;
            fixed.push_back(cols[live]);
            cols.erase(cols.begin() + live);
            /* columns that became zero drop out */
            cols.erase(std::remove_if(cols.begin(), cols.end(),
                                      [](const IntVec& v) {
                                          return std::all_of(v.begin(), v.end(),
                                                             [](const Int& x) { return x == 0; });
                                      }),
                       cols.end());
        }
    }
    return IntMat::from_columns(m, fixed);
}

std::optional<IntVec> lattice_solve(const IntMat& basis, const IntVec& b)
{
    int m = basis.rows();
    IntVec rem = b;
    IntVec x(basis.cols());
    for (int c = 0; c < basis.cols(); ++c) {
        int pivot_row = -1;
        for (int r = 0; r < m; ++r)
            if (basis.at(r, c) != 0) {
                pivot_row = r;
                break;
            }
        if (pivot_row < 0)
            continue;
        if (!sseq::divides(basis.at(pivot_row, c), rem[pivot_row]))
            return std::nullopt;
        x[c] = sseq::int_divexact(rem[pivot_row], basis.at(pivot_row, c));
        for (int r = 0; r < m; ++r)
            rem[r] -= x[c] * basis.at(r, c);
    }
    for (const Int& v : rem)
        if (v != 0)
            return std::nullopt;
    return x;
}

bool lattice_contains(const IntMat& basis, const IntVec& b)
{
    return lattice_solve(basis, b).has_value();
}

IntMat kernel(const IntMat& m_mat, const Int& modulus)
{
    IntMat work = m_mat;
    if (modulus != 0)
        work = IntMat::hconcat(m_mat, IntMat::identity(m_mat.rows()).scaled(modulus));
    int m = work.rows(), n = work.cols();
    IntMat v = IntMat::identity(n);
    int fixed = 0;
    for (int r = 0; r < m; ++r) {
        while (true) {
            std::vector<int> live;
            for (int c = fixed; c < n; ++c)
                if (work.at(r, c) != 0)
                    live.push_back(c);
            if (live.size() <= 1) {
                if (live.size() == 1) {
                    work.swap_cols(fixed, live[0]);
                    v.swap_cols(fixed, live[0]);
                    ++fixed;
                }
                break;
            }
            int best = live[0];
            for (int c : live)
                if (abs(work.at(r, c)) < abs(work.at(r, best)))
                    best = c;
            for (int c : live) {
                if (c == best)
                    continue;
                Int q = work.at(r, c) / work.at(r, best);
                work.add_col_multiple(c, best, -q);
                v.add_col_multiple(c, best, -q);
            }
        }
    }
    std::vector<int> kidx;
    for (int c = fixed; c < n; ++c)
        kidx.push_back(c);
    IntMat kfull = v.columns(kidx);
    /* keep only original coordinates */
    IntMat out(m_mat.cols(), kfull.cols());
    for (int r = 0; r < m_mat.cols(); ++r)
        for (int c = 0; c < kfull.cols(); ++c)
            out.at(r, c) = kfull.at(r, c);
    return out;
}

namespace {

std::vector<Int> prime_factors(Int n)
{
    std::vector<Int> ps;
    if (n < 0)
        n = -n;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    if (n > 1)
        ps.push_back(n);
    return ps;
}

/* Kernel vector of B mod p, or empty if B has full column rank mod p. */
IntVec kernel_vector_mod_p(const IntMat& b, const Int& p)
{
    int m = b.rows(), n = b.cols();
    IntMat w = b.reduced_mod(p);
    std::vector<int> pivot_col_of_row(m, -1);
    std::vector<int> pivot_row_of_col(n, -1);
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
        for (int j = 0; j < n; ++j)
            w.at(r, j) = sseq::int_mod(w.at(r, j) * inv, p);
        for (int i = 0; i < m; ++i) {
            if (i == r || w.at(i, c) == 0)
                continue;
            Int f = w.at(i, c);
            for (int j = 0; j < n; ++j)
                w.at(i, j) = sseq::int_mod(w.at(i, j) - f * w.at(r, j), p);
        }
        pivot_row_of_col[c] = r;
        pivot_col_of_row[r] = c;
        ++r;
    }
    int free_col = -1;
    for (int c = 0; c < n; ++c)
        if (pivot_row_of_col[c] < 0) {
            free_col = c;
            break;
        }
    if (free_col < 0)
        return {};
    IntVec y(n);
    y[free_col] = 1;
    for (int rr = 0; rr < m; ++rr) {
        int pc = pivot_col_of_row[rr];
        if (pc >= 0)
            y[pc] = sseq::int_mod(-w.at(rr, free_col), p);
    }
    return y;
}

/* Saturate the lattice spanned by the columns of B inside Z^m. */
IntMat saturate(IntMat b)
{
    while (true) {
        b = column_basis(b);
        if (b.cols() == 0)
            return b;
        /* any nonzero maximal minor bounds the saturation index */
        std::vector<int> pivot_rows;
        for (int c = 0; c < b.cols(); ++c)
            for (int r = 0; r < b.rows(); ++r)
                if (b.at(r, c) != 0) {
                    pivot_rows.push_back(r);
                    break;
                }
        std::vector<int> all_cols(b.cols());
        std::iota(all_cols.begin(), all_cols.end(), 0);
        Int minor = b.submatrix(pivot_rows, all_cols).determinant();
        bool changed = false;
        for (const Int& p : prime_factors(minor)) {
            IntVec y = kernel_vector_mod_p(b, p);
            if (y.empty())
                continue;
            IntVec v = b.apply(y);
            for (auto& e : v)
                e = sseq::int_divexact(e, p);
            b = IntMat::hconcat(b, IntMat::from_columns(b.rows(), {v}));
            changed = true;
            break;
        }
        if (!changed)
            return b;
    }
}

/* x canonicalized modulo the lattice of a lower-triangular full-rank E.
 * Column c only touches rows >= c, so fixing coordinates in ascending
 * order leaves earlier ones canonical. */
IntVec triangular_reduce(const IntMat& e, IntVec x)
{
    for (int c = 0; c < e.cols(); ++c) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), x[c].get_mpz_t(), e.at(c, c).get_mpz_t());
        if (q != 0)
            for (int r = c; r < e.rows(); ++r)
                x[r] -= q * e.at(r, c);
    }
    return x;
}

/* Isomorphism type of the finite group Z^t / columns(E), E full rank t x t
 * lower triangular: literal coset enumeration plus order statistics. */
std::vector<Int> finite_quotient_type(const IntMat& e)
{
    int t = e.cols();
    Int order = 1;
    for (int i = 0; i < t; ++i)
        order *= e.at(i, i);
    if (order > 4096)
        throw std::runtime_error("oracle: finite quotient too large to enumerate");
    long n = order.get_si();
    if (n == 1)
        return {};

    std::vector<IntVec> elems;
    IntVec cur(t);
    std::function<void(int)> gen = [&](int pos) {
        if (pos == t) {
            elems.push_back(cur);
            return;
        }
        for (Int v = 0; v < e.at(pos, pos); ++v) {
            cur[pos] = v;
            gen(pos + 1);
        }
    };
    gen(0);
    /* reduce so representatives are canonical */
    for (auto& x : elems)
        x = triangular_reduce(e, x);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (Int(long(elems.size())) != order)
        throw std::runtime_error("oracle: coset enumeration miscounted");

    /* #elements killed by p^j determines the p-part partition */
    std::vector<Int> factors;
    for (const Int& p : prime_factors(order)) {
        std::vector<long> lambda;  // lambda[j] = log_p #{x : p^(j+1) x = 0}
        Int pk = p;
        while (true) {
            long cnt = 0;
            for (const auto& x : elems) {
                IntVec px(t);
                for (int i = 0; i < t; ++i)
                    px[i] = pk * x[i];
                px = triangular_reduce(e, px);
                if (std::all_of(px.begin(), px.end(), [](const Int& v) { return v == 0; }))
                    ++cnt;
            }
            long lg = 0;
            Int c = cnt;
            while (c > 1) {
                c = sseq::int_divexact(c, p);
                ++lg;
            }
            /* the p-part is exhausted once the count stops growing */
            if (!lambda.empty() && lg == lambda.back())
                break;
            lambda.push_back(lg);
            pk *= p;
        }
        /* multiplicities: #{i : e_i >= j} = lambda[j-1] - lambda[j-2] */
        std::vector<long> exps;
        long prev = 0;
        for (size_t j = 0; j < lambda.size(); ++j) {
            long atleast = lambda[j] - prev;
            prev = lambda[j];
            exps.push_back(atleast);
        }
        /* exps[j] = number of cyclic p-factors with exponent > j */
        std::vector<Int> pparts;
        for (size_t j = 0; j < exps.size(); ++j) {
            long next = j + 1 < exps.size() ? exps[j + 1] : 0;
            long with_exp = exps[j] - next;
            Int val = 1;
            for (size_t k = 0; k <= j; ++k)
                val *= p;
            for (long i = 0; i < with_exp; ++i)
                pparts.push_back(val);
        }
        std::sort(pparts.begin(), pparts.end());
        /* merge into invariant factors: combine largest with largest */
        if (factors.empty())
            factors = pparts;
        else {
            std::vector<Int> merged;
            auto a = factors.rbegin();
            auto b = pparts.rbegin();
            while (a != factors.rend() || b != pparts.rend()) {
                Int f = 1;
                if (a != factors.rend())
                    f *= *a++;
                if (b != pparts.rend())
                    f *= *b++;
                merged.push_back(f);
            }
            std::sort(merged.begin(), merged.end());
            factors = merged;
        }
    }
    return factors;
}

}  // namespace

FGAbelianGroup subquotient_type(int ambient, const IntMat& S, const IntMat& T)
{
    IntMat bs = column_basis(S);
    IntMat bt = column_basis(T);
    FGAbelianGroup g;
    g.rank = bs.cols() - bt.cols();

    if (bt.cols() == 0 || bs.cols() == 0) {
        /* free quotient unless S itself has torsion against T = 0: none */
        return g;
    }

    /* span(T) written in a basis of span(S) */
    IntMat expr(bs.cols(), bt.cols());
    for (int c = 0; c < bt.cols(); ++c) {
        auto x = lattice_solve(bs, bt.column(c));
        if (!x)
            throw std::runtime_error("oracle: T not inside span(S)");
        expr.set_column(c, *x);
    }

    /* torsion of Z^s / expr = sat(expr)/expr */
    IntMat sat = saturate(expr);
    IntMat e(sat.cols(), expr.cols());
    for (int c = 0; c < expr.cols(); ++c) {
        auto x = lattice_solve(sat, expr.column(c));
        if (!x)
            throw std::runtime_error("oracle: saturation failed");
        e.set_column(c, *x);
    }
    IntMat eb = column_basis(e);  // square full rank, lower triangular
    if (eb.cols() != e.cols())
        throw std::runtime_error("oracle: expected full rank after saturation");
    g.torsion = finite_quotient_type(eb);
    (void)ambient;
    return g;
}

CosetEnumeration enumerate_cosets(const IntMat& S, const IntMat& T, long box)
{
    int n = S.rows();
    IntMat bs = column_basis(S);
    IntMat bt = column_basis(T);
    CosetEnumeration out;
    IntVec cur(n);
    std::function<void(int)> walk = [&](int pos) {
        if (pos == n) {
            if (lattice_contains(bs, cur))
                out.points.push_back(cur);
            return;
        }
        for (long v = -box; v <= box; ++v) {
            cur[pos] = v;
            walk(pos + 1);
        }
    };
    walk(0);
    out.coset_of.assign(out.points.size(), -1);
    for (size_t i = 0; i < out.points.size(); ++i) {
        if (out.coset_of[i] >= 0)
            continue;
        out.coset_of[i] = out.coset_count++;
        for (size_t j = i + 1; j < out.points.size(); ++j) {
            if (out.coset_of[j] >= 0)
                continue;
            IntVec diff(n);
            for (int k = 0; k < n; ++k)
                diff[k] = out.points[j][k] - out.points[i][k];
            if (lattice_contains(bt, diff))
                out.coset_of[j] = out.coset_of[i];
        }
    }
    return out;
}

}  // namespace oracle
