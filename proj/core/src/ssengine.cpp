#include "sseq/ssengine.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

#include "sseq/errors.hpp"

namespace sseq {

namespace {

IntVec reduce_in(const FGAbelianGroup& g, IntVec coords)
{
    for (size_t i = 0; i < g.torsion.size(); ++i)
        coords[i] = int_mod(coords[i], g.torsion[i]);
    return coords;
}

IntVec add_scaled(const FGAbelianGroup& g, const IntVec& a, const IntVec& b, const Int& k)
{
    IntVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + k * b[i];
    return reduce_in(g, std::move(out));
}

bool all_zero(const IntVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

}  // namespace

std::string Bidegree::str() const
{
    std::ostringstream os;
    os << "(f=" << f << ", c=" << c << ")";
    return os.str();
}

FilteredCochainComplex::FilteredCochainComplex(std::vector<FilteredCell> cells,
                                               std::vector<ChainTerms> differential, Int modulus)
    : cells_(std::move(cells)), diff_(std::move(differential)), modulus_(std::move(modulus))
{
    init();
}

FilteredCochainComplex::FilteredCochainComplex(std::vector<FilteredCell> cells,
                                               std::vector<ChainTerms> differential, Int modulus,
                                               std::map<std::pair<int, int>, ChainTerms> product)
    : cells_(std::move(cells)),
      diff_(std::move(differential)),
      modulus_(std::move(modulus)),
      has_product_(true),
      product_(std::move(product))
{
    init();
}

void FilteredCochainComplex::init()
{
    if (diff_.size() != cells_.size())
        throw std::invalid_argument("FilteredCochainComplex: one differential row per cell");
    for (int i = 0; i < cell_count(); ++i) {
        if (cells_[i].filt < 0)
            throw std::invalid_argument("FilteredCochainComplex: filtration degrees must be >= 0");
        for (const auto& [j, coef] : diff_[i]) {
            if (j < 0 || j >= cell_count())
                throw std::invalid_argument("FilteredCochainComplex: differential target out of range");
            if (cells_[j].degree != cells_[i].degree + 1)
                throw std::invalid_argument("FilteredCochainComplex: differential must raise degree by 1");
            if (cells_[j].filt < cells_[i].filt)
                throw std::invalid_argument("FilteredCochainComplex: differential decreases filtration");
        }
    }

    max_filt_ = 0;
    min_degree_ = cells_.empty() ? 0 : cells_[0].degree;
    max_degree_ = cells_.empty() ? 0 : cells_[0].degree;
    for (const auto& c : cells_) {
        max_filt_ = std::max(max_filt_, c.filt);
        min_degree_ = std::min(min_degree_, c.degree);
        max_degree_ = std::max(max_degree_, c.degree);
    }
    pos_in_degree_.resize(cells_.size());
    for (int i = 0; i < cell_count(); ++i) {
        auto& bucket = by_degree_[cells_[i].degree];
        pos_in_degree_[i] = int(bucket.size());
        bucket.push_back(i);
    }

    auto reduce0 = [&](Int x) { return modulus_ == 0 ? x : int_mod(x, modulus_); };
    for (int i = 0; i < cell_count(); ++i) {
        std::map<int, Int> acc;
        for (const auto& [j, cj] : diff_[i])
            for (const auto& [k, ck] : diff_[j])
                acc[k] += cj * ck;
        for (const auto& [k, v] : acc)
            if (reduce0(v) != 0)
                throw std::invalid_argument("FilteredCochainComplex: d^2 != 0");
    }

    if (!has_product_)
        return;
    for (const auto& [key, terms] : product_) {
        const auto& [i, j] = key;
        for (const auto& [k, coef] : terms) {
            if (cells_[k].degree != cells_[i].degree + cells_[j].degree)
                throw std::invalid_argument("FilteredCochainComplex: product must add degrees");
            if (cells_[k].filt < cells_[i].filt + cells_[j].filt)
                throw NotFiltrationAdditive("product term drops below the sum of filtrations");
        }
    }
    /* d(xy) = dx y + (-1)^{deg x} x dy on cell pairs */
    for (int i = 0; i < cell_count(); ++i)
        for (int j = 0; j < cell_count(); ++j) {
            std::map<int, Int> acc;
            for (const auto& [k, ck] : product(i, j))
                for (const auto& [l, cl] : diff_[k])
                    acc[l] += ck * cl;
            for (const auto& [k, ck] : diff_[i])
                for (const auto& [l, cl] : product(k, j))
                    acc[l] -= ck * cl;
            int sign = cells_[i].degree % 2 ? -1 : 1;
            for (const auto& [k, ck] : diff_[j])
                for (const auto& [l, cl] : product(i, k))
                    acc[l] -= sign * ck * cl;
            for (const auto& [k, v] : acc)
                if (reduce0(v) != 0)
                    throw std::invalid_argument(
                        "FilteredCochainComplex: differential is not a derivation for the product");
        }
}

const ChainTerms& FilteredCochainComplex::product(int i, int j) const
{
    static const ChainTerms empty;
    auto it = product_.find({i, j});
    return it == product_.end() ? empty : it->second;
}

const std::vector<int>& FilteredCochainComplex::degree_cells(int n) const
{
    static const std::vector<int> empty;
    auto it = by_degree_.find(n);
    return it == by_degree_.end() ? empty : it->second;
}

int FilteredCochainComplex::position_in_degree(int global_index) const
{
    return pos_in_degree_[global_index];
}

IntMat FilteredCochainComplex::differential_matrix(int n) const
{
    const auto& src = degree_cells(n);
    const auto& dst = degree_cells(n + 1);
    IntMat m(int(dst.size()), int(src.size()));
    for (int c = 0; c < int(src.size()); ++c)
        for (const auto& [j, coef] : diff_[src[c]])
            m.at(pos_in_degree_[j], c) += coef;
    return m;
}

IntVec FilteredCochainComplex::to_degree_vector(int n, const ChainTerms& chain) const
{
    IntVec v(degree_cells(n).size());
    for (const auto& [i, coef] : chain) {
        if (cells_[i].degree != n)
            throw std::invalid_argument("to_degree_vector: wrong degree");
        v[pos_in_degree_[i]] += coef;
    }
    return v;
}

FGAbelianGroup Page::group_at(Bidegree b) const
{
    auto it = entries.find(b);
    return it == entries.end() ? FGAbelianGroup{} : it->second.group();
}

const Subquotient* Page::entry_at(Bidegree b) const
{
    auto it = entries.find(b);
    return it == entries.end() ? nullptr : &it->second;
}

std::map<Bidegree, FGAbelianGroup> Page::groups() const
{
    std::map<Bidegree, FGAbelianGroup> out;
    for (const auto& [b, sq] : entries)
        if (!sq.group().is_trivial())
            out[b] = sq.group();
    return out;
}

namespace {

/* Z_rr^g in total degree n: x supported on filtration >= max(g,0) with
 * dx = 0 (mod m) below filtration g + rr, embedded in the degree-n
 * coordinate space. */
IntMat cycle_lattice(const FilteredCochainComplex& C, int g, int n, int rr)
{
    const auto& amb = C.degree_cells(n);
    const auto& tgt = C.degree_cells(n + 1);
    std::vector<int> sup;
    for (int p = 0; p < int(amb.size()); ++p)
        if (C.cell(amb[p]).filt >= std::max(g, 0))
            sup.push_back(p);
    std::vector<int> rows;
    for (int q = 0; q < int(tgt.size()); ++q)
        if (C.cell(tgt[q]).filt < g + rr)
            rows.push_back(q);

    IntMat m(int(rows.size()), int(sup.size()));
    std::vector<int> row_of(tgt.size(), -1);
    for (int q = 0; q < int(rows.size()); ++q)
        row_of[rows[q]] = q;
    for (int c = 0; c < int(sup.size()); ++c)
        for (const auto& [j, coef] : C.differential(amb[sup[c]])) {
            int rq = row_of[C.position_in_degree(j)];
            if (rq >= 0)
                m.at(rq, c) += coef;
        }

    IntMat k = kernel_mod(m, C.modulus());
    IntMat out(int(amb.size()), k.cols());
    for (int c = 0; c < k.cols(); ++c)
        for (int p = 0; p < int(sup.size()); ++p)
            out.at(sup[p], c) = k.at(p, c);
    return out;
}

IntMat modulus_columns(const FilteredCochainComplex& C, int n, int min_filt)
{
    const auto& amb = C.degree_cells(n);
    if (C.modulus() == 0 || amb.empty())
        return IntMat(int(amb.size()), 0);
    std::vector<IntVec> cols;
    for (int p = 0; p < int(amb.size()); ++p)
        if (C.cell(amb[p]).filt >= min_filt) {
            IntVec e(amb.size());
            e[p] = C.modulus();
            cols.push_back(e);
        }
    return IntMat::from_columns(int(amb.size()), cols);
}

Subquotient page_entry(const FilteredCochainComplex& C, int r, int f, int n)
{
    IntMat z = cycle_lattice(C, f, n, r);
    IntMat b1 = cycle_lattice(C, f + 1, n, r - 1);
    IntMat z_in = cycle_lattice(C, f - r + 1, n - 1, r - 1);
    IntMat b2 = C.differential_matrix(n - 1) * z_in;
    /* multiples of m anywhere in the degree space: harmless for the group
     * (boundary parts are supported above filtration f) and they make
     * projections tolerant of mod-m representatives */
    IntMat t = IntMat::hconcat(IntMat::hconcat(b1, b2), modulus_columns(C, n, 0));
    int ambient = int(C.degree_cells(n).size());
    if (t.rows() == 0 && t.cols() == 0)
        t = IntMat(ambient, 0);
    return Subquotient(ambient, IntMat::hconcat(z, t), t);
}

}  // namespace

Page page(const FilteredCochainComplex& C, int r)
{
    if (r < 1)
        throw std::invalid_argument("page: r starts at 1");
    Page pg;
    pg.r = r;
    pg.d_shift_f = r;
    pg.d_shift_c = r - 1;

    std::vector<Bidegree> keys;
    for (int n = C.min_degree(); n <= C.max_degree(); ++n)
        for (int f = 0; f <= C.max_filt(); ++f)
            if (!C.degree_cells(n).empty())
                keys.push_back(Bidegree{f, f - n});

    if (keys.size() > 8) {
        std::vector<std::future<Subquotient>> futs;
        for (const Bidegree& b : keys)
            futs.push_back(std::async(std::launch::async,
                                      [&C, r, b] { return page_entry(C, r, b.f, b.n()); }));
        for (size_t i = 0; i < keys.size(); ++i)
            pg.entries.emplace(keys[i], futs[i].get());
    } else {
        for (const Bidegree& b : keys)
            pg.entries.emplace(b, page_entry(C, r, b.f, b.n()));
    }

    for (const Bidegree& b : keys) {
        Bidegree tb = pg.d_target(b);
        auto src = pg.entries.find(b);
        auto dst = pg.entries.find(tb);
        if (src == pg.entries.end() || dst == pg.entries.end())
            continue;
        if (src->second.group().is_trivial() || dst->second.group().is_trivial())
            continue;
        pg.d.emplace(b, induced_map(C.differential_matrix(b.n()), src->second, dst->second));
    }

    for (const auto& [b, h] : pg.d) {
        Bidegree tb = pg.d_target(b);
        auto next = pg.d.find(tb);
        if (next != pg.d.end() && !compose(next->second, h).is_zero())
            throw std::logic_error("page: d_r . d_r != 0");
    }
    return pg;
}

Page e_infinity(const FilteredCochainComplex& C, int* limiting_r)
{
    int r_star = C.max_filt() + 1;
    Page stable = page(C, r_star);
    if (limiting_r) {
        *limiting_r = r_star;
        auto stable_groups = stable.groups();
        for (int r = r_star - 1; r >= 1; --r) {
            Page pg = page(C, r);
            bool same = pg.groups() == stable_groups;
            for (const auto& [b, h] : pg.d)
                if (!h.is_zero())
                    same = false;
            if (!same)
                break;
            *limiting_r = r;
        }
    }
    return stable;
}

Subquotient total_cohomology(const FilteredCochainComplex& C, int n)
{
    IntMat kernel = cycle_lattice(C, 0, n, C.max_filt() + 1);
    IntMat im = C.differential_matrix(n - 1);
    IntMat t = IntMat::hconcat(im, modulus_columns(C, n, 0));
    int ambient = int(C.degree_cells(n).size());
    if (t.rows() == 0 && t.cols() == 0)
        t = IntMat(ambient, 0);
    return Subquotient(ambient, IntMat::hconcat(kernel, t), t);
}

AbutmentReport abutment_check(const FilteredCochainComplex& C)
{
    AbutmentReport rep;
    Page stable = e_infinity(C);
    int r_star = C.max_filt() + 1;
    for (int n = C.min_degree(); n <= C.max_degree(); ++n) {
        if (C.degree_cells(n).empty())
            continue;
        int ambient = int(C.degree_cells(n).size());
        IntMat boundaries =
            IntMat::hconcat(C.differential_matrix(n - 1), modulus_columns(C, n, 0));
        if (boundaries.rows() == 0 && boundaries.cols() == 0)
            boundaries = IntMat(ambient, 0);
        for (int f = 0; f <= C.max_filt(); ++f) {
            IntMat zf = cycle_lattice(C, f, n, r_star);
            IntMat zf1 = cycle_lattice(C, f + 1, n, r_star);
            IntMat t = IntMat::hconcat(zf1, boundaries);
            Subquotient graded_piece(ambient, IntMat::hconcat(zf, t), t);

            Bidegree b{f, f - n};
            const Subquotient* e = stable.entry_at(b);
            FGAbelianGroup eg = e ? e->group() : FGAbelianGroup{};
            rep.pieces[b] = {graded_piece.group(), eg};
            bool match;
            if (!e || e->group().is_trivial() || graded_piece.group().is_trivial())
                match = (!e || e->group().is_trivial()) && graded_piece.group().is_trivial();
            else
                match = is_isomorphism(induced_map(IntMat::identity(ambient), *e, graded_piece));
            if (!match) {
                rep.ok = false;
                std::ostringstream os;
                os << "MISMATCH at degree " << n << ", filtration " << f << ": E_inf " << eg.str()
                   << " vs graded " << graded_piece.group().str();
                rep.mismatch = os.str();
                return rep;
            }
        }
    }
    return rep;
}

namespace {

struct PairingBuilder {
    const FilteredCochainComplex& cx;
    const FilteredCochainComplex& cy;
    const FilteredCochainComplex& cxy;
    const ChainPairing& mu;

    IntVec product_vector(int nx, int ny, const IntVec& vx, const IntVec& vy) const
    {
        const auto& ax = cx.degree_cells(nx);
        const auto& ay = cy.degree_cells(ny);
        IntVec out(cxy.degree_cells(nx + ny).size());
        for (int i = 0; i < int(ax.size()); ++i) {
            if (vx[i] == 0)
                continue;
            for (int j = 0; j < int(ay.size()); ++j) {
                if (vy[j] == 0)
                    continue;
                for (const auto& [k, coef] : mu(ax[i], ay[j]))
                    out[cxy.position_in_degree(k)] += vx[i] * vy[j] * coef;
            }
        }
        if (cxy.modulus() != 0)
            for (auto& v : out)
                v = int_mod(v, cxy.modulus());
        return out;
    }
};

}  // namespace

PagePairing page_pairing(const FilteredCochainComplex& Cx, const FilteredCochainComplex& Cy,
                         const FilteredCochainComplex& Cxy, const ChainPairing& mu, int r)
{
    PagePairing pp;
    pp.r = r;
    pp.px = page(Cx, r);
    pp.py = page(Cy, r);
    pp.pxy = page(Cxy, r);
    PairingBuilder pb{Cx, Cy, Cxy, mu};

    for (const auto& [b1, e1] : pp.px.entries) {
        if (e1.group().is_trivial())
            continue;
        for (const auto& [b2, e2] : pp.py.entries) {
            if (e2.group().is_trivial())
                continue;
            Bidegree bt{b1.f + b2.f, b1.c + b2.c};
            const Subquotient* t = pp.pxy.entry_at(bt);
            if (!t)
                continue;
            int nx = b1.n(), ny = b2.n();

            auto project_or_throw = [&](const IntVec& v) {
                try {
                    return t->project(v);
                } catch (const SubgroupViolation&) {
                    throw NotWellDefined("page_pairing: product leaves the cycle lattice at "
                                         + bt.str());
                }
            };

            /* independence of the generator representatives: perturbing a
             * representative by the boundary part must not move the class */
            IntMat r1 = e1.generator_reps(), r2 = e2.generator_reps();
            IntMat t1b = column_echelon_basis(e1.gens_T());
            IntMat t2b = column_echelon_basis(e2.gens_T());
            for (int c = 0; c < t1b.cols(); ++c)
                for (int g = 0; g < r2.cols(); ++g)
                    if (!all_zero(project_or_throw(
                            pb.product_vector(nx, ny, t1b.column(c), r2.column(g)))))
                        throw NotWellDefined("page_pairing: representative dependence at "
                                             + b1.str() + " x " + b2.str());
            for (int c = 0; c < r1.cols(); ++c)
                for (int g = 0; g < t2b.cols(); ++g)
                    if (!all_zero(project_or_throw(
                            pb.product_vector(nx, ny, r1.column(c), t2b.column(g)))))
                        throw NotWellDefined("page_pairing: representative dependence at "
                                             + b1.str() + " x " + b2.str());

            if (t->group().is_trivial())
                continue;
            std::vector<std::vector<IntVec>> table(r1.cols());
            for (int g1 = 0; g1 < r1.cols(); ++g1) {
                table[g1].resize(r2.cols());
                for (int g2 = 0; g2 < r2.cols(); ++g2)
                    table[g1][g2] = project_or_throw(
                        pb.product_vector(nx, ny, r1.column(g1), r2.column(g2)));
            }
            pp.tables.emplace(std::make_pair(b1, b2), std::move(table));
        }
    }
    return pp;
}

PagePairing page_pairing(const FilteredCochainComplex& C, int r)
{
    if (!C.has_product())
        throw std::invalid_argument("page_pairing: complex has no product");
    ChainPairing mu = [&C](int i, int j) { return C.product(i, j); };
    return page_pairing(C, C, C, mu, r);
}

const std::vector<std::vector<IntVec>>* PagePairing::table_at(Bidegree b1, Bidegree b2) const
{
    auto it = tables.find({b1, b2});
    return it == tables.end() ? nullptr : &it->second;
}

namespace {

IntVec apply_table_left(const PagePairing& pp, Bidegree b1, Bidegree b2, const IntVec& x_coords,
                        int g2, const FGAbelianGroup& target)
{
    IntVec out(target.coords());
    const auto* tab = pp.table_at(b1, b2);
    if (!tab)
        return out;
    for (size_t k = 0; k < x_coords.size(); ++k)
        if (x_coords[k] != 0)
            out = add_scaled(target, out, (*tab)[k][g2], x_coords[k]);
    return out;
}

IntVec apply_table_right(const PagePairing& pp, Bidegree b1, Bidegree b2, int g1,
                         const IntVec& y_coords, const FGAbelianGroup& target)
{
    IntVec out(target.coords());
    const auto* tab = pp.table_at(b1, b2);
    if (!tab)
        return out;
    for (size_t k = 0; k < y_coords.size(); ++k)
        if (y_coords[k] != 0)
            out = add_scaled(target, out, (*tab)[g1][k], y_coords[k]);
    return out;
}

}  // namespace

LeibnizReport leibniz_check(const PagePairing& pp)
{
    LeibnizReport rep;
    for (const auto& [key, table] : pp.tables) {
        const auto& [b1, b2] = key;
        Bidegree bt{b1.f + b2.f, b1.c + b2.c};
        Bidegree bts = pp.pxy.d_target(bt);
        FGAbelianGroup target = pp.pxy.group_at(bts);
        if (target.is_trivial())
            continue;
        Bidegree b1s = pp.px.d_target(b1);
        Bidegree b2s = pp.py.d_target(b2);

        auto dxy = pp.pxy.d.find(bt);
        auto dx = pp.px.d.find(b1);
        auto dy = pp.py.d.find(b2);
        int n1 = pp.px.group_at(b1).coords();
        int n2 = pp.py.group_at(b2).coords();
        int sign = b1.n() % 2 ? -1 : 1;

        for (int g1 = 0; g1 < n1; ++g1)
            for (int g2 = 0; g2 < n2; ++g2) {
                IntVec lhs(target.coords());
                if (dxy != pp.pxy.d.end())
                    lhs = reduce_in(target, dxy->second.apply(table[g1][g2]));
                IntVec rhs(target.coords());
                if (dx != pp.px.d.end())
                    rhs = add_scaled(
                        target, rhs,
                        apply_table_left(pp, b1s, b2, dx->second.matrix.column(g1), g2, target),
                        Int(1));
                if (dy != pp.py.d.end())
                    rhs = add_scaled(
                        target, rhs,
                        apply_table_right(pp, b1, b2s, g1, dy->second.matrix.column(g2), target),
                        Int(sign));
                if (reduce_in(target, lhs) != reduce_in(target, rhs)) {
                    rep.ok = false;
                    std::ostringstream os;
                    os << "Leibniz fails at " << b1.str() << " x " << b2.str() << " generators ("
                       << g1 << ", " << g2 << ")";
                    rep.failing = os.str();
                    return rep;
                }
            }
    }
    return rep;
}

namespace {

std::optional<GroupHom> build_witness(const Subquotient& ea, const Subquotient& eb, Bidegree b,
                                      const AmbientBridge& bridge)
{
    IntMat reps = ea.generator_reps();
    IntMat m(eb.group().coords(), ea.group().coords());
    for (int c = 0; c < reps.cols(); ++c) {
        IntVec v = reps.column(c);
        if (bridge)
            v = bridge(b, v);
        if (int(v.size()) != eb.ambient())
            return std::nullopt;
        if (!eb.spans(v))
            return std::nullopt;
        m.set_column(c, eb.project(v));
    }
    try {
        return GroupHom(ea.group(), eb.group(), std::move(m));
    } catch (const NotWellDefined&) {
        return std::nullopt;
    }
}

}  // namespace

CompareReport compare_global_iso(const PagePairing& a, const PagePairing& b,
                                 const SignFamily& family, const AmbientBridge& bridge)
{
    CompareReport rep;
    auto fail = [&](const std::string& why) {
        rep.yes = false;
        rep.counterexample = why;
        return rep;
    };

    std::map<Bidegree, GroupHom> wx, wy, wxy;
    auto build_all = [&](const Page& pa, const Page& pb, std::map<Bidegree, GroupHom>& out) {
        std::set<Bidegree> bds;
        for (const auto& [bd, e] : pa.entries)
            if (!e.group().is_trivial())
                bds.insert(bd);
        for (const auto& [bd, e] : pb.entries)
            if (!e.group().is_trivial())
                bds.insert(bd);
        for (const Bidegree& bd : bds) {
            const Subquotient* ea = pa.entry_at(bd);
            const Subquotient* eb = pb.entry_at(bd);
            if (!ea || !eb || !(ea->group() == eb->group()))
                return false;
            auto w = build_witness(*ea, *eb, bd, bridge);
            if (!w || !is_isomorphism(*w))
                return false;
            out.emplace(bd, *w);
        }
        return true;
    };
    if (!build_all(a.px, b.px, wx))
        return fail("no bidegreewise isomorphism on the first factor pages");
    if (!build_all(a.py, b.py, wy))
        return fail("no bidegreewise isomorphism on the second factor pages");
    if (!build_all(a.pxy, b.pxy, wxy))
        return fail("no bidegreewise isomorphism on the target pages");
    rep.witnesses = wxy;

    std::set<std::pair<Bidegree, Bidegree>> keys;
    for (const auto& [k, t] : a.tables)
        keys.insert(k);
    for (const auto& [k, t] : b.tables)
        keys.insert(k);
    for (const auto& [b1, b2] : keys) {
        Bidegree bt{b1.f + b2.f, b1.c + b2.c};
        FGAbelianGroup ga1 = a.px.group_at(b1), ga2 = a.py.group_at(b2);
        FGAbelianGroup target_b = b.pxy.group_at(bt);
        if (target_b.is_trivial())
            continue;
        auto it_wx = wx.find(b1);
        auto it_wy = wy.find(b2);
        auto it_wxy = wxy.find(bt);
        if (it_wx == wx.end() || it_wy == wy.end())
            continue;
        int sign = family.eval(bt.f, bt.c) * family.eval(b1.f, b1.c) * family.eval(b2.f, b2.c);
        for (int g1 = 0; g1 < ga1.coords(); ++g1)
            for (int g2 = 0; g2 < ga2.coords(); ++g2) {
                IntVec lhs(target_b.coords());
                if (const auto* ta = a.table_at(b1, b2)) {
                    if (it_wxy == wxy.end())
                        return fail("missing target witness at " + bt.str());
                    lhs = reduce_in(target_b, it_wxy->second.apply((*ta)[g1][g2]));
                }
                IntVec x = it_wx->second.matrix.column(g1);
                IntVec y = it_wy->second.matrix.column(g2);
                IntVec acc(target_b.coords());
                for (size_t k = 0; k < x.size(); ++k)
                    if (x[k] != 0)
                        acc = add_scaled(target_b, acc,
                                         apply_table_right(b, b1, b2, int(k), y, target_b), x[k]);
                IntVec rhs = add_scaled(target_b, IntVec(target_b.coords()), acc, Int(sign));
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "pairings differ at " << b1.str() << " x " << b2.str();
                    return fail(os.str());
                }
            }
    }
    return rep;
}

DiscrepancyReport pairing_discrepancy(const PagePairing& a, const PagePairing& b,
                                      const SignFamily& family, const AmbientBridge& bridge)
{
    DiscrepancyReport rep;
    std::map<Bidegree, GroupHom> wx, wy, wxy;
    auto get_witness = [&](const Page& pa, const Page& pb, Bidegree bd,
                           std::map<Bidegree, GroupHom>& cache) -> const GroupHom* {
        auto it = cache.find(bd);
        if (it != cache.end())
            return &it->second;
        const Subquotient* ea = pa.entry_at(bd);
        const Subquotient* eb = pb.entry_at(bd);
        if (!ea || !eb || !(ea->group() == eb->group()))
            return nullptr;
        auto w = build_witness(*ea, *eb, bd, bridge);
        if (!w || !is_isomorphism(*w))
            return nullptr;
        return &cache.emplace(bd, *w).first->second;
    };

    std::set<std::pair<Bidegree, Bidegree>> keys;
    for (const auto& [k, t] : a.tables)
        keys.insert(k);
    for (const auto& [k, t] : b.tables)
        keys.insert(k);
    for (const auto& [b1, b2] : keys) {
        Bidegree bt{b1.f + b2.f, b1.c + b2.c};
        FGAbelianGroup target_b = b.pxy.group_at(bt);
        if (target_b.is_trivial())
            continue;
        const GroupHom* hx = get_witness(a.px, b.px, b1, wx);
        const GroupHom* hy = get_witness(a.py, b.py, b2, wy);
        const GroupHom* hxy = get_witness(a.pxy, b.pxy, bt, wxy);
        if (!hx || !hy || !hxy) {
            rep.defined = false;
            rep.detail = "entries not identified at " + b1.str() + " x " + b2.str();
            return rep;
        }
        int expect_f2c1 = (b2.f * b1.c) % 2 ? -1 : 1;
        int expect_f1c2 = (b1.f * b2.c) % 2 ? -1 : 1;
        int eta = family.eval(bt.f, bt.c) * family.eval(b1.f, b1.c) * family.eval(b2.f, b2.c);
        FGAbelianGroup ga1 = a.px.group_at(b1), ga2 = a.py.group_at(b2);
        for (int g1 = 0; g1 < ga1.coords(); ++g1)
            for (int g2 = 0; g2 < ga2.coords(); ++g2) {
                IntVec va(target_b.coords());
                if (const auto* ta = a.table_at(b1, b2))
                    va = reduce_in(target_b, hxy->apply((*ta)[g1][g2]));
                IntVec x = hx->matrix.column(g1);
                IntVec y = hy->matrix.column(g2);
                IntVec vb(target_b.coords());
                for (size_t k = 0; k < x.size(); ++k)
                    if (x[k] != 0)
                        vb = add_scaled(target_b, vb,
                                        apply_table_right(b, b1, b2, int(k), y, target_b), x[k]);
                bool plus = va == vb;
                IntVec neg(vb.size());
                for (size_t i = 0; i < vb.size(); ++i)
                    neg[i] = -vb[i];
                bool minus = va == reduce_in(target_b, std::move(neg));
                if (all_zero(va) && all_zero(vb))
                    continue;
                if (!plus && !minus) {
                    rep.defined = false;
                    rep.detail = "no sign ratio at " + b1.str() + " x " + b2.str();
                    return rep;
                }
                if (plus && minus)
                    continue;
                ++rep.constrained;
                int s = (plus ? 1 : -1) * eta;
                if (s != expect_f2c1)
                    rep.matches_f2c1 = false;
                if (s != expect_f1c2)
                    rep.matches_f1c2 = false;
                if (s != 1)
                    rep.matches_plus1 = false;
            }
    }
    return rep;
}

}  // namespace sseq
