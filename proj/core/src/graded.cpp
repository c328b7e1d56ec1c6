#include "sseq/graded.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sseq {

std::string RingLevel::str() const
{
    switch (kind) {
    case LevelKind::Zero:
        return "0";
    case LevelKind::Free:
        return "Z";
    case LevelKind::Cyclic:
        return "Z/" + modulus.get_str();
    }
    return "?";
}

GradedRing GradedRing::from_levels(std::map<int, RingLevel> levels,
                                   std::map<std::pair<int, int>, Int> pairing_constants,
                                   std::optional<int> period)
{
    GradedRing r;
    r.levels_ = std::move(levels);
    r.pairing_ = std::move(pairing_constants);
    r.period_ = period;
    if (period && *period <= 0)
        throw std::invalid_argument("GradedRing: period must be positive");
    if (period)
        for (const auto& [q, lv] : r.levels_)
            if (q < 0 || q >= *period)
                throw std::invalid_argument("GradedRing: periodic levels live on [0, period)");
    for (const auto& [q, lv] : r.levels_)
        if (lv.kind == LevelKind::Cyclic && lv.modulus < 2)
            throw std::invalid_argument("GradedRing: cyclic level needs modulus >= 2");
    if (!r.level(0).nonzero())
        throw std::invalid_argument("GradedRing: unit requires a nonzero level in degree 0");

    /* unit is strict: constants against degree 0 must be 1 */
    for (const auto& [q, lv] : r.levels_) {
        if (!lv.nonzero())
            continue;
        if (r.pairing_constant(0, q) != 1 || r.pairing_constant(q, 0) != 1)
            throw std::invalid_argument("GradedRing: pairing constants against the unit must be 1");
    }
    /* associativity on generators over the declared window */
    std::vector<int> degs;
    for (const auto& [q, lv] : r.levels_)
        if (lv.nonzero())
            degs.push_back(q);
    for (int q : degs)
        for (int t : degs)
            for (int u : degs) {
                RingLevel target = r.level(q + t + u);
                if (!target.nonzero())
                    continue;
                Int lhs = r.pairing_constant(q, t) * r.pairing_constant(q + t, u);
                Int rhs = r.pairing_constant(t, u) * r.pairing_constant(q, t + u);
                Int diff = lhs - rhs;
                if (target.kind == LevelKind::Cyclic)
                    diff = int_mod(diff, target.modulus);
                if (diff != 0)
                    throw std::invalid_argument("GradedRing: pairing constants not associative");
            }
    return r;
}

GradedRing GradedRing::integers()
{
    return from_levels({{0, {LevelKind::Free, 0}}});
}

GradedRing GradedRing::cyclic(const Int& m)
{
    return from_levels({{0, {LevelKind::Cyclic, m}}});
}

GradedRing GradedRing::laurent(int period)
{
    std::map<int, RingLevel> lv;
    lv[0] = {LevelKind::Free, 0};
    for (int q = 1; q < period; ++q)
        lv[q] = {LevelKind::Zero, 0};
    return from_levels(std::move(lv), {}, period);
}

GradedRing GradedRing::two_line()
{
    return from_levels({{0, {LevelKind::Free, 0}}, {1, {LevelKind::Free, 0}}});
}

int GradedRing::fold(int q) const
{
    if (!period_)
        return q;
    int d = *period_;
    return (q % d + d) % d;
}

RingLevel GradedRing::level(int q) const
{
    auto it = levels_.find(fold(q));
    return it == levels_.end() ? RingLevel{} : it->second;
}

Int GradedRing::pairing_constant(int q, int t) const
{
    if (!level(q).nonzero() || !level(t).nonzero() || !level(q + t).nonzero())
        return 0;
    auto it = pairing_.find({fold(q), fold(t)});
    return it == pairing_.end() ? Int(1) : it->second;
}

Int GradedRing::reduce(int q, const Int& x) const
{
    RingLevel lv = level(q);
    switch (lv.kind) {
    case LevelKind::Zero:
        return 0;
    case LevelKind::Free:
        return x;
    case LevelKind::Cyclic:
        return int_mod(x, lv.modulus);
    }
    return x;
}

bool GradedRing::uniform_shape() const
{
    std::optional<RingLevel> shape;
    for (const auto& [q, lv] : levels_) {
        if (!lv.nonzero())
            continue;
        if (!shape)
            shape = lv;
        else if (!(lv == *shape))
            return false;
    }
    return true;
}

Int GradedRing::uniform_modulus() const
{
    for (const auto& [q, lv] : levels_)
        if (lv.kind == LevelKind::Cyclic)
            return lv.modulus;
    return 0;
}

BigradedCochain::BigradedCochain(const OrderedComplex& K, const GradedRing& A, int p_, int q_)
    : complex(&K), ring(&A), p(p_), q(q_), values(A.level(q_).nonzero() ? K.count(p_) : 0)
{
}

BigradedCochain::BigradedCochain(const OrderedComplex& K, const GradedRing& A, int p_, int q_,
                                 IntVec vals)
    : complex(&K), ring(&A), p(p_), q(q_), values(std::move(vals))
{
    int want = A.level(q_).nonzero() ? K.count(p_) : 0;
    if (int(values.size()) != want)
        throw std::invalid_argument("BigradedCochain: value count does not match C^{p,q}");
    for (auto& v : values)
        v = A.reduce(q, v);
}

bool BigradedCochain::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const Int& v) { return v == 0; });
}

bool BigradedCochain::operator==(const BigradedCochain& o) const
{
    return p == o.p && q == o.q && values == o.values;
}

BigradedCochain graded_delta(const BigradedCochain& a)
{
    const OrderedComplex& K = *a.complex;
    BigradedCochain out(K, *a.ring, a.p + 1, a.q);
    if (out.values.empty())
        return out;
    int n = a.total_degree();
    int lead = (n % 2 == 0) ? -1 : 1;  // -(-1)^n
    for (int c = 0; c < K.count(a.p + 1); ++c) {
        const Simplex& s = K.simplices(a.p + 1)[c];
        Int acc = 0;
        int sign = 1;
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + i);
            acc += sign * a.values[K.index_of(a.p, f)];
            sign = -sign;
        }
        out.values[c] = a.ring->reduce(a.q, lead * acc);
    }
    return out;
}

BigradedCochain graded_cup(const BigradedCochain& a, const BigradedCochain& b)
{
    const OrderedComplex& K = *a.complex;
    if (b.complex != a.complex || b.ring != a.ring)
        throw std::invalid_argument("graded_cup: mismatched complexes or rings");
    int p = a.p, q = a.q, s = b.p, t = b.q;
    BigradedCochain out(K, *a.ring, p + s, q + t);
    if (out.values.empty())
        return out;
    int sign = ((s - t) * p) % 2 ? -1 : 1;  // (-1)^{(s-t)p}
    Int constant = a.ring->pairing_constant(q, t);
    for (int c = 0; c < K.count(p + s); ++c) {
        const Simplex& cell = K.simplices(p + s)[c];
        Simplex front(cell.begin(), cell.begin() + p + 1);
        Simplex back(cell.begin() + p, cell.end());
        Int va = a.values.empty() ? Int(0) : a.values[K.index_of(p, front)];
        Int vb = b.values.empty() ? Int(0) : b.values[K.index_of(s, back)];
        out.values[c] = a.ring->reduce(q + t, sign * constant * va * vb);
    }
    return out;
}

IntMat graded_delta_matrix(const IntChainComplex& C, int p, int q)
{
    /* differs from the ungraded coboundary by (-1)^q */
    IntMat m = C.delta_matrix(p);
    if (q % 2)
        m = m.scaled(-1);
    return m;
}

Subquotient bigraded_cohomology(const IntChainComplex& C, const GradedRing& A, int p, int q)
{
    RingLevel lv = A.level(q);
    if (!lv.nonzero())
        return Subquotient(0, IntMat(0, 0), IntMat(0, 0));
    Int modulus = lv.kind == LevelKind::Cyclic ? lv.modulus : Int(0);
    IntMat d_out = graded_delta_matrix(C, p, q);
    IntMat kernel = kernel_mod(d_out, modulus);
    IntMat t_part = p >= 1 ? graded_delta_matrix(C, p - 1, q) : IntMat(C.rank(p), 0);
    if (modulus != 0)
        t_part = IntMat::hconcat(t_part, IntMat::identity(C.rank(p)).scaled(modulus));
    return Subquotient(C.rank(p), IntMat::hconcat(kernel, t_part), t_part);
}

int SignFamily::eval(int p, int q) const
{
    long ex = long(a) * p * p + long(b) * p * q + long(c) * q * q + long(d) * p + long(e) * q;
    return (ex % 2 + 2) % 2 ? -1 : 1;
}

std::string SignFamily::str() const
{
    std::ostringstream os;
    bool any = false;
    auto term = [&](int coef, const std::string& name) {
        if (coef % 2) {
            os << (any ? "+" : "") << name;
            any = true;
        }
    };
    os << "(-1)^{";
    term(a, "p^2");
    term(b, "pq");
    term(c, "q^2");
    term(d, "p");
    term(e, "q");
    if (!any)
        os << "0";
    os << "}";
    return os.str();
}

std::vector<SignFamily> SignFamily::all()
{
    std::vector<SignFamily> fams;
    for (int bits = 0; bits < 32; ++bits)
        fams.push_back({bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1, bits >> 4 & 1});
    return fams;
}

int eta_discrepancy(const SignFamily& fam, int p, int q, int s, int t)
{
    /* chain level: graded cup = (-1)^{tp} (ungraded cup) */
    int chain = (t * p) % 2 ? -1 : 1;
    return fam.eval(p + s, q + t) * fam.eval(p, q) * fam.eval(s, t) * chain;
}

EtaReport eta_commutation(const SignFamily& fam, int range)
{
    EtaReport rep;
    for (int p = 0; p <= range; ++p)
        for (int q = 0; q <= range; ++q)
            for (int s = 0; s <= range; ++s)
                for (int t = 0; t <= range; ++t) {
                    int disc = eta_discrepancy(fam, p, q, s, t);
                    if (disc != ((s * q) % 2 ? -1 : 1))
                        rep.uniform_sq = false;
                    if (disc != ((p * t) % 2 ? -1 : 1))
                        rep.uniform_pt = false;
                    if (disc != 1)
                        rep.uniform_plus1 = false;
                }
    if (rep.uniform_plus1)
        rep.classification = "+1";
    else if (rep.uniform_sq)
        rep.classification = "(-1)^{sq}";
    else if (rep.uniform_pt)
        rep.classification = "(-1)^{pt}";
    else
        rep.classification = "mixed";
    return rep;
}

bool strict_quadratic_family_exists(int range)
{
    for (const SignFamily& fam : SignFamily::all())
        if (eta_commutation(fam, range).uniform_plus1)
            return true;
    return false;
}

std::pair<int, int> engine_to_homotopy(int f, int c)
{
    return {c - f, f};
}

std::pair<int, int> homotopy_to_engine(int p, int q)
{
    return {q, p + q};
}

SignFamily transport_homotopy_to_engine(const SignFamily& fam)
{
    /* substitute p = c - f, q = f (mod 2: p = c + f) */
    SignFamily out;
    out.a = (fam.a + fam.b + fam.c) % 2;  // f^2
    out.b = fam.b % 2;                    // fc
    out.c = fam.a % 2;                    // c^2
    out.d = (fam.d + fam.e) % 2;          // f
    out.e = fam.d % 2;                    // c
    return out;
}

SignFamily transport_engine_to_homotopy(const SignFamily& fam)
{
    /* substitute f = q, c = p + q */
    SignFamily out;
    out.a = fam.c % 2;                    // p^2
    out.b = fam.b % 2;                    // pq
    out.c = (fam.a + fam.b + fam.c) % 2;  // q^2
    out.d = fam.e % 2;                    // p
    out.e = (fam.d + fam.e) % 2;          // q
    return out;
}

bool reindex_sign_identity(int range)
{
    for (int p = 0; p <= range; ++p)
        for (int q = 0; q <= range; ++q)
            for (int s = 0; s <= range; ++s)
                for (int t = 0; t <= range; ++t) {
                    long lhs = long(t) * (p - q) + long(p) * q + long(s) * t
                               + long(p + s) * (q + t);
                    long rhs = long(q) * (t - s);
                    if (((lhs - rhs) % 2 + 2) % 2 != 0)
                        return false;
                }
    return true;
}

}  // namespace sseq
