#pragma once

#include <map>
#include <optional>
#include <string>

#include "sseq/simplicial.hpp"

namespace sseq {

enum class LevelKind { Zero, Free, Cyclic };

struct RingLevel {
    LevelKind kind = LevelKind::Zero;
    Int modulus = 0;  // for Cyclic

    bool nonzero() const { return kind != LevelKind::Zero; }
    bool operator==(const RingLevel& o) const = default;
    std::string str() const;
};

/* Finitely presented graded coefficient ring: cyclic level per degree,
 * integer structure constants for the pairing, optional periodicity
 * (an invertible generator whose degree folds all levels together). */
class GradedRing {
public:
    GradedRing() = default;
    static GradedRing from_levels(std::map<int, RingLevel> levels,
                                  std::map<std::pair<int, int>, Int> pairing_constants = {},
                                  std::optional<int> period = std::nullopt);

    static GradedRing integers();                 // Z in degree 0
    static GradedRing cyclic(const Int& m);       // Z/m in degree 0
    /* Z[b, b^{-1}] with |b| = period: level Z at every multiple of period. */
    static GradedRing laurent(int period);
    /* Z in degrees 0 and 1, zero above: the smallest ring with an
     * odd-degree level (makes the Koszul signs visible). */
    static GradedRing two_line();

    RingLevel level(int q) const;
    Int pairing_constant(int q, int t) const;
    std::optional<int> period() const { return period_; }
    const std::map<int, RingLevel>& declared_levels() const { return levels_; }
    Int reduce(int q, const Int& x) const;

    /* True when every nonzero level has the same shape (all Z, or all Z/m
     * with one m); the filtered-complex builders require this. */
    bool uniform_shape() const;
    Int uniform_modulus() const;  // 0 for Z-shaped

private:
    int fold(int q) const;
    std::map<int, RingLevel> levels_;
    std::map<std::pair<int, int>, Int> pairing_;
    std::optional<int> period_;
};

/* Element of Hom(C_p(X), A_q); total degree is p - q. */
struct BigradedCochain {
    const OrderedComplex* complex = nullptr;
    const GradedRing* ring = nullptr;
    int p = 0, q = 0;
    IntVec values;

    BigradedCochain() = default;
    BigradedCochain(const OrderedComplex& K, const GradedRing& A, int p_, int q_);
    BigradedCochain(const OrderedComplex& K, const GradedRing& A, int p_, int q_, IntVec vals);

    int total_degree() const { return p - q; }
    bool is_zero() const;
    bool operator==(const BigradedCochain& o) const;
};

/* (delta a)(c) = -(-1)^{p-q} a(boundary c), bidegree (p+1, q). */
BigradedCochain graded_delta(const BigradedCochain& a);

/* (a cup b)(c x d) = (-1)^{(s-t)p} a(c) b(d) for a in (p,q), b in (s,t). */
BigradedCochain graded_cup(const BigradedCochain& a, const BigradedCochain& b);

/* Coboundary matrix of C^{p,q} -> C^{p+1,q}. */
IntMat graded_delta_matrix(const IntChainComplex& C, int p, int q);

/* H^{p,q}(X;A), presented over the degree-p cochain basis. */
Subquotient bigraded_cohomology(const IntChainComplex& C, const GradedRing& A, int p, int q);

/* Quadratic mod-2 sign family (-1)^{a p^2 + b pq + c q^2 + d p + e q}. */
struct SignFamily {
    int a = 0, b = 0, c = 0, d = 0, e = 0;

    int eval(int p, int q) const;
    bool operator==(const SignFamily& o) const = default;
    std::string str() const;

    static SignFamily identity() { return {}; }
    static SignFamily pq() { return {0, 1, 0, 0, 0}; }
    static std::vector<SignFamily> all();  // the 32 quadratic families
};

/* The sign by which the graded/ungraded comparison square commutes for
 * classes in bidegrees (p,q) and (s,t), when H^{p,q} -> H^p(-;A_q) is
 * scaled by the family: family(p+s,q+t) family(p,q) family(s,t) (-1)^{tp}. */
int eta_discrepancy(const SignFamily& fam, int p, int q, int s, int t);

struct EtaReport {
    bool uniform_sq = true;      // == (-1)^{sq} everywhere
    bool uniform_pt = true;      // == (-1)^{pt} everywhere
    bool uniform_plus1 = true;   // == +1 everywhere
    std::string classification;  // "(-1)^{sq}", "(-1)^{pt}", "+1" or "mixed"
};
EtaReport eta_commutation(const SignFamily& fam, int range);

/* Exhaustive search: does any quadratic family commute on the nose? */
bool strict_quadratic_family_exists(int range);

/* Indexing dictionary between the engine bigrading (f = filtration,
 * c = coefficient degree, total degree f - c) and the homotopy-style
 * (p, q) bigrading with f = q, c = p + q. */
std::pair<int, int> engine_to_homotopy(int f, int c);  // returns (p, q)
std::pair<int, int> homotopy_to_engine(int p, int q);  // returns (f, c)

/* Substitution of the dictionary into a quadratic family. */
SignFamily transport_homotopy_to_engine(const SignFamily& fam);
SignFamily transport_engine_to_homotopy(const SignFamily& fam);

/* t(p-q) + pq + st + (p+s)(q+t) = q(t-s) mod 2, checked on [0,range]^4. */
bool reindex_sign_identity(int range);

}  // namespace sseq
