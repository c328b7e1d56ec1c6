#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

namespace sseq {

/* All arithmetic in the library is exact. Intermediate entries of a Smith
 * reduction can exceed any fixed width, so the integer type is
 * arbitrary-precision throughout. */
using Int = mpz_class;

inline Int int_gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/* Floored modulus into [0, m). Requires m > 0. */
inline Int int_mod(const Int& a, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a)
{
    if (d == 0)
        return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/* Exact quotient; caller guarantees divisibility. */
inline Int int_divexact(const Int& a, const Int& d)
{
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

using IntVec = std::vector<Int>;

std::string to_string(const Int& x);

}  // namespace sseq
