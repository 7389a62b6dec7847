#ifndef CIVHS_RATIONAL_HPP
#define CIVHS_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace civhs {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator once canonicalized; the helpers below never skip
// canonicalization.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_from_mpz(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q".
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// True iff r = s^2 for some rational s; writes the nonnegative root.
inline bool rational_square_root(const Rat& r, Rat& root) {
    if (sgn(r) < 0) return false;
    mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = rat_from_mpz(rn, rd);
    return true;
}

}  // namespace civhs

#endif
