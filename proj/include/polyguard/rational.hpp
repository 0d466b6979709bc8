#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>

namespace polyguard {

// Arbitrary-precision rational. GMP keeps values canonical (reduced,
// denominator > 0) as long as they are canonical on construction, so all
// construction goes through the helpers below.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p", or "p/q". Returns false on malformed input.
bool parse_rat(const std::string& token, Rat& out);

inline const mpz_class& num(const Rat& r) { return r.get_num(); }
inline const mpz_class& den(const Rat& r) { return r.get_den(); }

inline int sign(const Rat& r) { return sgn(r); }

// 2^(-k) as an exact rational.
inline Rat pow2(int k) {
    Rat r;
    if (k >= 0) {
        mpz_class n = 1;
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), k);
        r = Rat(n);
    } else {
        mpz_class d = 1;
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), -k);
        r = Rat(1, d);
        r.canonicalize();
    }
    return r;
}

// Decimal rendering with the given number of significant digits; exact when
// the denominator is a product of 2s and 5s and short enough.
std::string rat_to_decimal(const Rat& r, int significant_digits);

std::size_t hash_rat(const Rat& r);

}  // namespace polyguard
