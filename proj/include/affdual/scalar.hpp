#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace affdual {

// Exact rationals. mpq_class keeps values canonicalized after every
// arithmetic operation, so structural equality is value equality.
using Scalar = mpq_class;
using BigInt = mpz_class;

inline Scalar make_scalar(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_scalar: zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline Scalar parse_scalar(const std::string& text) {
    Scalar q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("parse_scalar: bad rational '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_value(const BigInt& z) {
    // low limb and sign are enough to spread our small values
    std::size_t h = mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) : 0;
    return hash_combine(h, static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1));
}

inline std::size_t hash_value(const Scalar& q) {
    return hash_combine(hash_value(BigInt(q.get_num())), hash_value(BigInt(q.get_den())));
}

inline bool is_integer(const Scalar& q) { return q.get_den() == 1; }

inline int sign(const Scalar& q) { return sgn(q); }

}  // namespace affdual
