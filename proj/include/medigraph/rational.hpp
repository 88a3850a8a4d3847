#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mg {

// All lattice geometry, LP data and graph coordinates use exact rationals.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_from_string(const std::string& text) {
    // Accepts "n", "n/d" and plain decimal strings such as "-1.25".
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rat q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("unparsable rational: " + text);
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    Rat q;
    if (q.set_str(digits, 10) != 0)
        throw std::invalid_argument("unparsable rational: " + text);
    Rat den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    q /= den;
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool is_even_integer(const Rat& q) {
    return is_integer(q) && mpz_even_p(q.get_num().get_mpz_t());
}

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline double to_double(const Rat& q) { return q.get_d(); }

// Renders q as a finite decimal when the denominator is 2^a*5^b, otherwise
// rounds to 17 significant digits (callers carry the exact value elsewhere).
inline bool has_finite_decimal(const Rat& q) {
    Int d = q.get_den();
    while (mpz_even_p(d.get_mpz_t())) d /= 2;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
    return d == 1;
}

inline std::string rat_to_decimal(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    if (has_finite_decimal(q)) {
        // Scale until integral, then place the point.
        Int num = q.get_num(), den = q.get_den();
        int shift = 0;
        while (den != 1) {
            num *= 10;
            ++shift;
            Int g;
            mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            num /= g;
            den /= g;
        }
        bool neg = num < 0;
        std::string s = (neg ? Int(-num) : num).get_str();
        if ((int)s.size() <= shift) s.insert(0, shift + 1 - s.size(), '0');
        s.insert(s.size() - shift, ".");
        return (neg ? "-" : "") + s;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", q.get_d());
    return buf;
}

inline std::string rat_to_string(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace mg
