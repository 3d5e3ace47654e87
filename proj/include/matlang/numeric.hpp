#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace matlang {

using Rat = mpq_class;
using FloatComplex = std::complex<double>;

/// Complex number with exact rational real and imaginary parts.
struct RatComplex {
    Rat re;
    Rat im;

    RatComplex() : re(0), im(0) {}
    RatComplex(Rat r) : re(std::move(r)), im(0) {}
    RatComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    RatComplex(long r) : re(r), im(0) {}
    RatComplex(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    RatComplex conj() const { return {re, -im}; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RatComplex operator-(const RatComplex& a) { return {-a.re, -a.im}; }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    /// Exact division; caller must ensure b != 0.
    friend RatComplex operator/(const RatComplex& a, const RatComplex& b) {
        Rat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    RatComplex& operator+=(const RatComplex& o) { re += o.re; im += o.im; return *this; }
    RatComplex& operator-=(const RatComplex& o) { re -= o.re; im -= o.im; return *this; }

    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const RatComplex& a, const RatComplex& b) { return !(a == b); }
    /// Lexicographic order on (re, im); used for canonical containers, not math.
    friend bool operator<(const RatComplex& a, const RatComplex& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    }

    FloatComplex to_float() const { return {re.get_d(), im.get_d()}; }
};

/// Exact conversion from a double (every finite double is rational).
inline Rat rat_from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite double");
    return mpq_class(d);
}

inline RatComplex rat_from_float(const FloatComplex& z) {
    return {rat_from_double(z.real()), rat_from_double(z.imag())};
}

/// Parses "3", "-3/4", "0.85", "-1.5e2" into an exact rational.
std::optional<Rat> parse_rational(std::string_view s);

/// Parses a complex literal: "a", "a+bi", "a-bi", "bi", "i", "-i",
/// with rational or decimal components.
std::optional<RatComplex> parse_complex(std::string_view s);

/// Canonical text form: "a", "a+bi", "a-bi" with exact rationals.
std::string to_string(const RatComplex& z);

/// Round-trippable float formatting ("%.17g"-style, with Im part when nonzero).
std::string to_string(const FloatComplex& z);

}  // namespace matlang
