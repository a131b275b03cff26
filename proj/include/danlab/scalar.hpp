#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "danlab/errors.hpp"

namespace danlab {

using Complex = std::complex<double>;

// Complex number with exact rational real/imaginary parts. All field
// operations are exact; used wherever an identity must hold with zero
// tolerance (surface membership, flow group laws, word inverses).
struct ExactComplex {
    mpq_class re, im;

    ExactComplex() : re(0), im(0) {}
    ExactComplex(long r) : re(r), im(0) {}               // NOLINT(google-explicit-constructor)
    ExactComplex(mpq_class r) : re(std::move(r)), im(0) {}  // NOLINT
    ExactComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    // |.|^2 as an exact rational; decisive modulus comparisons go through this.
    mpq_class abs2() const { return re * re + im * im; }

    Complex to_complex() const { return Complex(re.get_d(), im.get_d()); }

    ExactComplex conj() const { return ExactComplex(re, -im); }

    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex(a.re + b.re, a.im + b.im);
    }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex(a.re - b.re, a.im - b.im);
    }
    friend ExactComplex operator-(const ExactComplex& a) { return ExactComplex(-a.re, -a.im); }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        mpq_class n = b.abs2();
        if (n == 0) throw InternalError("ExactComplex: division by zero");
        return ExactComplex((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
    ExactComplex& operator-=(const ExactComplex& b) { return *this = *this - b; }
    ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }
    ExactComplex& operator/=(const ExactComplex& b) { return *this = *this / b; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Backend traits. The two scalar backends share one algebraic surface so the
// polynomial/automorphism templates instantiate for both.
// ---------------------------------------------------------------------------

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<ExactComplex> {
    static constexpr bool exact = true;
    using Abs2 = mpq_class;
    static const char* backend_name() { return "exact"; }
    static ExactComplex from_int(long v) { return ExactComplex(v); }
    static Abs2 abs2(const ExactComplex& s) { return s.abs2(); }
    static bool is_zero(const ExactComplex& s) { return s.is_zero(); }
    static Complex to_complex(const ExactComplex& s) { return s.to_complex(); }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    using Abs2 = double;
    static const char* backend_name() { return "approx"; }
    static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
    static Abs2 abs2(const Complex& s) { return std::norm(s); }
    static bool is_zero(const Complex& s) { return s.real() == 0.0 && s.imag() == 0.0; }
    static Complex to_complex(const Complex& s) { return s; }
};

inline double abs_value(const ExactComplex& s) { return std::sqrt(s.abs2().get_d()); }
inline double abs_value(const Complex& s) { return std::abs(s); }

// Exact doubles embed losslessly into the rationals.
inline mpq_class rational_from_double(double v) { return mpq_class(v); }
inline ExactComplex exact_from_complex(const Complex& v) {
    return ExactComplex(rational_from_double(v.real()), rational_from_double(v.imag()));
}

// ---------------------------------------------------------------------------
// Text format: "p/q", "p/q+r/s i" (exact), or decimal forms for the
// approximate backend ("1.5", "1.5-2e-3i"). The imaginary unit is a trailing
// 'i'. Plain decimals are parsed exactly into rationals in the exact backend.
// ---------------------------------------------------------------------------

namespace detail {

// Replaces U+2212 (minus sign) with '-' and strips spaces.
inline std::string normalize_number_text(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (size_t i = 0; i < in.size(); ++i) {
        unsigned char c = in[i];
        if (c == 0xE2 && i + 2 < in.size() && (unsigned char)in[i + 1] == 0x88 &&
            (unsigned char)in[i + 2] == 0x92) {
            out.push_back('-');
            i += 2;
        } else if (c != ' ' && c != '\t') {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

// One real literal: [sign] digits [ '/' digits | '.' digits ] [ e[sign]digits ]
// Consumed exactly into a rational.
inline mpq_class parse_real_exact(std::string_view s) {
    if (s.empty()) throw ParseError("empty numeric literal");
    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string intpart, fracpart, exppart;
    std::string denom;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) intpart.push_back(s[i++]);
    if (i < s.size() && s[i] == '/') {
        ++i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) denom.push_back(s[i++]);
        if (denom.empty() || intpart.empty() || i != s.size())
            throw ParseError("bad rational literal: " + std::string(s));
        mpq_class q(intpart + "/" + denom, 10);
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) fracpart.push_back(s[i++]);
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) exppart.push_back(s[i++]);
        while (i < s.size() && std::isdigit((unsigned char)s[i])) exppart.push_back(s[i++]);
        if (exppart.empty() || exppart == "+" || exppart == "-")
            throw ParseError("bad exponent: " + std::string(s));
    }
    if (i != s.size() || (intpart.empty() && fracpart.empty()))
        throw ParseError("bad numeric literal: " + std::string(s));
    mpz_class num((intpart.empty() ? "0" : intpart) + fracpart, 10);
    mpz_class den(1);
    for (size_t k = 0; k < fracpart.size(); ++k) den *= 10;
    long e = exppart.empty() ? 0 : std::stol(exppart);
    for (long k = 0; k < e; ++k) num *= 10;
    for (long k = 0; k > e; --k) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

// Splits "A", "A+Bi", "A-Bi", "Bi" at the top-level sign separating the
// imaginary literal (signs inside exponents do not split).
inline void split_complex_text(const std::string& t, std::string& re_s, std::string& im_s) {
    re_s.clear();
    im_s.clear();
    if (t.empty()) throw ParseError("empty scalar literal");
    if (t.back() == 'i' || t.back() == 'I') {
        std::string body = t.substr(0, t.size() - 1);
        // find the last top-level +/- that starts the imaginary part
        for (size_t i = body.size(); i-- > 1;) {
            char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E' &&
                body[i - 1] != '/') {
                re_s = body.substr(0, i);
                im_s = body.substr(i);
                return;
            }
        }
        im_s = body;  // purely imaginary
        return;
    }
    re_s = t;
}

}  // namespace detail

inline ExactComplex parse_scalar_exact(std::string_view text) {
    std::string t = detail::normalize_number_text(text);
    std::string re_s, im_s;
    detail::split_complex_text(t, re_s, im_s);
    mpq_class re = re_s.empty() ? mpq_class(0) : detail::parse_real_exact(re_s);
    mpq_class im(0);
    if (!im_s.empty()) {
        if (im_s == "+") im = 1;
        else if (im_s == "-") im = -1;
        else im = detail::parse_real_exact(im_s);
    }
    return ExactComplex(re, im);
}

inline Complex parse_scalar_approx(std::string_view text) {
    std::string t = detail::normalize_number_text(text);
    std::string re_s, im_s;
    detail::split_complex_text(t, re_s, im_s);
    auto parse_d = [](const std::string& s) -> double {
        // rationals come through exactly, decimals via strtod
        if (s.find('/') != std::string::npos) return detail::parse_real_exact(s).get_d();
        if (s == "+") return 1.0;
        if (s == "-") return -1.0;
        size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad numeric literal: " + s);
        }
        if (pos != s.size()) throw ParseError("bad numeric literal: " + s);
        return v;
    };
    double re = re_s.empty() ? 0.0 : parse_d(re_s);
    double im = im_s.empty() ? 0.0 : parse_d(im_s);
    return Complex(re, im);
}

template <class S>
S parse_scalar(std::string_view text);
template <>
inline ExactComplex parse_scalar<ExactComplex>(std::string_view text) {
    return parse_scalar_exact(text);
}
template <>
inline Complex parse_scalar<Complex>(std::string_view text) {
    return parse_scalar_approx(text);
}

inline std::string format_rational(const mpq_class& q) { return q.get_str(); }

// shortest round-trip decimal
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_scalar(const ExactComplex& s) {
    if (s.im == 0) return format_rational(s.re);
    std::string im = format_rational(abs(s.im)) + "i";
    std::string sign = s.im < 0 ? "-" : "+";
    if (s.re == 0) return (s.im < 0 ? "-" : "") + im;
    return format_rational(s.re) + sign + im;
}

inline std::string format_scalar(const Complex& s) {
    if (s.imag() == 0.0) return format_double(s.real());
    std::string im = format_double(std::abs(s.imag())) + "i";
    std::string sign = std::signbit(s.imag()) ? "-" : "+";
    if (s.real() == 0.0) return (std::signbit(s.imag()) ? "-" : "") + im;
    return format_double(s.real()) + sign + im;
}

}  // namespace danlab
