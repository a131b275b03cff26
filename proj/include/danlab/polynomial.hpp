#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "danlab/errors.hpp"
#include "danlab/scalar.hpp"

namespace danlab {

// Dense univariate polynomial, coefficients low-to-high. The zero polynomial
// has an empty coefficient vector; otherwise the leading coefficient is
// nonzero (normalized on construction).
template <class S>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(S v) { return Polynomial({std::move(v)}); }
    // the monomial X
    static Polynomial identity() {
        return Polynomial({scalar_traits<S>::from_int(0), scalar_traits<S>::from_int(1)});
    }

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(size_t k) const { return k < c_.size() ? c_[k] : scalar_traits<S>::from_int(0); }

    S eval(const S& z) const {
        if (c_.empty()) return scalar_traits<S>::from_int(0);
        S acc = c_.back();
        for (size_t k = c_.size() - 1; k-- > 0;) acc = acc * z + c_[k];
        return acc;
    }

    // k-th formal derivative; zero when k exceeds the degree.
    Polynomial derivative(int k = 1) const {
        Polynomial r = *this;
        for (int j = 0; j < k && !r.is_zero(); ++j) {
            std::vector<S> d;
            d.reserve(r.c_.size() > 0 ? r.c_.size() - 1 : 0);
            for (size_t m = 1; m < r.c_.size(); ++m)
                d.push_back(r.c_[m] * scalar_traits<S>::from_int(static_cast<long>(m)));
            r = Polynomial(std::move(d));
        }
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), scalar_traits<S>::from_int(0));
        for (size_t k = 0; k < a.c_.size(); ++k) c[k] = c[k] + a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) c[k] = c[k] + b.c_[k];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), scalar_traits<S>::from_int(0));
        for (size_t k = 0; k < a.c_.size(); ++k) c[k] = c[k] + a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) c[k] = c[k] - b.c_[k];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<S> c;
        c.reserve(a.c_.size());
        for (const S& v : a.c_) c.push_back(-v);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<S> c(a.c_.size() + b.c_.size() - 1, scalar_traits<S>::from_int(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const S& s, const Polynomial& a) {
        std::vector<S> c;
        c.reserve(a.c_.size());
        for (const S& v : a.c_) c.push_back(s * v);
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Comma-separated coefficients, low-to-high.
    static Polynomial parse(std::string_view text) {
        std::string t = detail::normalize_number_text(text);
        if (t.empty()) return zero();
        std::vector<S> c;
        size_t start = 0;
        for (size_t i = 0; i <= t.size(); ++i) {
            if (i == t.size() || t[i] == ',') {
                c.push_back(parse_scalar<S>(t.substr(start, i - start)));
                start = i + 1;
            }
        }
        return Polynomial(std::move(c));
    }

    std::string to_text() const {
        if (c_.empty()) return "0";
        std::string out;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (k) out.push_back(',');
            out += format_scalar(c_[k]);
        }
        return out;
    }

    template <class T, class F>
    Polynomial<T> map(F&& f) const {
        std::vector<T> c;
        c.reserve(c_.size());
        for (const S& v : c_) c.push_back(f(v));
        return Polynomial<T>(std::move(c));
    }

  private:
    void normalize() {
        while (!c_.empty() && scalar_traits<S>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<S> c_;
};

inline Polynomial<Complex> to_approx(const Polynomial<ExactComplex>& p) {
    return p.template map<Complex>([](const ExactComplex& v) { return v.to_complex(); });
}
inline Polynomial<ExactComplex> to_exact(const Polynomial<Complex>& p) {
    return p.template map<ExactComplex>([](const Complex& v) { return exact_from_complex(v); });
}

// ---------------------------------------------------------------------------
// Exact Euclidean algorithm. Coefficients form a field, so plain long
// division applies; results are normalized monic to tame coefficient blowup.
// ---------------------------------------------------------------------------

inline std::pair<Polynomial<ExactComplex>, Polynomial<ExactComplex>> poly_divmod(
    const Polynomial<ExactComplex>& a, const Polynomial<ExactComplex>& b) {
    if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
    std::vector<ExactComplex> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {Polynomial<ExactComplex>::zero(), a};
    std::vector<ExactComplex> quot(a.degree() - db + 1, ExactComplex(0));
    const ExactComplex lead = b.coeffs().back();
    for (int k = a.degree(); k >= db; --k) {
        ExactComplex q = rem[k] / lead;
        if (!q.is_zero()) {
            quot[k - db] = q;
            for (int j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeffs()[j];
        }
    }
    return {Polynomial<ExactComplex>(std::move(quot)), Polynomial<ExactComplex>(std::move(rem))};
}

inline Polynomial<ExactComplex> make_monic(const Polynomial<ExactComplex>& p) {
    if (p.is_zero()) return p;
    ExactComplex inv = ExactComplex(1) / p.coeffs().back();
    return inv * p;
}

inline Polynomial<ExactComplex> poly_gcd(Polynomial<ExactComplex> a, Polynomial<ExactComplex> b) {
    a = make_monic(a);
    b = make_monic(b);
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        (void)q;
        a = std::move(b);
        b = make_monic(r);
    }
    return a;
}

// true iff gcd(P, P') is a nonzero constant.
inline bool squarefree_check(const Polynomial<ExactComplex>& p) {
    if (p.is_zero()) throw ZeroPolynomial("squarefree_check of the zero polynomial");
    if (p.degree() == 0) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

inline bool squarefree_check(const Polynomial<Complex>& p) {
    // decided over the exact image of the (binary) coefficients
    return squarefree_check(to_exact(p));
}

}  // namespace danlab
