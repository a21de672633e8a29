#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace feedcanon {

/// Exact scalar: a Gaussian rational re + im*i with arbitrary-precision
/// rational components. All arithmetic is exact; division by a nonzero
/// value is always representable.
struct Rat {
    mpq_class re;
    mpq_class im;

    Rat() : re(0), im(0) {}
    Rat(long r) : re(r), im(0) {}                       // NOLINT(google-explicit-constructor)
    Rat(mpq_class r) : re(std::move(r)), im(0) {}       // NOLINT(google-explicit-constructor)
    Rat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Rat conj() const { return Rat(re, -im); }

    /// |z|^2 as an exact rational.
    mpq_class abs2() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.re + b.re, a.im + b.im); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.re - b.re, a.im - b.im); }
    friend Rat operator-(const Rat& a) { return Rat(-a.re, -a.im); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        mpq_class d = b.abs2();
        if (d == 0) throw std::domain_error("Rat: division by zero");
        return Rat((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    Rat& operator+=(const Rat& o) { re += o.re; im += o.im; return *this; }
    Rat& operator-=(const Rat& o) { re -= o.re; im -= o.im; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
};

/// Floating scalar used by the numeric routines.
using Cplx = std::complex<double>;

/// Parses a rational component string "p" or "p/q" (no whitespace).
mpq_class parse_rational(const std::string& s);

/// Canonical "p" / "p/q" form of a rational.
std::string rational_to_string(const mpq_class& q);

/// One-token form of a Gaussian rational: "re" when the imaginary part is
/// zero, otherwise "re+imi" / "re-imi" (e.g. "3/2-1/4i"). Used for
/// polynomial coefficients in JSON.
std::string rat_to_token(const Rat& z);
Rat parse_rat_token(const std::string& s);

// Scalar glue shared by the matrix template.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(); }
    static Rat one() { return Rat(1); }
    static bool is_zero(const Rat& x) { return x.is_zero(); }
    static double abs2(const Rat& x) { return x.abs2().get_d(); }
    static Rat conj(const Rat& x) { return x.conj(); }
};

template <>
struct ScalarOps<Cplx> {
    static constexpr bool exact = false;
    static Cplx zero() { return {0.0, 0.0}; }
    static Cplx one() { return {1.0, 0.0}; }
    static bool is_zero(const Cplx& x) { return x == Cplx(0.0, 0.0); }
    static double abs2(const Cplx& x) { return std::norm(x); }
    static Cplx conj(const Cplx& x) { return std::conj(x); }
};

}  // namespace feedcanon
