#pragma once

#include <string>
#include <vector>

#include "feedcanon/scalar.hpp"

namespace feedcanon {

/// Dense univariate polynomial over the Gaussian rationals, coefficients
/// in ascending degree order. The zero polynomial has no coefficients and
/// degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const Rat& a) { return Poly({a}); }
    /// x - lambda
    static Poly linear(const Rat& lambda) { return Poly({-lambda, Rat(1)}); }
    static Poly x() { return Poly({Rat(0), Rat(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == Rat(1); }
    bool is_monic() const { return !c_.empty() && c_.back() == Rat(1); }
    const Rat& coeff(int k) const { return c_[k]; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const { return c_.back(); }

    Rat eval(const Rat& x) const;

    Poly monic() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rat& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    friend Poly operator/(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b);

    /// Monic greatest common divisor.
    static Poly gcd(Poly a, Poly b);
    static Poly lcm(const Poly& a, const Poly& b);

    std::string to_string() const;

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

}  // namespace feedcanon
