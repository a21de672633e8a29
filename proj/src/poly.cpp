#include "feedcanon/poly.hpp"

#include <stdexcept>

namespace feedcanon {

Rat Poly::eval(const Rat& x) const {
    Rat acc;
    for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return (Rat(1) / leading()) * *this;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] += a.c_[k];
        if (k < b.c_.size()) c[k] += b.c_[k];
    }
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator-(const Poly& a) {
    std::vector<Rat> c = a.c_;
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
}

Poly operator*(const Rat& s, const Poly& a) {
    std::vector<Rat> c = a.c_;
    for (auto& x : c) x = s * x;
    return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("Poly::divmod: division by zero polynomial");
    std::vector<Rat> rem = a.c_;
    const int db = b.degree();
    std::vector<Rat> quo;
    if (a.degree() >= db) quo.assign(a.degree() - db + 1, Rat());
    const Rat linv = Rat(1) / b.leading();
    for (int k = a.degree(); k >= db; --k) {
        if (rem[k].is_zero()) continue;
        const Rat f = rem[k] * linv;
        quo[k - db] = f;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly operator/(const Poly& a, const Poly& b) {
    Poly q, r;
    Poly::divmod(a, b, q, r);
    return q;
}

Poly operator%(const Poly& a, const Poly& b) {
    Poly q, r;
    Poly::divmod(a, b, q, r);
    return r;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return ((a * b) / gcd(a, b)).monic();
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        if (c_[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + rat_to_token(c_[k]) + ")";
        if (k == 1) s += "*x";
        if (k > 1) s += "*x^" + std::to_string(k);
    }
    return s;
}

}  // namespace feedcanon
