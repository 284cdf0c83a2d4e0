#include "azurep/field.hpp"

#include <numeric>

namespace azurep {

namespace {

std::int64_t normalize_mod(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

void require_same_field(const Scalar& a, const Scalar& b) {
    if (!(a.field() == b.field()))
        throw InputError("scalar arithmetic across different fields");
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    if (n < 1) throw InputError("prime_divisors: argument must be positive");
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    a = normalize_mod(a, p);
    if (a == 0) throw InputError("mod_inverse: zero is not invertible");
    // extended Euclid
    std::int64_t old_r = a, r = p;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    if (old_r != 1) throw InputError("mod_inverse: argument shares a factor with the modulus");
    return normalize_mod(old_s, p);
}

ExactField ExactField::prime_field(std::int64_t p) {
    if (!is_prime(p)) throw InputError("prime_field: " + std::to_string(p) + " is not prime");
    return ExactField{p};
}

Scalar ExactField::zero() const { return from_int(0); }
Scalar ExactField::one() const { return from_int(1); }

Scalar ExactField::from_int(std::int64_t v) const {
    Scalar s;
    s.field_ = *this;
    if (p_ == 0)
        s.rat_ = v;
    else
        s.res_ = normalize_mod(v, p_);
    return s;
}

Scalar ExactField::from_rational(const Rational& q) const {
    Scalar s;
    s.field_ = *this;
    if (p_ == 0) {
        s.rat_ = q;
        return s;
    }
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    const std::int64_t n = static_cast<std::int64_t>(num % p_);
    const std::int64_t d = static_cast<std::int64_t>(den % p_);
    if (normalize_mod(d, p_) == 0)
        throw InputError("from_rational: denominator vanishes in F_" + std::to_string(p_));
    s.res_ = normalize_mod(n, p_) * mod_inverse(d, p_) % p_;
    return s;
}

Scalar ExactField::parse(const std::string& text) const {
    try {
        return from_rational(Rational(text));
    } catch (const std::runtime_error&) {
        throw InputError("cannot parse scalar '" + text + "'");
    }
}

std::string ExactField::str() const {
    return p_ == 0 ? std::string("Q") : "F_" + std::to_string(p_);
}

bool Scalar::is_zero() const {
    return field_.is_rationals() ? rat_.is_zero() : res_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rationals() ? rat_ == 1 : res_ == 1;
}

std::int64_t Scalar::residue() const {
    if (field_.is_rationals()) throw InputError("residue() called on a rational scalar");
    return res_;
}

const Rational& Scalar::rational() const {
    if (!field_.is_rationals()) throw InputError("rational() called on a prime-field scalar");
    return rat_;
}

Scalar Scalar::operator-() const {
    if (field_.is_rationals()) return field_.from_rational(-rat_);
    return field_.from_int(-res_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw InputError("inverse of zero");
    if (field_.is_rationals()) return field_.from_rational(Rational(1) / rat_);
    return field_.from_int(mod_inverse(res_, field_.characteristic()));
}

Scalar Scalar::pow(std::int64_t e) const {
    Scalar base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    Scalar acc = field_.one();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_field(a, b);
    if (a.field_.is_rationals()) return a.field_.from_rational(a.rat_ + b.rat_);
    return a.field_.from_int(a.res_ + b.res_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    require_same_field(a, b);
    if (a.field_.is_rationals()) return a.field_.from_rational(a.rat_ - b.rat_);
    return a.field_.from_int(a.res_ - b.res_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_field(a, b);
    if (a.field_.is_rationals()) return a.field_.from_rational(a.rat_ * b.rat_);
    return a.field_.from_int(a.res_ * b.res_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    return a * b.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    require_same_field(*this, o);
    return field_.is_rationals() ? rat_ == o.rat_ : res_ == o.res_;
}

bool Scalar::operator<(const Scalar& o) const {
    require_same_field(*this, o);
    return field_.is_rationals() ? rat_ < o.rat_ : res_ < o.res_;
}

std::string Scalar::str() const {
    if (!field_.is_rationals()) return std::to_string(res_);
    return rat_.str();
}

} // namespace azurep
