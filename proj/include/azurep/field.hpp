#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "azurep/errors.hpp"

namespace azurep {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class Scalar;

/// An exact coefficient field: the rationals (characteristic 0) or a prime
/// field F_p. All arithmetic in the library is exact; there are no floats
/// and no tolerances anywhere.
class ExactField {
public:
    ExactField() = default; // rationals

    static ExactField rationals() { return ExactField{}; }
    static ExactField prime_field(std::int64_t p);

    bool is_rationals() const { return p_ == 0; }
    /// 0 for the rationals, p for F_p.
    std::int64_t characteristic() const { return p_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t v) const;
    Scalar from_rational(const Rational& q) const;
    /// Parses "7", "-3", "2/5".
    Scalar parse(const std::string& text) const;

    std::string str() const;

    bool operator==(const ExactField&) const = default;

private:
    explicit ExactField(std::int64_t p) : p_(p) {}
    std::int64_t p_ = 0;
};

/// A field element. Carries its field so values are self-contained: rationals
/// store an arbitrary-precision fraction, prime-field elements store the
/// canonical residue in [0, p).
class Scalar {
public:
    Scalar() = default; // rational zero

    const ExactField& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Residue in [0, p); only valid over a prime field.
    std::int64_t residue() const;
    /// Only valid over the rationals.
    const Rational& rational() const;

    Scalar operator-() const;
    Scalar inverse() const;
    Scalar pow(std::int64_t e) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    /// Total order (same field only); used for deterministic container keys.
    bool operator<(const Scalar& o) const;

    std::string str() const;

private:
    friend class ExactField;
    ExactField field_;
    std::int64_t res_ = 0; // F_p payload
    Rational rat_;         // rational payload
};

/// Column/element vector with entries in one field.
using Vec = std::vector<Scalar>;

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);
bool is_prime(std::int64_t n);
/// Distinct prime divisors in increasing order.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

} // namespace azurep
