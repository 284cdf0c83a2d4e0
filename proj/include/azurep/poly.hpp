#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "azurep/field.hpp"

namespace azurep::quiver {

/// Commutative monomial: sorted (variable, exponent) pairs, exponents >= 1.
struct Monomial {
    std::vector<std::pair<std::int32_t, std::int32_t>> factors;

    static Monomial one() { return {}; }
    static Monomial var(std::int32_t v) { return {{{v, 1}}}; }
    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const { return factors < o.factors; }
};

/// Commutative polynomial with exact coefficients, kept in canonical form
/// (sorted terms, no zero coefficients).
class Poly {
public:
    explicit Poly(ExactField field) : field_(field) {}
    static Poly constant(const Scalar& c);
    static Poly variable(ExactField field, std::int32_t v);

    const ExactField& field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Scalar& c);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Scalar& c) const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator<(const Poly& o) const { return terms_ < o.terms_; }

    Scalar evaluate(const Vec& values) const;
    /// Plain-text form in the documented grammar; names[v] is variable v.
    std::string str(const std::vector<std::string>& names) const;

private:
    ExactField field_;
    std::map<Monomial, Scalar> terms_;
};

/// Polynomial in noncommuting variables; keys are words (variable sequences
/// in multiplication order).
class NCPoly {
public:
    using Word = std::vector<std::int32_t>;

    explicit NCPoly(ExactField field) : field_(field) {}
    static NCPoly constant(const Scalar& c);
    static NCPoly variable(ExactField field, std::int32_t v);
    static NCPoly word(ExactField field, Word w, const Scalar& c);

    const ExactField& field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, Scalar>& terms() const { return terms_; }

    void add_term(const Word& w, const Scalar& c);
    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly operator*(const NCPoly& o) const; // word concatenation
    NCPoly scaled(const Scalar& c) const;
    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }

    /// Image under the abelianization map (words become monomials).
    Poly abelianize() const;
    std::string str(const std::vector<std::string>& names) const;

private:
    ExactField field_;
    std::map<Word, Scalar> terms_;
};

/// Emitted equations of a representation scheme: variables in a fixed order
/// plus canonical-form polynomials.
struct PolynomialSystem {
    std::vector<std::string> variables;
    std::vector<Poly> polynomials;

    /// Set equality after dropping zero polynomials and sorting canonically.
    bool same_polynomial_set(const PolynomialSystem& o) const;
};

} // namespace azurep::quiver
