#include "azurep/poly.hpp"

#include <algorithm>
#include <sstream>

namespace azurep::quiver {

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out;
    auto a = factors.begin(), b = o.factors.begin();
    while (a != factors.end() || b != o.factors.end()) {
        if (b == o.factors.end() || (a != factors.end() && a->first < b->first))
            out.factors.push_back(*a++);
        else if (a == factors.end() || b->first < a->first)
            out.factors.push_back(*b++);
        else {
            out.factors.push_back({a->first, a->second + b->second});
            ++a, ++b;
        }
    }
    return out;
}

Poly Poly::constant(const Scalar& c) {
    Poly p(c.field());
    p.add_term(Monomial::one(), c);
    return p;
}

Poly Poly::variable(ExactField field, std::int32_t v) {
    Poly p(field);
    p.add_term(Monomial::var(v), field.one());
    return p;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out(field_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

Poly Poly::scaled(const Scalar& c) const {
    Poly out(field_);
    for (const auto& [m, v] : terms_) out.add_term(m, v * c);
    return out;
}

Scalar Poly::evaluate(const Vec& values) const {
    Scalar acc = field_.zero();
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (const auto& [v, e] : m.factors) {
            if (static_cast<std::size_t>(v) >= values.size())
                throw InputError("polynomial evaluation: missing variable value");
            t *= values[v].pow(e);
        }
        acc += t;
    }
    return acc;
}

namespace {

std::string coefficient_prefix(const Scalar& c, bool leading, bool lonely) {
    // renders "c*" handling sign placement; lonely means no variables follow
    const bool rational = c.field().is_rationals();
    std::string body = c.str();
    bool negative = false;
    if (rational && body.size() && body[0] == '-') {
        negative = true;
        body = body.substr(1);
    }
    std::string out = leading ? (negative ? "-" : "") : (negative ? " - " : " + ");
    if (lonely) return out + body;
    if (body == "1") return out;
    return out + body + "*";
}

} // namespace

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool leading = true;
    for (const auto& [m, c] : terms_) {
        os << coefficient_prefix(c, leading, m.factors.empty());
        bool first = true;
        for (const auto& [v, e] : m.factors) {
            if (!first) os << "*";
            os << names.at(v);
            if (e > 1) os << "^" << e;
            first = false;
        }
        leading = false;
    }
    return os.str();
}

NCPoly NCPoly::constant(const Scalar& c) {
    NCPoly p(c.field());
    p.add_term({}, c);
    return p;
}

NCPoly NCPoly::variable(ExactField field, std::int32_t v) {
    NCPoly p(field);
    p.add_term({v}, field.one());
    return p;
}

NCPoly NCPoly::word(ExactField field, Word w, const Scalar& c) {
    NCPoly p(field);
    p.add_term(w, c);
    return p;
}

void NCPoly::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly out = *this;
    for (const auto& [w, c] : o.terms_) out.add_term(w, c);
    return out;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
    NCPoly out = *this;
    for (const auto& [w, c] : o.terms_) out.add_term(w, -c);
    return out;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
    NCPoly out(field_);
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            out.add_term(w, c1 * c2);
        }
    return out;
}

NCPoly NCPoly::scaled(const Scalar& c) const {
    NCPoly out(field_);
    for (const auto& [w, v] : terms_) out.add_term(w, v * c);
    return out;
}

Poly NCPoly::abelianize() const {
    Poly out(field_);
    for (const auto& [w, c] : terms_) {
        Monomial m;
        Word sorted = w;
        std::sort(sorted.begin(), sorted.end());
        for (auto v : sorted) {
            if (!m.factors.empty() && m.factors.back().first == v)
                ++m.factors.back().second;
            else
                m.factors.push_back({v, 1});
        }
        out.add_term(m, c);
    }
    return out;
}

std::string NCPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool leading = true;
    for (const auto& [w, c] : terms_) {
        os << coefficient_prefix(c, leading, w.empty());
        bool first = true;
        for (auto v : w) {
            if (!first) os << "*";
            os << names.at(v);
            first = false;
        }
        leading = false;
    }
    return os.str();
}

bool PolynomialSystem::same_polynomial_set(const PolynomialSystem& o) const {
    std::vector<Poly> a, b;
    for (const auto& p : polynomials)
        if (!p.is_zero()) a.push_back(p);
    for (const auto& p : o.polynomials)
        if (!p.is_zero()) b.push_back(p);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

} // namespace azurep::quiver
