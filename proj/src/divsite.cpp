#include "azurep/divsite.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "azurep/field.hpp"

namespace azurep::divsite {

std::int64_t safe_lcm(std::int64_t a, std::int64_t b) {
    if (a <= 0 || b <= 0) throw InputError("lcm of non-positive integers");
    const std::int64_t g = std::gcd(a, b);
    const std::int64_t q = a / g;
    if (q > std::numeric_limits<std::int64_t>::max() / b) throw InputError("lcm overflow");
    return q * b;
}

SieveOnObject SieveOnObject::maximal(std::int64_t base) { return normalize(base, {base}); }

SieveOnObject SieveOnObject::empty(std::int64_t base) { return normalize(base, {}); }

bool SieveOnObject::is_maximal() const {
    return generators.size() == 1 && generators[0] == base;
}

std::vector<std::int64_t> SieveOnObject::cofactors() const {
    std::vector<std::int64_t> out;
    out.reserve(generators.size());
    for (auto g : generators) out.push_back(g / base);
    return out;
}

std::string SieveOnObject::str() const {
    std::ostringstream os;
    os << "sieve(base=" << base << ", gens={";
    for (std::size_t i = 0; i < generators.size(); ++i)
        os << generators[i] << (i + 1 < generators.size() ? "," : "");
    os << "})";
    return os.str();
}

SieveOnObject normalize(std::int64_t base, const std::vector<std::int64_t>& raw) {
    if (base < 1) throw InputError("sieve base must be positive");
    std::vector<std::int64_t> vals;
    vals.reserve(raw.size());
    for (auto v : raw) {
        if (v < 1) throw InputError("sieve generators must be positive");
        if (v % base != 0)
            throw InputError("generator " + std::to_string(v) + " is not a multiple of base " +
                             std::to_string(base));
        vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    SieveOnObject s;
    s.base = base;
    for (auto v : vals) {
        bool dominated = false;
        for (auto g : s.generators)
            if (v % g == 0) { dominated = true; break; }
        if (!dominated) s.generators.push_back(v); // vals ascending, so kept values are minimal
    }
    return s;
}

bool member(const SieveOnObject& s, std::int64_t m) {
    if (m < 1 || m % s.base != 0)
        throw InputError(std::to_string(m) + " -> " + std::to_string(s.base) +
                         " is not a morphism of the divisibility poset");
    for (auto g : s.generators)
        if (m % g == 0) return true;
    return false;
}

SieveOnObject pullback(const SieveOnObject& s, std::int64_t nprime) {
    if (nprime < 1 || nprime % s.base != 0)
        throw InputError("pullback target " + std::to_string(nprime) +
                         " is not a multiple of base " + std::to_string(s.base));
    std::vector<std::int64_t> gens;
    gens.reserve(s.generators.size());
    for (auto g : s.generators) gens.push_back(safe_lcm(nprime, g));
    return normalize(nprime, gens);
}

SieveOnObject multiply(const SieveOnObject& s, std::int64_t k) {
    if (k < 1) throw InputError("multiplier must be positive");
    std::vector<std::int64_t> gens;
    gens.reserve(s.generators.size());
    for (auto g : s.generators) {
        if (g > std::numeric_limits<std::int64_t>::max() / k) throw InputError("multiply overflow");
        gens.push_back(g * k);
    }
    return normalize(s.base * k, gens);
}

SieveOnObject intersect(const SieveOnObject& s1, const SieveOnObject& s2) {
    if (s1.base != s2.base) throw InputError("intersect: sieves live on different objects");
    std::vector<std::int64_t> gens;
    gens.reserve(s1.generators.size() * s2.generators.size());
    for (auto a : s1.generators)
        for (auto b : s2.generators) gens.push_back(safe_lcm(a, b));
    return normalize(s1.base, gens);
}

TopologySpec TopologySpec::sigma(std::vector<std::int64_t> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto p : primes)
        if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    return {Kind::SigmaFinite, std::move(primes)};
}

std::string TopologySpec::str() const {
    switch (kind) {
    case Kind::MaximalPlus: return "K_+";
    case Kind::MinimalMinus: return "K_-";
    case Kind::SigmaFinite: {
        std::ostringstream os;
        os << "K_{";
        for (std::size_t i = 0; i < primes.size(); ++i)
            os << primes[i] << (i + 1 < primes.size() ? "," : "");
        os << "}";
        return os.str();
    }
    }
    return "?";
}

namespace {

bool support_in(std::int64_t n, const std::vector<std::int64_t>& primes) {
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            if (!std::binary_search(primes.begin(), primes.end(), d)) return false;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1 && !std::binary_search(primes.begin(), primes.end(), n)) return false;
    return true;
}

} // namespace

CoverRule CoverRule::from_topology(const TopologySpec& spec) {
    CoverRule rule;
    rule.name_ = spec.str();
    switch (spec.kind) {
    case TopologySpec::Kind::MaximalPlus:
        rule.good_ = [](std::int64_t, std::int64_t) { return true; };
        break;
    case TopologySpec::Kind::MinimalMinus:
        rule.good_ = [](std::int64_t base, std::int64_t g) { return g == base; };
        break;
    case TopologySpec::Kind::SigmaFinite:
        rule.good_ = [primes = spec.primes](std::int64_t base, std::int64_t g) {
            return support_in(g / base, primes);
        };
        break;
    }
    return rule;
}

CoverRule CoverRule::custom(std::string name, std::function<bool(std::int64_t, std::int64_t)> good) {
    CoverRule rule;
    rule.name_ = std::move(name);
    rule.good_ = std::move(good);
    return rule;
}

bool CoverRule::good(std::int64_t base, std::int64_t generator) const {
    return good_(base, generator);
}

bool CoverRule::covers(const SieveOnObject& s) const {
    for (auto g : s.generators)
        if (good_(s.base, g)) return true;
    return false;
}

bool covers(const TopologySpec& topology, const SieveOnObject& s) {
    return CoverRule::from_topology(topology).covers(s);
}

std::optional<SieveOnObject> separating_witness(const std::vector<std::int64_t>& sigma,
                                                const std::vector<std::int64_t>& sigma_prime) {
    std::set<std::int64_t> a(sigma.begin(), sigma.end());
    std::set<std::int64_t> b(sigma_prime.begin(), sigma_prime.end());
    std::vector<std::int64_t> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    if (diff.empty()) return std::nullopt;
    return normalize(1, {diff.front()});
}

namespace {

/// Enumerates antichains (ascending generator lists) over `values` with at
/// most max_count elements, in lexicographic order. Returns false to stop.
template <class Fn>
bool for_each_antichain(const std::vector<std::int64_t>& values, std::int64_t max_count,
                        std::vector<std::int64_t>& current, std::size_t start, Fn&& fn) {
    if (!current.empty()) {
        if (!fn(current)) return false;
    }
    if (static_cast<std::int64_t>(current.size()) == max_count) return true;
    for (std::size_t i = start; i < values.size(); ++i) {
        const std::int64_t v = values[i];
        bool comparable = false;
        for (auto g : current)
            if (v % g == 0) { comparable = true; break; } // values ascending: only g | v possible
        if (comparable) continue;
        current.push_back(v);
        if (!for_each_antichain(values, max_count, current, i + 1, fn)) return false;
        current.pop_back();
    }
    return true;
}

} // namespace

AxiomReport verify_axioms(const CoverRule& rule, const FragmentBounds& bounds) {
    if (bounds.max_base < 1 || bounds.max_generator_value < 1 || bounds.max_generator_count < 1 ||
        bounds.max_multiplier < 1)
        throw InputError("fragment bounds must be positive");

    AxiomReport report;
    report.bounds = bounds;
    report.topology = rule.name();

    for (std::int64_t base = 1; base <= bounds.max_base; ++base) {
        // axiom (i): the maximal sieve covers
        if (report.maximal.pass && !rule.covers(SieveOnObject::maximal(base))) {
            report.maximal = {false, base, SieveOnObject::maximal(base), 0, {},
                              "maximal sieve does not cover"};
        }

        std::vector<std::int64_t> values;
        for (std::int64_t v = base; v <= bounds.max_generator_value; v += base) values.push_back(v);
        if (values.empty()) continue;

        // good generators g of this base: pullback premises reduce to them
        std::vector<std::int64_t> good_values;
        for (auto v : values)
            if (rule.good(base, v)) good_values.push_back(v);

        std::vector<std::int64_t> current;
        for_each_antichain(values, bounds.max_generator_count, current, 0,
            [&](const std::vector<std::int64_t>& gens) {
                if (!report.stability.pass && !report.transitivity.pass) return false;
                SieveOnObject s;
                s.base = base;
                s.generators = gens; // antichain by construction
                const bool s_covers = rule.covers(s);

                if (s_covers && report.stability.pass) {
                    // axiom (ii): every pullback of a covering sieve covers
                    for (std::int64_t k = 2; k <= bounds.max_multiplier; ++k) {
                        const SieveOnObject pb = pullback(s, base * k);
                        if (!rule.covers(pb)) {
                            report.stability = {false, base, s, base * k, {},
                                                "pullback along " + std::to_string(base * k) +
                                                    " stops covering"};
                            break;
                        }
                    }
                }

                if (!s_covers && report.transitivity.pass) {
                    // axiom (iii): a covering sieve S with every generator pullback of R
                    // covering forces R to cover. Singleton S = {g} suffices: any
                    // covering S inside the good-pullback set contains a good g.
                    for (auto g : good_values) {
                        if (rule.covers(pullback(s, g))) {
                            report.transitivity = {false, base, s, 0, normalize(base, {g}),
                                                   "pullbacks along the covering sieve cover but "
                                                   "the sieve itself does not"};
                            break;
                        }
                    }
                }
                return true;
            });
    }
    return report;
}

AxiomReport verify_axioms(const TopologySpec& topology, const FragmentBounds& bounds) {
    return verify_axioms(CoverRule::from_topology(topology), bounds);
}

bool jk_matrix_cover(const TopologySpec& topology, std::int64_t n,
                     const std::vector<std::int64_t>& target_degrees) {
    if (n < 1) throw InputError("matrix degree must be positive");
    for (auto d : target_degrees)
        if (d < 1 || d % n != 0)
            throw InputError("target degree " + std::to_string(d) + " is not a multiple of " +
                             std::to_string(n));
    return covers(topology, normalize(n, target_degrees));
}

} // namespace azurep::divsite
