#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "azurep/errors.hpp"

namespace azurep::divsite {

/// A finitely generated sieve on object n of the divisibility poset, stored
/// as the antichain of divisibility-minimal multiples of n that generate it.
/// A morphism m -> base (base | m) belongs to the sieve iff some generator
/// divides m. The empty generator set is the empty sieve; {base} is the
/// maximal sieve.
struct SieveOnObject {
    std::int64_t base = 1;
    std::vector<std::int64_t> generators; // sorted antichain of multiples of base

    static SieveOnObject maximal(std::int64_t base);
    static SieveOnObject empty(std::int64_t base);

    bool is_maximal() const;
    bool is_empty() const { return generators.empty(); }
    /// Generator cofactors g / base, the submonoid generators.
    std::vector<std::int64_t> cofactors() const;

    bool operator==(const SieveOnObject&) const = default;
    std::string str() const;
};

/// Canonical antichain form of the sieve on `base` generated by `raw`.
SieveOnObject normalize(std::int64_t base, const std::vector<std::int64_t>& raw);

/// Membership of the morphism m -> base.
bool member(const SieveOnObject& s, std::int64_t m);

/// Pullback along nprime -> base: generated by lcm(nprime, g_i).
SieveOnObject pullback(const SieveOnObject& s, std::int64_t nprime);

/// The sieve {g k -> base k}; preserves cofactors.
SieveOnObject multiply(const SieveOnObject& s, std::int64_t k);

/// Intersection of two sieves on the same base (pairwise lcms).
SieveOnObject intersect(const SieveOnObject& s1, const SieveOnObject& s2);

struct TopologySpec {
    enum class Kind { SigmaFinite, MaximalPlus, MinimalMinus };
    Kind kind = Kind::SigmaFinite;
    std::vector<std::int64_t> primes; // for SigmaFinite, sorted distinct primes

    static TopologySpec sigma(std::vector<std::int64_t> primes);
    static TopologySpec plus() { return {Kind::MaximalPlus, {}}; }
    static TopologySpec minus() { return {Kind::MinimalMinus, {}}; }
    std::string str() const;
};

/// A topology given by a per-generator predicate: a sieve covers iff it has a
/// good generator. All TopologySpec topologies are of this shape, and so are
/// the deliberately broken rules used to exercise the axiom checker.
class CoverRule {
public:
    static CoverRule from_topology(const TopologySpec& spec);
    static CoverRule custom(std::string name, std::function<bool(std::int64_t, std::int64_t)> good);

    bool good(std::int64_t base, std::int64_t generator) const;
    bool covers(const SieveOnObject& s) const;
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::function<bool(std::int64_t, std::int64_t)> good_;
};

bool covers(const TopologySpec& topology, const SieveOnObject& s);

/// For distinct prime sets, a sieve covering exactly one of K_sigma, K_sigma'.
std::optional<SieveOnObject> separating_witness(const std::vector<std::int64_t>& sigma,
                                                const std::vector<std::int64_t>& sigma_prime);

struct FragmentBounds {
    std::int64_t max_base = 12;
    std::int64_t max_generator_value = 60;
    std::int64_t max_generator_count = 4;
    std::int64_t max_multiplier = 6;
};

struct AxiomOutcome {
    bool pass = true;
    std::int64_t base = 0;
    SieveOnObject sieve;       // offending sieve (S for maximality/stability, R for transitivity)
    std::int64_t morphism = 0; // nprime for stability
    SieveOnObject via;         // covering sieve whose generator pullbacks all cover (transitivity)
    std::string detail;
};

struct AxiomReport {
    FragmentBounds bounds;
    std::string topology;
    AxiomOutcome maximal;
    AxiomOutcome stability;
    AxiomOutcome transitivity;

    bool all_pass() const { return maximal.pass && stability.pass && transitivity.pass; }
};

/// Exhaustive check of the three Grothendieck-topology axioms on the given
/// finite fragment of the divisibility poset. Never throws for rule failures;
/// a failing axiom carries the lexicographically first counterexample.
AxiomReport verify_axioms(const CoverRule& rule, const FragmentBounds& bounds);
AxiomReport verify_axioms(const TopologySpec& topology, const FragmentBounds& bounds);

/// Interprets matrix morphisms M_n -> M_d, d in targetDegrees, as the sieve
/// on n generated by the degrees (only degrees matter), and tests covering.
bool jk_matrix_cover(const TopologySpec& topology, std::int64_t n,
                     const std::vector<std::int64_t>& target_degrees);

std::int64_t safe_lcm(std::int64_t a, std::int64_t b);

} // namespace azurep::divsite
