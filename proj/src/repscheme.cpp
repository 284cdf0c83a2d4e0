#include "azurep/repscheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace azurep::quiver {

namespace {

/// Matrix with polynomial entries, for generic-matrix substitution.
template <class P>
struct PMat {
    std::size_t rows = 0, cols = 0;
    std::vector<P> entries;

    PMat(ExactField field, std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r * c, P(field)) {}
    P& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const P& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

template <class P>
PMat<P> pmul(const PMat<P>& a, const PMat<P>& b) {
    if (a.cols != b.rows) throw InputError("generic matrix shape mismatch");
    PMat<P> out(a.entries.front().field(), a.rows, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < b.cols; ++c) {
            P acc(a.entries.front().field());
            for (std::size_t k = 0; k < a.cols; ++k) acc = acc + a.at(r, k) * b.at(k, c);
            out.at(r, c) = acc;
        }
    return out;
}

template <class P>
PMat<P> pidentity(ExactField field, std::size_t n) {
    PMat<P> out(field, n, n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = P::constant(field.one());
    return out;
}

std::uint64_t pow_or_refuse(std::int64_t q, std::size_t e, std::uint64_t limit,
                            const std::string& what) {
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (acc > limit / static_cast<std::uint64_t>(q))
            throw BudgetError(what + ": needs q^" + std::to_string(e) +
                                  " points, beyond the configured budget",
                              std::pow(static_cast<double>(q), static_cast<double>(e)),
                              static_cast<double>(limit));
        acc *= static_cast<std::uint64_t>(q);
    }
    return acc;
}

/// Odometer over v digits in [0, q), rightmost digit fastest.
struct Odometer {
    std::vector<std::int64_t> digits;
    std::int64_t q;
    explicit Odometer(std::size_t v, std::int64_t q_) : digits(v, 0), q(q_) {}
    bool next() {
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (++digits[i] < q) return true;
            digits[i] = 0;
        }
        return false;
    }
};

std::vector<std::size_t> arrow_var_offsets(const QuiverPresentation& q,
                                           const DimensionVector& alpha, std::size_t* total) {
    std::vector<std::size_t> offsets;
    std::size_t acc = 0;
    for (const auto& a : q.arrows()) {
        offsets.push_back(acc);
        acc += static_cast<std::size_t>(alpha[a.to - 1] * alpha[a.from - 1]);
    }
    *total = acc;
    return offsets;
}

void check_alpha(const QuiverPresentation& q, const DimensionVector& alpha) {
    if (static_cast<int>(alpha.size()) != q.vertex_count())
        throw InputError("dimension vector length does not match the vertex count");
}

void check_shapes(const QuiverPresentation& q, const DimensionVector& alpha, const RepPoint& p) {
    if (p.matrices.size() != q.arrows().size())
        throw InputError("rep point has the wrong number of matrices");
    for (std::size_t a = 0; a < p.matrices.size(); ++a) {
        const Arrow& ar = q.arrows()[a];
        if (p.matrices[a].rows() != static_cast<std::size_t>(alpha[ar.to - 1]) ||
            p.matrices[a].cols() != static_cast<std::size_t>(alpha[ar.from - 1]))
            throw InputError("matrix for arrow " + ar.name + " has the wrong shape");
    }
}

std::vector<std::int64_t> flatten_point(const RepPoint& p) {
    std::vector<std::int64_t> key;
    for (const auto& m : p.matrices)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) key.push_back(m.at(r, c).residue());
    return key;
}

} // namespace

PolynomialSystem rep_equations(const QuiverPresentation& q, const DimensionVector& alpha) {
    check_alpha(q, alpha);
    const ExactField F = q.field();
    std::size_t total = 0;
    const auto offsets = arrow_var_offsets(q, alpha, &total);

    PolynomialSystem sys;
    sys.variables.resize(total);
    std::vector<PMat<Poly>> generic;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const Arrow& ar = q.arrows()[a];
        const std::size_t rows = alpha[ar.to - 1], cols = alpha[ar.from - 1];
        PMat<Poly> m(F, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                const auto v = static_cast<std::int32_t>(offsets[a] + r * cols + c);
                sys.variables[v] = ar.name + "_" + std::to_string(r) + "_" + std::to_string(c);
                m.at(r, c) = Poly::variable(F, v);
            }
        generic.push_back(std::move(m));
    }

    for (const auto& rel : q.relations()) {
        const std::size_t rows = alpha[rel.target - 1], cols = alpha[rel.source - 1];
        PMat<Poly> acc(F, rows, cols);
        for (const auto& term : rel.terms) {
            PMat<Poly> prod = pidentity<Poly>(F, cols);
            for (auto a : term.arrows) prod = pmul(generic[a], prod);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    acc.at(r, c) = acc.at(r, c) + prod.at(r, c).scaled(term.coeff);
        }
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) sys.polynomials.push_back(acc.at(r, c));
    }
    return sys;
}

Mat evaluate_relation(const QuiverPresentation& q, const DimensionVector& alpha,
                      const Relation& rel, const std::vector<Mat>& arrow_matrices) {
    const ExactField F = q.field();
    const std::size_t rows = alpha[rel.target - 1], cols = alpha[rel.source - 1];
    Mat acc(F, rows, cols);
    for (const auto& term : rel.terms) {
        Mat prod = Mat::identity(F, cols);
        for (auto a : term.arrows) prod = arrow_matrices[a] * prod;
        acc = acc + prod * term.coeff;
    }
    return acc;
}

bool is_representation(const QuiverPresentation& q, const DimensionVector& alpha,
                       const RepPoint& p) {
    check_alpha(q, alpha);
    check_shapes(q, alpha, p);
    for (const auto& rel : q.relations())
        if (!evaluate_relation(q, alpha, rel, p.matrices).is_zero()) return false;
    return true;
}

std::vector<RepPoint> enumerate_reps(const QuiverPresentation& q, const DimensionVector& alpha,
                                     ExactField fq, std::uint64_t max_points) {
    check_alpha(q, alpha);
    const std::int64_t p = fq.characteristic();
    if (p == 0) throw InputError("enumeration needs a prime field");
    std::size_t total = 0;
    const auto offsets = arrow_var_offsets(q, alpha, &total);
    pow_or_refuse(p, total, max_points, "enumerate_reps");

    std::vector<RepPoint> found;
    Odometer od(total, p);
    do {
        RepPoint pt;
        for (std::size_t a = 0; a < q.arrows().size(); ++a) {
            const Arrow& ar = q.arrows()[a];
            const std::size_t rows = alpha[ar.to - 1], cols = alpha[ar.from - 1];
            Mat m(fq, rows, cols);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    m.at(r, c) = fq.from_int(od.digits[offsets[a] + r * cols + c]);
            pt.matrices.push_back(std::move(m));
        }
        bool ok = true;
        for (const auto& rel : q.relations())
            if (!evaluate_relation(q, alpha, rel, pt.matrices).is_zero()) { ok = false; break; }
        if (ok) found.push_back(std::move(pt));
    } while (od.next());
    return found;
}

RepPoint gl_action(const QuiverPresentation& q, const DimensionVector& alpha,
                   const std::vector<Mat>& g, const RepPoint& p) {
    check_alpha(q, alpha);
    check_shapes(q, alpha, p);
    if (g.size() != alpha.size()) throw InputError("group tuple has the wrong length");
    std::vector<Mat> inverses;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto inv = inverse(g[i]);
        if (!inv) throw InputError("group tuple entry " + std::to_string(i) + " is singular");
        inverses.push_back(std::move(*inv));
    }
    RepPoint out;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const Arrow& ar = q.arrows()[a];
        out.matrices.push_back(g[ar.to - 1] * p.matrices[a] * inverses[ar.from - 1]);
    }
    for (const auto& rel : q.relations())
        if (!evaluate_relation(q, alpha, rel, out.matrices).is_zero())
            throw InputError("gl_action broke a relation; input was not a representation");
    return out;
}

std::uint64_t gl_order(std::int64_t q, std::int64_t d) {
    // prod_{i<d} (q^d - q^i)
    std::uint64_t order = 1;
    for (std::int64_t i = 0; i < d; ++i) {
        std::uint64_t qd = 1, qi = 1;
        for (std::int64_t k = 0; k < d; ++k) qd *= static_cast<std::uint64_t>(q);
        for (std::int64_t k = 0; k < i; ++k) qi *= static_cast<std::uint64_t>(q);
        const std::uint64_t factor = qd - qi;
        if (order > (std::uint64_t(1) << 62) / factor) throw InputError("gl_order overflow");
        order *= factor;
    }
    return order;
}

std::uint64_t gl_alpha_order(const DimensionVector& alpha, std::int64_t q) {
    std::uint64_t order = 1;
    for (auto d : alpha.d) {
        const std::uint64_t f = gl_order(q, d);
        if (order > (std::uint64_t(1) << 62) / f) throw InputError("gl_alpha_order overflow");
        order *= f;
    }
    return order;
}

std::vector<std::vector<Mat>> enumerate_gl_tuples(const DimensionVector& alpha, ExactField fq,
                                                  std::uint64_t max_group) {
    const std::int64_t p = fq.characteristic();
    if (p == 0) throw InputError("group enumeration needs a prime field");
    const std::uint64_t order = gl_alpha_order(alpha, p);
    if (order > max_group)
        throw BudgetError("enumerate_gl_tuples: |GL(alpha)(F_q)| = " + std::to_string(order) +
                              " exceeds the group budget",
                          static_cast<double>(order), static_cast<double>(max_group));

    std::vector<std::vector<Mat>> per_vertex;
    for (auto d : alpha.d) {
        std::vector<Mat> invertibles;
        Odometer od(static_cast<std::size_t>(d * d), p);
        do {
            Mat m(fq, d, d);
            for (std::int64_t r = 0; r < d; ++r)
                for (std::int64_t c = 0; c < d; ++c) m.at(r, c) = fq.from_int(od.digits[r * d + c]);
            if (is_invertible(m)) invertibles.push_back(std::move(m));
        } while (od.next());
        per_vertex.push_back(std::move(invertibles));
    }

    std::vector<std::vector<Mat>> tuples;
    std::vector<std::size_t> idx(alpha.size(), 0);
    while (true) {
        std::vector<Mat> tuple;
        for (std::size_t i = 0; i < alpha.size(); ++i) tuple.push_back(per_vertex[i][idx[i]]);
        tuples.push_back(std::move(tuple));
        std::size_t i = alpha.size();
        while (i-- > 0) {
            if (++idx[i] < per_vertex[i].size()) break;
            idx[i] = 0;
            if (i == 0) {
                if (tuples.size() != order)
                    throw InputError("group enumeration does not match the order formula");
                return tuples;
            }
        }
    }
}

OrbitAnalysis orbit_analysis(const QuiverPresentation& q, const DimensionVector& alpha,
                             ExactField fq, std::uint64_t max_points, std::uint64_t max_group) {
    OrbitAnalysis out;
    out.points = enumerate_reps(q, alpha, fq, max_points);
    const auto tuples = enumerate_gl_tuples(alpha, fq, max_group);
    out.group_order = tuples.size();
    const std::int64_t p = fq.characteristic();
    out.pgl_group_order = out.group_order / static_cast<std::uint64_t>(p - 1);

    std::map<std::vector<std::int64_t>, std::size_t> index;
    for (std::size_t i = 0; i < out.points.size(); ++i) index[flatten_point(out.points[i])] = i;

    std::vector<bool> seen(out.points.size(), false);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        if (seen[i]) continue;
        Orbit orbit;
        orbit.representative = i;
        for (const auto& g : tuples) {
            const RepPoint moved = gl_action(q, alpha, g, out.points[i]);
            const auto it = index.find(flatten_point(moved));
            if (it == index.end())
                throw InputError("orbit escaped the enumerated point set");
            if (!seen[it->second]) {
                seen[it->second] = true;
                ++orbit.size;
            }
            if (it->second == i) ++orbit.stabilizer_order;
        }
        if (orbit.size * orbit.stabilizer_order != out.group_order)
            throw InputError("orbit-stabilizer identity failed");
        if (orbit.stabilizer_order % static_cast<std::uint64_t>(p - 1) != 0)
            throw InputError("stabilizer does not contain the scalar tuples");
        orbit.pgl_stabilizer_order = orbit.stabilizer_order / static_cast<std::uint64_t>(p - 1);
        out.orbits.push_back(orbit);
    }
    return out;
}

Decomposition decompose_by_idempotents(const QuiverPresentation& q,
                                       const std::vector<Mat>& idempotent_images,
                                       const std::vector<Mat>& arrow_images) {
    const std::size_t k = idempotent_images.size();
    if (static_cast<int>(k) != q.vertex_count())
        throw InputError("need one idempotent image per vertex");
    if (k == 0 || idempotent_images[0].rows() == 0) throw InputError("empty representation");
    const ExactField F = idempotent_images[0].field();
    const std::size_t n = idempotent_images[0].rows();

    Mat sum(F, n, n);
    for (const auto& e : idempotent_images) {
        if (e.rows() != n || e.cols() != n) throw InputError("idempotent images differ in size");
        if (e * e != e) throw InputError("vertex image is not idempotent");
        sum = sum + e;
    }
    if (sum != Mat::identity(F, n)) throw InputError("vertex idempotents do not sum to 1");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && !(idempotent_images[i] * idempotent_images[j]).is_zero())
                throw InputError("vertex idempotents are not orthogonal");
    if (arrow_images.size() != q.arrows().size())
        throw InputError("need one matrix per arrow");
    for (std::size_t a = 0; a < arrow_images.size(); ++a) {
        const Arrow& ar = q.arrows()[a];
        const Mat& m = arrow_images[a];
        if (m.rows() != n || m.cols() != n) throw InputError("arrow images must be n x n");
        if (idempotent_images[ar.to - 1] * m * idempotent_images[ar.from - 1] != m)
            throw InputError("arrow " + ar.name + " is not supported on its vertex blocks");
    }

    // base change: concatenated column-space bases of the idempotent images
    std::vector<std::int64_t> ranks;
    Mat u(F, n, n);
    std::size_t col = 0;
    for (const auto& e : idempotent_images) {
        std::vector<Vec> cols;
        for (std::size_t c = 0; c < n; ++c) cols.push_back(e.col(c));
        const auto basis = span_basis(F, cols, n);
        if (basis.empty()) throw InputError("a vertex idempotent has rank zero");
        ranks.push_back(static_cast<std::int64_t>(basis.size()));
        for (const auto& v : basis) {
            for (std::size_t r = 0; r < n; ++r) u.at(r, col) = v[r];
            ++col;
        }
    }
    if (col != n) throw InputError("idempotent ranks do not sum to the dimension");
    const auto uinv = inverse(u);
    if (!uinv) throw InputError("idempotent image bases are dependent");

    DimensionVector alpha(ranks);
    std::vector<std::size_t> offset(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) offset[i + 1] = offset[i] + ranks[i];

    for (std::size_t i = 0; i < k; ++i) {
        const Mat conj = *uinv * idempotent_images[i] * u;
        Mat standard(F, n, n);
        for (std::size_t r = offset[i]; r < offset[i + 1]; ++r) standard.at(r, r) = F.one();
        if (conj != standard) throw InputError("conjugated idempotent is not standard");
    }

    RepPoint block;
    for (std::size_t a = 0; a < arrow_images.size(); ++a) {
        const Arrow& ar = q.arrows()[a];
        const Mat conj = *uinv * arrow_images[a] * u;
        const std::size_t i = ar.from - 1, j = ar.to - 1;
        Mat b(F, ranks[j], ranks[i]);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const bool inside = r >= offset[j] && r < offset[j + 1] && c >= offset[i] &&
                                    c < offset[i + 1];
                if (inside)
                    b.at(r - offset[j], c - offset[i]) = conj.at(r, c);
                else if (!conj.at(r, c).is_zero())
                    throw InputError("arrow matrix has support outside its block");
            }
        block.matrices.push_back(std::move(b));
    }
    if (!is_representation(q, alpha, block))
        throw InputError("block point does not satisfy the relations");
    return Decomposition{std::move(alpha), std::move(u), std::move(block)};
}

PolynomialSystem RootAlgebraPresentation::abelianized() const {
    PolynomialSystem sys;
    sys.variables = generator_names;
    for (const auto& rel : relations) sys.polynomials.push_back(rel.abelianize());
    return sys;
}

RootAlgebraPresentation root_algebra_presentation(const FreePresentation& r, std::size_t degree) {
    if (degree < 1) throw InputError("root algebra degree must be positive");
    const ExactField F = r.field;
    const std::size_t n = degree;

    RootAlgebraPresentation out;
    out.degree = n;
    std::vector<PMat<NCPoly>> generic;
    for (std::size_t s = 0; s < r.generators.size(); ++s) {
        PMat<NCPoly> z(F, n, n);
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t colu = 0; colu < n; ++colu) {
                const auto v = static_cast<std::int32_t>(s * n * n + row * n + colu);
                out.generator_names.push_back(r.generators[s] + "_" + std::to_string(row) + "_" +
                                              std::to_string(colu));
                z.at(row, colu) = NCPoly::variable(F, v);
            }
        generic.push_back(std::move(z));
    }

    for (const auto& rel : r.relations) {
        PMat<NCPoly> acc(F, n, n);
        for (const auto& [word, coeff] : rel.terms()) {
            PMat<NCPoly> prod = pidentity<NCPoly>(F, n);
            for (auto s : word) prod = pmul(generic[s], prod);
            for (std::size_t row = 0; row < n; ++row)
                for (std::size_t colu = 0; colu < n; ++colu)
                    acc.at(row, colu) = acc.at(row, colu) + prod.at(row, colu).scaled(coeff);
        }
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t colu = 0; colu < n; ++colu) out.relations.push_back(acc.at(row, colu));
    }
    return out;
}

PointCountReport point_count_check(const FreePresentation& r, std::size_t degree, std::int64_t q,
                                   std::uint64_t max_points) {
    const ExactField fq = ExactField::prime_field(q);
    FreePresentation rq = r;
    if (!(r.field == fq)) {
        // re-read the presentation over F_q so both routes share coefficients
        rq.field = fq;
        rq.relations.clear();
        for (const auto& rel : r.relations) {
            NCPoly nc(fq);
            for (const auto& [w, c] : rel.terms())
                nc.add_term(w, c.field().is_rationals() ? fq.from_rational(c.rational())
                                                        : fq.from_int(c.residue()));
            rq.relations.push_back(std::move(nc));
        }
    }
    const QuiverPresentation loop = rq.loop_quiver();
    const DimensionVector alpha({static_cast<std::int64_t>(degree)});

    PointCountReport report;

    // route 1: solutions of the emitted polynomial system
    const PolynomialSystem sys = rep_equations(loop, alpha);
    pow_or_refuse(q, sys.variables.size(), max_points, "point_count_check");
    Odometer od(sys.variables.size(), q);
    do {
        Vec values;
        values.reserve(od.digits.size());
        for (auto d : od.digits) values.push_back(fq.from_int(d));
        bool ok = true;
        for (const auto& p : sys.polynomials)
            if (!p.evaluate(values).is_zero()) { ok = false; break; }
        if (ok) ++report.equation_solutions;
    } while (od.next());

    // route 2: brute force over generator images with matrix arithmetic
    report.morphism_count = enumerate_reps(loop, alpha, fq, max_points).size();
    report.equal = report.equation_solutions == report.morphism_count;
    return report;
}

namespace {

std::vector<std::vector<Vec>> enumerate_algebra_morphisms(const FreePresentation& r,
                                                          const alg::StructureAlgebra& a,
                                                          std::uint64_t max_points) {
    const ExactField F = a.field();
    const std::int64_t q = F.characteristic();
    if (q == 0) throw InputError("morphism counting needs a prime field");
    const std::size_t slots = r.generators.size() * a.dim();
    pow_or_refuse(q, slots, max_points, "count_algebra_morphisms");

    auto eval_word = [&](const NCPoly::Word& w, const std::vector<Vec>& images) {
        Vec acc = a.unit();
        for (auto s : w) acc = a.multiply(images[s], acc);
        return acc;
    };

    std::vector<std::vector<Vec>> morphisms;
    Odometer od(slots, q);
    do {
        std::vector<Vec> images;
        for (std::size_t s = 0; s < r.generators.size(); ++s) {
            Vec x(a.dim(), F.zero());
            for (std::size_t i = 0; i < a.dim(); ++i) x[i] = F.from_int(od.digits[s * a.dim() + i]);
            images.push_back(std::move(x));
        }
        bool ok = true;
        for (const auto& rel : r.relations) {
            Vec acc = zero_vec(F, a.dim());
            for (const auto& [w, c] : rel.terms()) acc = acc + scale(c, eval_word(w, images));
            if (!is_zero(acc)) { ok = false; break; }
        }
        if (ok) morphisms.push_back(std::move(images));
    } while (od.next());
    return morphisms;
}

} // namespace

MorphismCount count_algebra_morphisms(const FreePresentation& r, const alg::StructureAlgebra& a,
                                      std::uint64_t max_points) {
    MorphismCount out;
    const std::int64_t q = a.field().characteristic();
    if (q == 0) throw InputError("morphism counting needs a prime field");
    if (r.relations.empty()) {
        // free algebra: every assignment of generator images is a morphism
        out.by_formula = true;
        out.count = 1;
        for (std::size_t i = 0; i < r.generators.size() * a.dim(); ++i) {
            if (out.count > (std::uint64_t(1) << 62) / static_cast<std::uint64_t>(q))
                throw BudgetError("count_algebra_morphisms: formula count overflows",
                                  std::pow(static_cast<double>(q),
                                           static_cast<double>(r.generators.size() * a.dim())),
                                  static_cast<double>(std::uint64_t(1) << 62));
            out.count *= static_cast<std::uint64_t>(q);
        }
        return out;
    }
    out.count = enumerate_algebra_morphisms(r, a, max_points).size();
    return out;
}

GluingReport sheaf_gluing_check(const FreePresentation& r,
                                const std::vector<std::size_t>& cover_degrees, std::int64_t q,
                                std::uint64_t max_points) {
    const ExactField fq = ExactField::prime_field(q);
    if (cover_degrees.empty()) throw InputError("empty cover");

    GluingReport report;
    std::vector<std::vector<std::vector<Vec>>> families; // per cover: morphism list
    std::vector<alg::StructureAlgebra> covers;
    std::uint64_t candidates = 1;
    for (auto d : cover_degrees) {
        covers.push_back(alg::matrix_algebra(d, fq));
        families.push_back(enumerate_algebra_morphisms(r, covers.back(), max_points));
        const std::uint64_t m = std::max<std::uint64_t>(families.back().size(), 1);
        if (candidates > max_points / m)
            throw BudgetError("sheaf_gluing_check: family scan too large",
                              static_cast<double>(candidates) * static_cast<double>(m),
                              static_cast<double>(max_points));
        candidates *= m;
        report.cover_morphism_counts.push_back(families.back().size());
    }
    report.base_solutions =
        enumerate_algebra_morphisms(r, alg::matrix_algebra(1, fq), max_points).size();

    const std::size_t k = cover_degrees.size();
    auto as_matrix = [&](std::size_t cover, const Vec& x) {
        const std::size_t d = cover_degrees[cover];
        Mat m(fq, d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m.at(i, j) = x[i * d + j];
        return m;
    };

    // scan families (phi_1, ..., phi_k); matched means phi_i(x) (x) 1 equals
    // 1 (x) phi_j(x) in A_i (x) A_j for every ordered pair (i, j)
    std::vector<std::size_t> idx(k, 0);
    if (std::any_of(families.begin(), families.end(), [](const auto& f) { return f.empty(); })) {
        report.equal = report.base_solutions == 0;
        return report;
    }
    while (true) {
        bool matched = true;
        for (std::size_t i = 0; i < k && matched; ++i)
            for (std::size_t j = 0; j < k && matched; ++j)
                for (std::size_t s = 0; s < r.generators.size() && matched; ++s) {
                    const Mat x = as_matrix(i, families[i][idx[i]][s]);
                    const Mat y = as_matrix(j, families[j][idx[j]][s]);
                    const Mat left = kronecker(x, Mat::identity(fq, cover_degrees[j]));
                    const Mat right = kronecker(Mat::identity(fq, cover_degrees[i]), y);
                    if (left != right) matched = false;
                }
        if (matched) ++report.matched_pairs;
        std::size_t i = k;
        bool done = true;
        while (i-- > 0) {
            if (++idx[i] < families[i].size()) { done = false; break; }
            idx[i] = 0;
        }
        if (done) break;
    }
    report.equal = report.matched_pairs == report.base_solutions;
    return report;
}

} // namespace azurep::quiver
