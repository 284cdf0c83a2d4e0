#include <cmath>
#include <random>

#include "azurep/algebra.hpp"

namespace azurep::alg {

namespace {

Vec tensor_coords(const Vec& x, const Vec& y) {
    if (x.empty() || y.empty()) throw InputError("tensor of empty vectors");
    Vec out(x.size() * y.size(), x[0].field().zero());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero()) out[i * y.size() + j] = x[i] * y[j];
    }
    return out;
}

} // namespace

Vec skolem_noether(const AlgebraMorphism& f, const AlgebraMorphism& g,
                   const SkolemNoetherOptions& options) {
    if (f.source.dim() != g.source.dim() || f.target.dim() != g.target.dim())
        throw InputError("skolem_noether: mismatched morphism shapes");
    const StructureAlgebra& b = f.target;
    const ExactField F = b.field();
    const std::size_t d = b.dim();

    // intertwiner space { u : u f(x) = g(x) u for all basis x }
    Mat sys(F, f.source.dim() * d, d);
    for (std::size_t x = 0; x < f.source.dim(); ++x) {
        const Mat comm = b.right_mult(f.apply(f.source.basis_element(x))) -
                         b.left_mult(g.apply(g.source.basis_element(x)));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) sys.at(x * d + r, c) = comm.at(r, c);
    }
    const std::vector<Vec> space = null_space(sys);
    if (space.empty())
        throw PreconditionError("skolem_noether: intertwiner space is zero; "
                                "inputs are not both unital embeddings");

    auto accept = [&](const Vec& u) -> std::optional<Vec> {
        if (!b.is_invertible_element(u)) return std::nullopt;
        const Vec uinv = *b.invert_element(u);
        for (std::size_t x = 0; x < f.source.dim(); ++x) {
            const Vec bx = f.source.basis_element(x);
            if (b.multiply(b.multiply(u, f.apply(bx)), uinv) != g.apply(bx)) return std::nullopt;
        }
        return u;
    };

    for (const auto& w : space)
        if (auto u = accept(w)) return *u;

    const std::size_t t = space.size();
    const std::int64_t p = F.characteristic();
    if (p > 0 && t <= 3 && std::pow(static_cast<double>(p), static_cast<double>(t)) <= 4096.0) {
        // deterministic exhaustion of the small coefficient space
        std::vector<std::int64_t> coeff(t, 0);
        while (true) {
            std::size_t i = 0;
            while (i < t && coeff[i] == p - 1) coeff[i++] = 0;
            if (i == t) break;
            ++coeff[i];
            Vec u = zero_vec(F, d);
            for (std::size_t s = 0; s < t; ++s)
                if (coeff[s] != 0) u = u + scale(F.from_int(coeff[s]), space[s]);
            if (auto ok = accept(u)) return *ok;
        }
        throw RetryError("skolem_noether: no invertible intertwiner over this field; "
                         "extend the field");
    }

    std::mt19937_64 rng(options.seed);
    for (int attempt = 0; attempt < options.attempts; ++attempt) {
        Vec u = zero_vec(F, d);
        for (const auto& w : space) {
            std::int64_t c;
            if (p > 0)
                c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
            else
                c = static_cast<std::int64_t>(rng() % 7) - 3;
            if (c != 0) u = u + scale(F.from_int(c), w);
        }
        if (auto ok = accept(u)) return *ok;
    }
    throw RetryError("skolem_noether: attempt budget exhausted; raise attempts or "
                     "extend the field");
}

RelativeTensor relative_tensor(const AlgebraMorphism& f1, const AlgebraMorphism& f2) {
    if (!(f1.source == f2.source))
        throw InputError("relative_tensor: the two morphisms have different sources");
    const StructureAlgebra& a = f1.source;
    const StructureAlgebra& b1 = f1.target;
    const StructureAlgebra& b2 = f2.target;
    const ExactField F = a.field();
    const std::size_t d1 = b1.dim(), d2 = b2.dim(), da = a.dim();
    const std::size_t amb = d1 * d2;

    // span of f1(x)b (x) c - b (x) f2(x)c over basis triples (x, b, c)
    std::vector<Vec> relations;
    relations.reserve(da * d1 * d2);
    for (std::size_t x = 0; x < da; ++x) {
        const Mat l1 = b1.left_mult(f1.apply(a.basis_element(x)));
        const Mat l2 = b2.left_mult(f2.apply(a.basis_element(x)));
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d2; ++j) {
                Vec v = zero_vec(F, amb);
                for (std::size_t r = 0; r < d1; ++r)
                    if (!l1.at(r, i).is_zero()) v[r * d2 + j] += l1.at(r, i);
                for (std::size_t s = 0; s < d2; ++s)
                    if (!l2.at(s, j).is_zero()) v[i * d2 + s] -= l2.at(s, j);
                if (!is_zero(v)) relations.push_back(std::move(v));
            }
    }
    Mat rel = Mat::from_rows(F, relations, amb);
    std::vector<std::size_t> pivots;
    const std::size_t rho = rref(rel, &pivots);
    std::vector<bool> is_pivot(amb, false);
    for (auto c : pivots) is_pivot[c] = true;
    const std::size_t qdim = amb - rho;

    auto quotient_coords = [&](Vec v) {
        for (std::size_t r = 0; r < rho; ++r) {
            const Scalar& coeff = v[pivots[r]];
            if (coeff.is_zero()) continue;
            const Scalar f = coeff;
            for (std::size_t c = pivots[r]; c < amb; ++c)
                if (!rel.at(r, c).is_zero()) v[c] -= f * rel.at(r, c);
        }
        Vec q;
        q.reserve(qdim);
        for (std::size_t c = 0; c < amb; ++c)
            if (!is_pivot[c]) q.push_back(v[c]);
        return q;
    };

    // model basis u_r (x) z_s with z_s a basis of the centralizer of f2(A)
    std::vector<Vec> images;
    for (std::size_t x = 0; x < da; ++x) images.push_back(f2.apply(a.basis_element(x)));
    const std::vector<Vec> zbasis = centralizer(b2, images);
    const std::size_t dz = zbasis.size();
    if (d1 * dz != qdim)
        throw PreconditionError("relative_tensor: quotient dimension " + std::to_string(qdim) +
                                " does not match the centralizer model " + std::to_string(d1 * dz));

    const StructureAlgebra zalg = subalgebra_from_basis(b2, zbasis, b2.unit());
    StructureAlgebra model = full_tensor(b1, zalg);

    Mat n(F, qdim, d1 * dz);
    for (std::size_t r = 0; r < d1; ++r)
        for (std::size_t s = 0; s < dz; ++s) {
            const Vec q = quotient_coords(tensor_coords(b1.basis_element(r), zbasis[s]));
            for (std::size_t row = 0; row < qdim; ++row) n.at(row, r * dz + s) = q[row];
        }
    const auto ninv = inverse(n);
    if (!ninv)
        throw PreconditionError("relative_tensor: model basis does not span the quotient");

    auto to_model = [&](const Vec& ambient) { return *ninv * quotient_coords(ambient); };

    Mat lmat(F, d1 * dz, d1);
    for (std::size_t r = 0; r < d1; ++r) {
        const Vec m = to_model(tensor_coords(b1.basis_element(r), b2.unit()));
        for (std::size_t row = 0; row < d1 * dz; ++row) lmat.at(row, r) = m[row];
    }
    Mat rmat(F, d1 * dz, d2);
    for (std::size_t s = 0; s < d2; ++s) {
        const Vec m = to_model(tensor_coords(b1.unit(), b2.basis_element(s)));
        for (std::size_t row = 0; row < d1 * dz; ++row) rmat.at(row, s) = m[row];
    }
    // the morphism constructors verify that both inclusions are unital and
    // multiplicative for the transported product, which pins the model down
    AlgebraMorphism left(b1, model, std::move(lmat));
    AlgebraMorphism right(b2, model, std::move(rmat));
    return RelativeTensor{std::move(model), std::move(left), std::move(right), zbasis};
}

AmitsurReport amitsur_exactness(const AlgebraMorphism& f) {
    if (!f.is_injective())
        throw PreconditionError("amitsur_exactness: morphism is not injective, "
                                "faithful flatness hypothesis fails");
    const RelativeTensor rt = relative_tensor(f, f);
    const ExactField F = f.source.field();
    const std::size_t db = f.target.dim();

    const Mat diff = rt.left_inclusion.matrix - rt.right_inclusion.matrix;
    const std::vector<Vec> equalizer = null_space(diff);
    std::vector<Vec> image;
    for (std::size_t c = 0; c < f.source.dim(); ++c) image.push_back(f.matrix.col(c));

    AmitsurReport report;
    report.equalizer_dim = equalizer.size();
    report.image_dim = f.source.dim();
    report.tensor_dim = rt.algebra.dim();
    report.exact = spans_equal(F, equalizer, image, db);
    return report;
}

DoubleCentralizerReport double_centralizer_check(const StructureAlgebra& a,
                                                 const std::vector<Vec>& subalgebra_basis) {
    const ExactField F = a.field();
    if (!a.is_central_simple())
        throw PreconditionError("double_centralizer_check: ambient algebra is not central simple");
    for (const auto& z : center(a))
        if (!in_span(F, subalgebra_basis, z))
            throw PreconditionError("double_centralizer_check: subalgebra does not contain the center");

    // closure, unit and independence checks happen here
    const StructureAlgebra sub = subalgebra_from_basis(a, subalgebra_basis, a.unit());
    if (!separability_idempotent(sub))
        throw PreconditionError("double_centralizer_check: subalgebra is not separable");

    DoubleCentralizerReport report;
    const std::vector<Vec> cent = centralizer(a, subalgebra_basis);
    const std::vector<Vec> dcent = centralizer(a, cent);
    report.centralizer_dim = cent.size();
    report.double_centralizer_dim = dcent.size();
    report.ok = spans_equal(F, dcent, subalgebra_basis, a.dim());

    if (report.ok && sub.is_central_simple()) {
        report.tensor_decomposition_checked = true;
        if (sub.dim() * cent.size() != a.dim()) {
            report.ok = false;
        } else {
            // multiplication B (x) A^B -> A must be bijective
            Mat mult(F, a.dim(), sub.dim() * cent.size());
            for (std::size_t i = 0; i < subalgebra_basis.size(); ++i)
                for (std::size_t j = 0; j < cent.size(); ++j) {
                    const Vec prod = a.multiply(subalgebra_basis[i], cent[j]);
                    for (std::size_t r = 0; r < a.dim(); ++r)
                        mult.at(r, i * cent.size() + j) = prod[r];
                }
            report.ok = rank(std::move(mult)) == a.dim();
        }
    }
    return report;
}

} // namespace azurep::alg
