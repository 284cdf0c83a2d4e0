#include "azurep/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace azurep::twisted {

namespace {

Vec flatten(const Mat& m) {
    Vec out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.at(r, c));
    return out;
}

Mat unflatten(ExactField field, std::size_t rows, std::size_t cols, const Vec& v) {
    Mat m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = v[r * cols + c];
    return m;
}

} // namespace

RightModule make_right_module(alg::StructureAlgebra over, std::vector<Mat> action) {
    if (action.size() != over.dim())
        throw InputError("right module needs one action matrix per algebra basis element");
    if (action.empty() || action[0].rows() == 0) throw InputError("right module has no space");
    const std::size_t dim_f = action[0].rows();
    for (const auto& m : action)
        if (m.rows() != dim_f || m.cols() != dim_f)
            throw InputError("module action matrices must be square of equal size");
    RightModule p{std::move(over), dim_f, std::move(action)};
    // unit acts as identity
    Mat unit_action(p.over.field(), dim_f, dim_f);
    for (std::size_t i = 0; i < p.over.dim(); ++i)
        if (!p.over.unit()[i].is_zero()) unit_action = unit_action + p.action[i] * p.over.unit()[i];
    if (unit_action != Mat::identity(p.over.field(), dim_f))
        throw InputError("module unit law fails");
    // contravariant multiplicativity: action(b_i b_j) = action(b_j) action(b_i)
    for (std::size_t i = 0; i < p.over.dim(); ++i)
        for (std::size_t j = 0; j < p.over.dim(); ++j) {
            Mat expected(p.over.field(), dim_f, dim_f);
            for (const auto& e : p.over.product_row(i, j))
                expected = expected + p.action[e.index] * e.value;
            if (p.action[j] * p.action[i] != expected)
                throw InputError("module action is not multiplicative on basis pair (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return p;
}

RightModule regular_module(const alg::StructureAlgebra& a) {
    std::vector<Mat> action;
    for (std::size_t i = 0; i < a.dim(); ++i) action.push_back(a.right_mult(a.basis_element(i)));
    return make_right_module(a, std::move(action));
}

RightModule standard_matrix_module(const alg::StructureAlgebra& mat_alg, std::size_t copies) {
    const std::size_t n = mat_alg.degree();
    if (mat_alg.dim() != n * n) throw InputError("standard module needs a matrix algebra");
    const ExactField F = mat_alg.field();
    std::vector<Mat> action;
    for (std::size_t i = 0; i < mat_alg.dim(); ++i) {
        // basis element i is E_{ab} in row-major order; x -> x E_{ab}
        const Mat e = unflatten(F, n, n, mat_alg.basis_element(i));
        action.push_back(kronecker(Mat::identity(F, copies), e.transpose()));
    }
    return make_right_module(mat_alg, std::move(action));
}

Mat action_of(const RightModule& p, const Vec& x) {
    if (x.size() != p.over.dim()) throw InputError("action_of: element has wrong dimension");
    Mat out(p.over.field(), p.dim_f, p.dim_f);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) out = out + p.action[i] * x[i];
    return out;
}

RightModule twist(const RightModule& p, const alg::AlgebraMorphism& sigma) {
    if (!(sigma.source == p.over) || !(sigma.target == p.over))
        throw InputError("twist: sigma is not an endomorphism of the module's algebra");
    if (!is_invertible(sigma.matrix)) throw InputError("twist: sigma is not an automorphism");
    std::vector<Mat> action;
    for (std::size_t i = 0; i < p.over.dim(); ++i)
        action.push_back(action_of(p, sigma.apply(p.over.basis_element(i))));
    return make_right_module(p.over, std::move(action));
}

RightModule change_basis(const RightModule& p, const Mat& t) {
    const auto tinv = inverse(t);
    if (!tinv) throw InputError("change_basis: matrix is singular");
    std::vector<Mat> action;
    for (const auto& m : p.action) action.push_back(t * m * *tinv);
    return make_right_module(p.over, std::move(action));
}

DimVecAzumaya make_dim_vec_azumaya(alg::StructureAlgebra b, alg::IdempotentFamily idempotents,
                                   quiver::DimensionVector alpha) {
    if (idempotents.elements.size() != alpha.size())
        throw InputError("idempotent count does not match the dimension vector");
    if (idempotents.claimed_traces.empty()) {
        idempotents.claimed_traces = alpha.d;
    } else if (idempotents.claimed_traces != alpha.d) {
        throw InputError("claimed traces disagree with the dimension vector");
    }
    if (!b.is_central_simple())
        throw PreconditionError("dimension-vector Azumaya algebra must be central simple");
    if (b.degree() != static_cast<std::size_t>(alpha.total()))
        throw InputError("algebra degree does not equal |alpha|");
    alg::validate_idempotent_family(b, idempotents);
    return DimVecAzumaya{std::move(b), std::move(idempotents), std::move(alpha)};
}

EndoAlgebra endo_algebra(const alg::StructureAlgebra& a,
                         const std::vector<RightModule>& higher_modules,
                         const quiver::DimensionVector& alpha) {
    if (!a.is_central_simple())
        throw PreconditionError("endo_algebra: coefficient algebra is not central simple");
    const std::size_t d1 = a.degree();
    if (d1 != static_cast<std::size_t>(alpha[0]))
        throw InputError("endo_algebra: degree of A must be the first entry of alpha");
    if (higher_modules.size() + 1 != alpha.size())
        throw InputError("endo_algebra: need one module per vertex beyond the first");

    std::vector<RightModule> modules;
    modules.push_back(regular_module(a));
    for (std::size_t i = 0; i < higher_modules.size(); ++i) {
        if (!(higher_modules[i].over == a))
            throw InputError("endo_algebra: module " + std::to_string(i + 2) +
                             " is not over the given algebra");
        const auto required = static_cast<std::size_t>(alpha[i + 1]) * d1;
        if (higher_modules[i].dim_f != required)
            throw InputError("endo_algebra: module " + std::to_string(i + 2) + " has dim " +
                             std::to_string(higher_modules[i].dim_f) + ", rank condition needs " +
                             std::to_string(required));
        modules.push_back(higher_modules[i]);
    }

    const ExactField F = a.field();
    const std::size_t k = modules.size();
    std::vector<std::size_t> offset(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) offset[i + 1] = offset[i] + modules[i].dim_f;
    const std::size_t n = offset[k];

    // right action of each algebra basis element on V = (+) P_i
    std::vector<Mat> big_action;
    for (std::size_t b = 0; b < a.dim(); ++b) {
        Mat m(F, n, n);
        for (std::size_t i = 0; i < k; ++i) {
            const Mat& blk = modules[i].action[b];
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c)
                    m.at(offset[i] + r, offset[i] + c) = blk.at(r, c);
        }
        big_action.push_back(std::move(m));
    }

    // commutant: phi with phi X_b = X_b phi for all b
    Mat sys(F, a.dim() * n * n, n * n);
    for (std::size_t b = 0; b < a.dim(); ++b) {
        const Mat& x = big_action[b];
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                // (phi x - x phi)_{rc} = sum_t phi_{rt} x_{tc} - x_{rt} phi_{tc}
                const std::size_t row = (b * n + r) * n + c;
                for (std::size_t t = 0; t < n; ++t) {
                    if (!x.at(t, c).is_zero()) sys.at(row, r * n + t) += x.at(t, c);
                    if (!x.at(r, t).is_zero()) sys.at(row, t * n + c) -= x.at(r, t);
                }
            }
    }
    const std::vector<Vec> endo_basis = span_basis(F, null_space(sys), n * n);
    const std::size_t dim_b = endo_basis.size();
    const auto total = static_cast<std::size_t>(alpha.total());
    if (dim_b != total * total)
        throw InputError("endo_algebra: endomorphism algebra has dimension " +
                         std::to_string(dim_b) + ", expected " + std::to_string(total * total));

    std::vector<Mat> operator_basis;
    for (const auto& v : endo_basis) operator_basis.push_back(unflatten(F, n, n, v));

    Mat cols(F, n * n, dim_b);
    for (std::size_t j = 0; j < dim_b; ++j)
        for (std::size_t r = 0; r < n * n; ++r) cols.at(r, j) = endo_basis[j][r];
    auto coords = [&](const Mat& op) {
        auto c = solve(cols, flatten(op));
        if (!c) throw InputError("endo_algebra: operator escapes the endomorphism algebra");
        return *c;
    };

    std::vector<alg::SparseRow> table(dim_b * dim_b);
    for (std::size_t i = 0; i < dim_b; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) {
            const Vec prod = coords(operator_basis[i] * operator_basis[j]);
            alg::SparseRow row;
            for (std::size_t t = 0; t < dim_b; ++t)
                if (!prod[t].is_zero()) row.push_back({static_cast<std::uint32_t>(t), prod[t]});
            table[i * dim_b + j] = std::move(row);
        }
    alg::StructureAlgebra b(F, dim_b, std::move(table), coords(Mat::identity(F, n)));

    alg::IdempotentFamily idems;
    for (std::size_t i = 0; i < k; ++i) {
        Mat proj(F, n, n);
        for (std::size_t r = offset[i]; r < offset[i + 1]; ++r) proj.at(r, r) = F.one();
        idems.elements.push_back(coords(proj));
    }
    idems.claimed_traces = alpha.d;

    return EndoAlgebra{make_dim_vec_azumaya(std::move(b), std::move(idems), alpha),
                       std::move(modules), std::move(operator_basis), std::move(offset)};
}

Vec operator_coords(const EndoAlgebra& e, const Mat& op) {
    const std::size_t n = e.block_offset.back();
    const ExactField F = e.data.b.field();
    Mat cols(F, n * n, e.operator_basis.size());
    for (std::size_t j = 0; j < e.operator_basis.size(); ++j) {
        const Vec v = flatten(e.operator_basis[j]);
        for (std::size_t r = 0; r < n * n; ++r) cols.at(r, j) = v[r];
    }
    auto c = solve(cols, flatten(op));
    if (!c) throw InputError("operator is not right A-linear (outside the endo algebra)");
    return *c;
}

PeirceData peirce_decompose(const DimVecAzumaya& bz) {
    const alg::StructureAlgebra& b = bz.b;
    const ExactField F = b.field();
    const std::size_t k = bz.alpha.size();
    const Vec& e1 = bz.idempotents.elements[0];
    const auto d1 = static_cast<std::size_t>(bz.alpha[0]);

    // corner e_1 B e_1
    std::vector<Vec> corner_span;
    for (std::size_t r = 0; r < b.dim(); ++r)
        corner_span.push_back(b.multiply(b.multiply(e1, b.basis_element(r)), e1));
    std::vector<Vec> corner_basis = span_basis(F, corner_span, b.dim());
    if (corner_basis.size() != d1 * d1)
        throw InputError("peirce corner has dimension " + std::to_string(corner_basis.size()) +
                         ", expected " + std::to_string(d1 * d1));
    PeirceData out{alg::subalgebra_from_basis(b, corner_basis, e1), std::move(corner_basis), {}, {}};
    if (!out.corner.is_central_simple() || out.corner.degree() != d1)
        throw InputError("peirce corner is not central simple of degree d_1");

    for (std::size_t i = 0; i < k; ++i) {
        const Vec& ei = bz.idempotents.elements[i];
        std::vector<Vec> span;
        for (std::size_t r = 0; r < b.dim(); ++r)
            span.push_back(b.multiply(b.multiply(ei, b.basis_element(r)), e1));
        const auto basis = span_basis(F, span, b.dim());
        const auto expected = d1 * static_cast<std::size_t>(bz.alpha[i]);
        if (basis.size() != expected)
            throw InputError("peirce column " + std::to_string(i + 1) + " has rank " +
                             std::to_string(basis.size()) + ", expected " +
                             std::to_string(expected));
        // right action of corner basis elements by multiplication in B
        Mat cols(F, b.dim(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t r = 0; r < b.dim(); ++r) cols.at(r, j) = basis[j][r];
        std::vector<Mat> action;
        for (const auto& c : out.corner_basis) {
            Mat m(F, basis.size(), basis.size());
            for (std::size_t j = 0; j < basis.size(); ++j) {
                auto coords = solve(cols, b.multiply(basis[j], c));
                if (!coords) throw InputError("peirce column is not stable under the corner");
                for (std::size_t r = 0; r < basis.size(); ++r) m.at(r, j) = (*coords)[r];
            }
            action.push_back(std::move(m));
        }
        out.modules.push_back(make_right_module(out.corner, std::move(action)));
        out.module_bases.push_back(basis);
    }
    return out;
}

TwistedRep make_twisted_rep(alg::StructureAlgebra a, std::vector<RightModule> modules,
                            const quiver::QuiverPresentation& q, std::vector<Mat> rho,
                            const quiver::DimensionVector& alpha) {
    if (static_cast<int>(alpha.size()) != q.vertex_count())
        throw InputError("dimension vector does not match the quiver");
    if (modules.size() != alpha.size())
        throw InputError("twisted rep needs one module per vertex");
    if (!a.is_central_simple())
        throw PreconditionError("twisted rep algebra must be central simple");
    const std::size_t d1 = a.degree();
    if (d1 != static_cast<std::size_t>(alpha[0]))
        throw InputError("twisted rep: algebra degree must be d_1");
    for (std::size_t i = 0; i < modules.size(); ++i) {
        if (!(modules[i].over == a)) throw InputError("module over the wrong algebra");
        if (modules[i].dim_f != d1 * static_cast<std::size_t>(alpha[i]))
            throw InputError("module " + std::to_string(i + 1) + " violates the rank condition");
    }
    if (rho.size() != q.arrows().size()) throw InputError("need one map per arrow");
    for (std::size_t ar = 0; ar < rho.size(); ++ar) {
        const auto& arrow = q.arrows()[ar];
        const RightModule& src = modules[arrow.from - 1];
        const RightModule& dst = modules[arrow.to - 1];
        if (rho[ar].rows() != dst.dim_f || rho[ar].cols() != src.dim_f)
            throw InputError("map for arrow " + arrow.name + " has the wrong shape");
        for (std::size_t b = 0; b < a.dim(); ++b)
            if (rho[ar] * src.action[b] != dst.action[b] * rho[ar])
                throw InputError("map for arrow " + arrow.name + " is not right A-linear");
    }
    // relations evaluate to zero
    const ExactField F = a.field();
    for (const auto& rel : q.relations()) {
        const std::size_t rows = modules[rel.target - 1].dim_f;
        const std::size_t cols = modules[rel.source - 1].dim_f;
        Mat acc(F, rows, cols);
        for (const auto& term : rel.terms) {
            Mat prod = Mat::identity(F, cols);
            for (auto arr : term.arrows) prod = rho[arr] * prod;
            acc = acc + prod * term.coeff;
        }
        if (!acc.is_zero()) throw InputError("twisted rep violates a relation");
    }
    return TwistedRep{std::move(a), std::move(modules), std::move(rho)};
}

TwistedIso make_twisted_iso(const std::vector<RightModule>& source,
                            const std::vector<RightModule>& target, alg::AlgebraMorphism sigma,
                            std::vector<Mat> sigma_maps) {
    if (source.size() != target.size()) throw InputError("module tuples differ in length");
    if (sigma_maps.size() != source.size())
        throw InputError("need one semilinear map per module");
    if (!(sigma.source == source[0].over) || !(sigma.target == target[0].over))
        throw InputError("sigma does not connect the module algebras");
    if (!is_invertible(sigma.matrix)) throw InputError("sigma is not bijective");
    if (source[0].dim_f != sigma.source.dim() || !(sigma_maps[0] == sigma.matrix))
        throw InputError("sigma_1 must equal sigma on P_1 = A");
    const std::size_t da = sigma.source.dim();
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i].dim_f != target[i].dim_f)
            throw InputError("module " + std::to_string(i + 1) + " changes dimension");
        if (sigma_maps[i].rows() != target[i].dim_f || sigma_maps[i].cols() != source[i].dim_f)
            throw InputError("semilinear map " + std::to_string(i + 1) + " has the wrong shape");
        if (!is_invertible(sigma_maps[i]))
            throw InputError("semilinear map " + std::to_string(i + 1) + " is singular");
        for (std::size_t b = 0; b < da; ++b) {
            const Mat lhs = sigma_maps[i] * source[i].action[b];
            const Mat rhs = action_of(target[i], sigma.apply(sigma.source.basis_element(b))) *
                            sigma_maps[i];
            if (lhs != rhs)
                throw InputError("map " + std::to_string(i + 1) +
                                 " is not sigma-semilinear on basis element " + std::to_string(b));
        }
    }
    return TwistedIso{std::move(sigma), std::move(sigma_maps)};
}

TwistedRep conjugate_twisted(const quiver::QuiverPresentation& q, const TwistedRep& t,
                             const TwistedIso& iso) {
    if (!(iso.sigma.source == t.a) || !(iso.sigma.target == t.a))
        throw InputError("conjugate_twisted: iso does not fix the algebra");
    if (iso.sigma_maps.size() != t.modules.size())
        throw InputError("conjugate_twisted: wrong tuple length");
    std::vector<Mat> rho;
    for (std::size_t ar = 0; ar < t.rho.size(); ++ar) {
        const auto& arrow = q.arrows()[ar];
        const Mat& sj = iso.sigma_maps[arrow.to - 1];
        const Mat& si = iso.sigma_maps[arrow.from - 1];
        const auto si_inv = inverse(si);
        if (!si_inv) throw InputError("conjugate_twisted: singular semilinear map");
        rho.push_back(sj * t.rho[ar] * *si_inv);
    }
    quiver::DimensionVector alpha(
        [&] {
            std::vector<std::int64_t> d;
            const std::size_t d1 = t.a.degree();
            for (const auto& m : t.modules) d.push_back(static_cast<std::int64_t>(m.dim_f / d1));
            return d;
        }());
    return make_twisted_rep(t.a, t.modules, q, std::move(rho), alpha);
}

PresentedMap twisted_to_algebra_map(const quiver::QuiverPresentation& q, const TwistedRep& t) {
    std::vector<std::int64_t> dims;
    const std::size_t d1 = t.a.degree();
    for (const auto& m : t.modules) dims.push_back(static_cast<std::int64_t>(m.dim_f / d1));
    const quiver::DimensionVector alpha(dims);

    std::vector<RightModule> higher(t.modules.begin() + 1, t.modules.end());
    PresentedMap out{endo_algebra(t.a, higher, alpha), {}, {}};
    const EndoAlgebra& endo = out.endo;
    const ExactField F = t.a.field();
    const std::size_t n = endo.block_offset.back();

    out.vertex_images = endo.data.idempotents.elements;
    for (std::size_t ar = 0; ar < t.rho.size(); ++ar) {
        const auto& arrow = q.arrows()[ar];
        Mat op(F, n, n);
        const std::size_t roff = endo.block_offset[arrow.to - 1];
        const std::size_t coff = endo.block_offset[arrow.from - 1];
        for (std::size_t r = 0; r < t.rho[ar].rows(); ++r)
            for (std::size_t c = 0; c < t.rho[ar].cols(); ++c)
                op.at(roff + r, coff + c) = t.rho[ar].at(r, c);
        out.arrow_images.push_back(operator_coords(endo, op));
    }

    const alg::StructureAlgebra& b = endo.data.b;
    // block compatibility: e_{t(a)} phi(a) e_{s(a)} = phi(a), and products of
    // non-composable arrows vanish
    for (std::size_t ar = 0; ar < out.arrow_images.size(); ++ar) {
        const auto& arrow = q.arrows()[ar];
        const Vec& img = out.arrow_images[ar];
        const Vec sandwiched = b.multiply(
            b.multiply(out.vertex_images[arrow.to - 1], img), out.vertex_images[arrow.from - 1]);
        if (sandwiched != img) throw InputError("arrow image escapes its block");
        for (std::size_t br = 0; br < out.arrow_images.size(); ++br) {
            const auto& other = q.arrows()[br];
            if (other.to != arrow.from &&
                !is_zero(b.multiply(img, out.arrow_images[br])))
                throw InputError("non-composable arrow product is nonzero");
        }
    }
    // relations hold inside B
    for (const auto& rel : q.relations()) {
        Vec acc = zero_vec(F, b.dim());
        for (const auto& term : rel.terms) {
            Vec prod = out.vertex_images[rel.source - 1]; // empty path = e_source
            for (auto arr : term.arrows) prod = b.multiply(out.arrow_images[arr], prod);
            acc = acc + scale(term.coeff, prod);
        }
        if (!is_zero(acc)) throw InputError("relation fails inside the endomorphism algebra");
    }
    return out;
}

alg::AlgebraMorphism iso_to_automorphism(const EndoAlgebra& source, const EndoAlgebra& target,
                                         const TwistedIso& iso) {
    const ExactField F = source.data.b.field();
    const std::size_t n = source.block_offset.back();
    if (target.block_offset.back() != n)
        throw InputError("iso_to_automorphism: total module dimensions differ");
    Mat phi(F, n, n);
    for (std::size_t i = 0; i < iso.sigma_maps.size(); ++i) {
        const std::size_t off = source.block_offset[i];
        const Mat& blk = iso.sigma_maps[i];
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t c = 0; c < blk.cols(); ++c) phi.at(off + r, off + c) = blk.at(r, c);
    }
    const auto phi_inv = inverse(phi);
    if (!phi_inv) throw InputError("iso_to_automorphism: block map is singular");

    Mat psi(F, target.data.b.dim(), source.data.b.dim());
    for (std::size_t j = 0; j < source.data.b.dim(); ++j) {
        const Vec c = operator_coords(target, phi * source.operator_basis[j] * *phi_inv);
        for (std::size_t r = 0; r < c.size(); ++r) psi.at(r, j) = c[r];
    }
    alg::AlgebraMorphism out(source.data.b, target.data.b, std::move(psi));
    for (std::size_t i = 0; i < source.data.idempotents.elements.size(); ++i)
        if (out.apply(source.data.idempotents.elements[i]) != target.data.idempotents.elements[i])
            throw InputError("iso_to_automorphism: idempotents are not preserved");
    return out;
}

PeirceRoundTrip peirce_round_trip(const EndoAlgebra& endo, const PeirceData& peirce) {
    const alg::StructureAlgebra& a = endo.modules[0].over;
    const alg::StructureAlgebra& b = endo.data.b;
    const ExactField F = a.field();
    const std::size_t n = endo.block_offset.back();
    const std::size_t k = endo.modules.size();

    auto in_module_basis = [&](std::size_t i, const Vec& b_coords) {
        const auto c = alg::express_in_basis(F, peirce.module_bases[i], b_coords);
        if (!c) throw InputError("peirce_round_trip: element escapes its Peirce piece");
        return *c;
    };

    // lambda(a) = the operator acting as left multiplication by a on P_1 = A
    Mat lambda_mat(F, peirce.corner.dim(), a.dim());
    for (std::size_t t = 0; t < a.dim(); ++t) {
        Mat op(F, n, n);
        const Mat la = a.left_mult(a.basis_element(t));
        for (std::size_t r = 0; r < a.dim(); ++r)
            for (std::size_t c = 0; c < a.dim(); ++c) op.at(r, c) = la.at(r, c);
        const Vec coords = operator_coords(endo, op);
        const auto corner_coords = alg::express_in_basis(F, peirce.corner_basis, coords);
        if (!corner_coords) throw InputError("peirce_round_trip: lambda escapes the corner");
        for (std::size_t r = 0; r < peirce.corner.dim(); ++r)
            lambda_mat.at(r, t) = (*corner_coords)[r];
    }
    alg::AlgebraMorphism lambda(a, peirce.corner, std::move(lambda_mat));

    PeirceRoundTrip out{std::move(lambda), {}, true};
    out.verified = is_invertible(out.algebra_iso.matrix);

    // mu_i(x) = (a -> x a) as an operator supported on block (i, 1)
    for (std::size_t i = 0; i < k; ++i) {
        const RightModule& p = endo.modules[i];
        Mat mu(F, p.dim_f, p.dim_f);
        for (std::size_t x = 0; x < p.dim_f; ++x) {
            Mat op(F, n, n);
            // column t of the block: act_i(b_t) applied to the x-th basis vector
            for (std::size_t t = 0; t < a.dim(); ++t) {
                const Mat& act = p.action[t];
                for (std::size_t r = 0; r < p.dim_f; ++r)
                    op.at(endo.block_offset[i] + r, endo.block_offset[0] + t) = act.at(r, x);
            }
            const Vec coords = in_module_basis(i, operator_coords(endo, op));
            for (std::size_t r = 0; r < p.dim_f; ++r) mu.at(r, x) = coords[r];
        }
        if (!is_invertible(mu)) out.verified = false;
        // semilinearity over lambda: mu_i(x b) = mu_i(x) lambda(b)
        for (std::size_t t = 0; t < a.dim() && out.verified; ++t) {
            const Mat lhs = mu * p.action[t];
            const Mat rhs =
                action_of(peirce.modules[i], out.algebra_iso.apply(a.basis_element(t))) * mu;
            if (lhs != rhs) out.verified = false;
        }
        out.module_isos.push_back(std::move(mu));
    }
    return out;
}

RecoveredTuple automorphism_to_tuple(const DimVecAzumaya& source, const DimVecAzumaya& target,
                                     const alg::AlgebraMorphism& psi) {
    if (!(psi.source == source.b) || !(psi.target == target.b))
        throw InputError("automorphism_to_tuple: psi does not connect the algebras");
    if (!is_invertible(psi.matrix)) throw InputError("automorphism_to_tuple: psi is not bijective");
    if (source.alpha.d != target.alpha.d)
        throw InputError("automorphism_to_tuple: dimension vectors differ");
    for (std::size_t i = 0; i < source.idempotents.elements.size(); ++i)
        if (psi.apply(source.idempotents.elements[i]) != target.idempotents.elements[i])
            throw InputError("automorphism_to_tuple: psi does not preserve the idempotents "
                             "(not C^k-linear)");

    RecoveredTuple out{TwistedIso{alg::identity_morphism(source.b), {}}, peirce_decompose(source),
                       peirce_decompose(target), false};
    const ExactField F = source.b.field();

    auto restrict_to = [&](const std::vector<Vec>& src_basis, const std::vector<Vec>& dst_basis) {
        Mat cols(F, source.b.dim(), dst_basis.size());
        for (std::size_t j = 0; j < dst_basis.size(); ++j)
            for (std::size_t r = 0; r < source.b.dim(); ++r) cols.at(r, j) = dst_basis[j][r];
        Mat m(F, dst_basis.size(), src_basis.size());
        for (std::size_t j = 0; j < src_basis.size(); ++j) {
            auto c = solve(cols, psi.apply(src_basis[j]));
            if (!c) throw InputError("automorphism_to_tuple: psi does not respect a Peirce piece");
            for (std::size_t r = 0; r < dst_basis.size(); ++r) m.at(r, j) = (*c)[r];
        }
        return m;
    };

    Mat sigma_mat = restrict_to(out.source.corner_basis, out.target.corner_basis);
    alg::AlgebraMorphism sigma(out.source.corner, out.target.corner, std::move(sigma_mat));

    std::vector<Mat> maps;
    for (std::size_t i = 0; i < out.source.module_bases.size(); ++i)
        maps.push_back(restrict_to(out.source.module_bases[i], out.target.module_bases[i]));
    out.iso = make_twisted_iso(out.source.modules, out.target.modules, std::move(sigma),
                               std::move(maps));

    // when the corners coincide, sigma_i reinterpreted P_{i, sigma^{-1}} -> P_i'
    // is A-linear (Proposition on projective tuples)
    if (out.source.corner == out.target.corner) {
        const auto inv = inverse(out.iso.sigma.matrix);
        alg::AlgebraMorphism sigma_inv(out.source.corner, out.source.corner, *inv);
        out.twist_comparison_ok = true;
        for (std::size_t i = 0; i < out.source.modules.size() && out.twist_comparison_ok; ++i) {
            const RightModule twisted = twist(out.source.modules[i], sigma_inv);
            for (std::size_t b = 0; b < out.source.corner.dim(); ++b) {
                const Mat lhs = out.iso.sigma_maps[i] * twisted.action[b];
                const Mat rhs = out.target.modules[i].action[b] * out.iso.sigma_maps[i];
                if (lhs != rhs) { out.twist_comparison_ok = false; break; }
            }
        }
    }
    return out;
}

namespace {

/// Exact congruent diagonalization of a symmetric matrix over Q.
std::vector<Scalar> congruent_diagonal(Mat g) {
    const std::size_t n = g.rows();
    const ExactField F = g.field();
    for (std::size_t i = 0; i < n; ++i) {
        if (g.at(i, i).is_zero()) {
            std::size_t j = i + 1;
            for (; j < n; ++j)
                if (!g.at(i, j).is_zero()) break;
            if (j < n) {
                // row/col_i += row/col_j makes the diagonal entry 2 g_ij (+ g_jj)
                for (std::size_t c = 0; c < n; ++c) g.at(i, c) += g.at(j, c);
                for (std::size_t r = 0; r < n; ++r) g.at(r, i) += g.at(r, j);
            }
        }
        if (g.at(i, i).is_zero()) continue;
        for (std::size_t r = i + 1; r < n; ++r) {
            if (g.at(r, i).is_zero()) continue;
            const Scalar f = g.at(r, i) / g.at(i, i);
            for (std::size_t c = 0; c < n; ++c) g.at(r, c) -= f * g.at(i, c);
            for (std::size_t c = 0; c < n; ++c) g.at(c, r) -= f * g.at(c, i);
        }
    }
    std::vector<Scalar> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(g.at(i, i));
    return diag;
}

std::optional<Vec> small_zero_divisor(const alg::StructureAlgebra& a, std::int64_t height) {
    const ExactField F = a.field();
    const std::size_t d = a.dim();
    std::vector<std::int64_t> coords(d, -height);
    while (true) {
        Vec x(d, F.zero());
        bool nonzero = false;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = F.from_int(coords[i]);
            if (coords[i] != 0) nonzero = true;
        }
        if (nonzero && !a.is_invertible_element(x)) return x;
        std::size_t i = d;
        bool done = true;
        while (i-- > 0) {
            if (++coords[i] <= height) { done = false; break; }
            coords[i] = -height;
        }
        if (done) return std::nullopt;
    }
}

} // namespace

IndexCertificate csa_index(const alg::StructureAlgebra& a) {
    if (!a.is_central_simple())
        throw PreconditionError("csa_index: algebra is not central simple");
    const std::size_t deg = a.degree();
    if (deg == 1) return {1, "degree one"};

    if (!a.field().is_rationals()) {
        const std::int64_t q = a.field().characteristic();
        std::string note = "finite base field: the Brauer group vanishes";
        if (deg == 2 && std::pow(static_cast<double>(q), static_cast<double>(a.dim())) <= 1e6) {
            // exhaustive zero-divisor witness over F_q
            std::vector<std::int64_t> coords(a.dim(), 0);
            while (true) {
                Vec x(a.dim(), a.field().zero());
                bool nonzero = false;
                for (std::size_t i = 0; i < a.dim(); ++i) {
                    x[i] = a.field().from_int(coords[i]);
                    if (coords[i] != 0) nonzero = true;
                }
                if (nonzero && !a.is_invertible_element(x)) {
                    note = "zero divisor found by exhaustive scan";
                    break;
                }
                std::size_t i = a.dim();
                bool done = true;
                while (i-- > 0) {
                    if (++coords[i] < q) { done = false; break; }
                    coords[i] = 0;
                }
                if (done) break;
            }
        }
        return {1, note};
    }

    if (deg != 2)
        throw PreconditionError("csa_index over Q is only supported in degree 2");

    if (small_zero_divisor(a, 2)) return {1, "zero divisor of height <= 2"};

    // reduced norm form N(x) = x conj(x), conj(x) = trd(x) 1 - x
    const ExactField F = a.field();
    const std::size_t d = a.dim();
    auto norm_of = [&](const Vec& x) {
        Vec conj = scale(alg::reduced_trace(a, x), a.unit()) - x;
        const Vec prod = a.multiply(x, conj);
        const auto c = alg::express_in_basis(F, {a.unit()}, prod);
        if (!c) throw PreconditionError("csa_index: x conj(x) is not scalar");
        return (*c)[0];
    };
    Mat gram(F, d, d);
    std::vector<Scalar> diag_vals;
    for (std::size_t i = 0; i < d; ++i) diag_vals.push_back(norm_of(a.basis_element(i)));
    const Scalar half = F.from_int(2).inverse();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) { gram.at(i, i) = diag_vals[i]; continue; }
            Vec sum = a.basis_element(i) + a.basis_element(j);
            gram.at(i, j) = (norm_of(sum) - diag_vals[i] - diag_vals[j]) * half;
        }
    const auto diag = congruent_diagonal(gram);
    bool positive = true, negative = true;
    for (const auto& v : diag) {
        if (v.is_zero())
            throw RetryError("csa_index: norm form degenerated; raise the search height");
        if (v.rational() > 0) negative = false;
        if (v.rational() < 0) positive = false;
    }
    if (positive || negative) return {2, "norm form is definite, hence anisotropic"};
    if (small_zero_divisor(a, 8)) return {1, "zero divisor of height <= 8"};
    throw RetryError("csa_index: indefinite norm form without a small zero divisor; "
                     "raise the search height");
}

ObstructionReport module_obstruction(const alg::StructureAlgebra& a,
                                     const quiver::DimensionVector& alpha) {
    if (!a.is_central_simple())
        throw PreconditionError("module_obstruction: algebra is not central simple");
    const std::size_t d1 = a.degree();
    if (d1 != static_cast<std::size_t>(alpha[0]))
        throw InputError("module_obstruction: degree of A must equal d_1");

    const IndexCertificate cert = csa_index(a);
    ObstructionReport report;
    report.index = cert.index;
    report.certificate = cert.note;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        SlotFeasibility slot;
        slot.required_dim = static_cast<std::int64_t>(d1) * alpha[i];
        // every right module is a multiple of the simple one, of F-dimension d1 * index
        slot.feasible = alpha[i] % static_cast<std::int64_t>(cert.index) == 0;
        report.slots.push_back(slot);
        report.feasible = report.feasible && slot.feasible;
    }
    return report;
}

GroupoidCount groupoid_count(const quiver::QuiverPresentation& q,
                             const quiver::DimensionVector& alpha, std::int64_t qsize,
                             std::uint64_t max_points, std::uint64_t max_group) {
    const ExactField fq = ExactField::prime_field(qsize);
    GroupoidCount out;

    // left side: raw point count over the PGL order formula
    const auto points = quiver::enumerate_reps(q, alpha, fq, max_points);
    out.rep_count = points.size();
    out.pgl_order = quiver::gl_alpha_order(alpha, qsize) / static_cast<std::uint64_t>(qsize - 1);
    out.lhs = Rational(out.rep_count, out.pgl_order);

    // right side: twisted representations over the split algebra M_{d_1}(F_q)
    const alg::StructureAlgebra a = alg::matrix_algebra(static_cast<std::size_t>(alpha[0]), fq);
    const std::size_t d1 = a.degree();
    std::vector<RightModule> modules;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        modules.push_back(standard_matrix_module(a, static_cast<std::size_t>(alpha[i])));

    std::vector<TwistedRep> twisted_points;
    std::map<std::vector<std::int64_t>, std::size_t> index;
    auto rho_key = [&](const TwistedRep& t) {
        std::vector<std::int64_t> key;
        for (std::size_t ar = 0; ar < t.rho.size(); ++ar) {
            const auto& arrow = q.arrows()[ar];
            const auto rows = static_cast<std::size_t>(alpha[arrow.to - 1]);
            const auto cols = static_cast<std::size_t>(alpha[arrow.from - 1]);
            // extract M from rho = M (x) I and check the block shape
            Mat m(fq, rows, cols);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = t.rho[ar].at(r * d1, c * d1);
            if (kronecker(m, Mat::identity(fq, d1)) != t.rho[ar])
                throw InputError("groupoid_count: arrow map is not of split block form");
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) key.push_back(m.at(r, c).residue());
        }
        return key;
    };

    for (const auto& p : points) {
        std::vector<Mat> rho;
        for (const auto& m : p.matrices) rho.push_back(kronecker(m, Mat::identity(fq, d1)));
        TwistedRep t = make_twisted_rep(a, modules, q, std::move(rho), alpha);
        index[rho_key(t)] = twisted_points.size();
        twisted_points.push_back(std::move(t));
    }

    // isomorphism tuples: GL(alpha) modulo global scalars, realized as
    // verified sigma-semilinear map tuples
    const auto gl = quiver::enumerate_gl_tuples(alpha, fq, max_group);
    std::map<std::vector<std::int64_t>, std::vector<Mat>> canonical;
    for (const auto& tuple : gl) {
        std::vector<std::int64_t> flat;
        for (const auto& m : tuple)
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) flat.push_back(m.at(r, c).residue());
        Scalar lead = fq.zero();
        for (auto v : flat)
            if (v != 0) { lead = fq.from_int(v); break; }
        const Scalar inv = lead.inverse();
        std::vector<Mat> scaled;
        std::vector<std::int64_t> key;
        for (const auto& m : tuple) {
            const Mat s = m * inv;
            for (std::size_t r = 0; r < s.rows(); ++r)
                for (std::size_t c = 0; c < s.cols(); ++c) key.push_back(s.at(r, c).residue());
            scaled.push_back(s);
        }
        canonical.emplace(std::move(key), std::move(scaled));
    }
    if (canonical.size() != out.pgl_order)
        throw InputError("groupoid_count: PGL tuple count does not match the order formula");

    std::vector<TwistedIso> isos;
    for (const auto& [key, tuple] : canonical) {
        const Mat& u = tuple[0];
        const Mat uinv = *inverse(u);
        Mat sigma_mat = kronecker(u, uinv.transpose()); // x -> u x u^{-1} on row-major coords
        alg::AlgebraMorphism sigma(a, a, std::move(sigma_mat));
        std::vector<Mat> maps;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            maps.push_back(kronecker(tuple[i], uinv.transpose())); // x -> g_i x u^{-1}
        isos.push_back(make_twisted_iso(modules, modules, std::move(sigma), std::move(maps)));
    }

    std::vector<bool> seen(twisted_points.size(), false);
    for (std::size_t i = 0; i < twisted_points.size(); ++i) {
        if (seen[i]) continue;
        GroupoidClass cls;
        for (const auto& iso : isos) {
            const TwistedRep moved = conjugate_twisted(q, twisted_points[i], iso);
            const auto it = index.find(rho_key(moved));
            if (it == index.end()) throw InputError("groupoid_count: conjugate escaped the set");
            if (!seen[it->second]) {
                seen[it->second] = true;
                ++cls.orbit_size;
            }
            if (it->second == i) ++cls.automorphism_order;
        }
        if (cls.orbit_size * cls.automorphism_order != out.pgl_order)
            throw InputError("groupoid_count: orbit-stabilizer identity failed");
        out.rhs += Rational(1, cls.automorphism_order);
        out.classes.push_back(cls);
    }
    out.equal = out.lhs == out.rhs;
    return out;
}

} // namespace azurep::twisted
