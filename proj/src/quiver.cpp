#include "azurep/quiver.hpp"

#include <set>

namespace azurep::quiver {

QuiverPresentation::QuiverPresentation(ExactField field, int vertex_count,
                                       std::vector<Arrow> arrows, std::vector<Relation> relations)
    : field_(field), vertex_count_(vertex_count), arrows_(std::move(arrows)),
      relations_(std::move(relations)) {
    if (vertex_count_ < 1) throw InputError("quiver needs at least one vertex");
    std::set<std::string> names;
    for (const auto& a : arrows_) {
        if (a.from < 1 || a.from > vertex_count_ || a.to < 1 || a.to > vertex_count_)
            throw InputError("arrow " + a.name + " has an out-of-range endpoint");
        if (!names.insert(a.name).second) throw InputError("duplicate arrow name " + a.name);
    }
    for (auto& rel : relations_) {
        if (rel.terms.empty()) throw InputError("empty relation");
        // determine source/target from the first nonempty path, then check
        // uniformity: composability of every path and shared endpoints
        bool anchored = false;
        for (const auto& term : rel.terms) {
            if (!(term.coeff.field() == field_))
                throw InputError("relation coefficient in the wrong field");
            if (term.arrows.empty()) continue;
            int src = 0, tgt = 0;
            for (std::size_t i = 0; i < term.arrows.size(); ++i) {
                const auto idx = term.arrows[i];
                if (idx < 0 || static_cast<std::size_t>(idx) >= arrows_.size())
                    throw InputError("relation references a missing arrow");
                const Arrow& a = arrows_[idx];
                if (i == 0) {
                    src = a.from;
                } else if (a.from != tgt) {
                    throw InputError("relation path is not composable");
                }
                tgt = a.to;
            }
            if (!anchored) {
                rel.source = src;
                rel.target = tgt;
                anchored = true;
            } else if (rel.source != src || rel.target != tgt) {
                throw InputError("relation is not uniform (mixed sources or targets)");
            }
        }
        for (const auto& term : rel.terms) {
            if (term.arrows.empty()) {
                if (!anchored)
                    throw InputError("relation of empty paths needs an anchor term or vertex");
                if (rel.source != rel.target)
                    throw InputError("empty path in a relation with distinct endpoints");
            }
        }
    }
}

std::int32_t QuiverPresentation::arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].name == name) return static_cast<std::int32_t>(i);
    throw InputError("unknown arrow " + name);
}

DimensionVector::DimensionVector(std::vector<std::int64_t> dims) : d(std::move(dims)) {
    if (d.empty()) throw InputError("dimension vector is empty");
    for (auto v : d)
        if (v < 1) throw InputError("dimension vector entries must be >= 1");
}

std::int64_t DimensionVector::total() const {
    std::int64_t t = 0;
    for (auto v : d) t += v;
    return t;
}

QuiverPresentation FreePresentation::loop_quiver() const {
    std::vector<Arrow> arrows;
    for (const auto& g : generators) arrows.push_back({g, 1, 1});
    std::vector<Relation> rels;
    for (const auto& nc : relations) {
        Relation rel;
        rel.source = rel.target = 1;
        for (const auto& [word, coeff] : nc.terms()) {
            PathTerm term;
            term.coeff = coeff;
            term.arrows = word;
            rel.terms.push_back(std::move(term));
        }
        if (rel.terms.empty()) continue;
        rels.push_back(std::move(rel));
    }
    return QuiverPresentation(field, 1, std::move(arrows), std::move(rels));
}

} // namespace azurep::quiver
