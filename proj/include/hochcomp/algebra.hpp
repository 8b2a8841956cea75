#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hochcomp/field.hpp"
#include "hochcomp/parse.hpp"
#include "hochcomp/quiver.hpp"

namespace hochcomp {

struct BuildOptions {
    // Admissibility cap: longest basis path length tolerated before the
    // ideal is rejected as non-admissible.
    int max_basis_path_length = 64;
};

/**
 * A monomial path algebra kQ/I where I is generated by a minimal set of paths
 * of length >= 2.  Holds the monomial basis P (paths containing no relation as
 * a factor) and exact structure constants: a product of basis paths is either
 * zero or again a basis path.
 */
class MonomialAlgebra {
public:
    static MonomialAlgebra build(Quiver quiver, std::vector<Path> relations,
                                 BuildOptions options = {}) {
        MonomialAlgebra A;
        A.quiver_ = std::move(quiver);
        A.relations_ = std::move(relations);
        A.validate_relations();
        std::sort(A.relations_.begin(), A.relations_.end());
        A.enumerate_basis(options.max_basis_path_length);
        return A;
    }

    static MonomialAlgebra build(const QuiverInput& input, BuildOptions options = {}) {
        return build(input.quiver, input.relations, options);
    }

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Path>& relations() const { return relations_; }
    const std::vector<Path>& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    /** True iff some relation occurs as a factor of p. */
    bool in_ideal(const Path& p) const {
        for (const Path& r : relations_)
            if (!find_occurrences(quiver_, r, p).empty()) return true;
        return false;
    }

    std::optional<int> basis_id(const Path& p) const {
        auto it = basis_index_.find(p);
        if (it == basis_index_.end()) return std::nullopt;
        return it->second;
    }

    const Path& basis_path(int id) const { return basis_[static_cast<std::size_t>(id)]; }
    int source_of(int id) const { return path_source(basis_path(id)); }
    int target_of(int id) const { return path_target(quiver_, basis_path(id)); }

    /** Basis id of the vertex idempotent e_v (vertices occupy ids 0..n-1). */
    int unit_id(int vertex) const { return vertex; }

    /** Product of basis elements: nullopt encodes zero. */
    std::optional<int> mul(int i, int j) const {
        const Path& p = basis_path(i);
        const Path& q = basis_path(j);
        if (path_target(quiver_, p) != path_source(q)) return std::nullopt;
        if (p.trivial()) return j;
        if (q.trivial()) return i;
        Path pq = p;
        pq.arrows.insert(pq.arrows.end(), q.arrows.begin(), q.arrows.end());
        return basis_id_of_reduced(pq);
    }

    /** Reduce an arbitrary path into the basis (nullopt when it lies in I). */
    std::optional<int> reduce(const Path& p) const {
        auto id = basis_id(p);
        if (id) return id;
        return std::nullopt;
    }

    /** Basis ids listed by source / target vertex, ascending. */
    const std::vector<int>& ids_from(int vertex) const { return by_source_[static_cast<std::size_t>(vertex)]; }
    const std::vector<int>& ids_into(int vertex) const { return by_target_[static_cast<std::size_t>(vertex)]; }

    /** Basis ids of paths s -> t, ascending (the parallel paths). */
    const std::vector<int>& ids_between(int s, int t) const {
        static const std::vector<int> empty;
        auto it = by_endpoints_.find({s, t});
        return it == by_endpoints_.end() ? empty : it->second;
    }

    std::string basis_label(int id) const { return path_to_string(quiver_, basis_path(id)); }

private:
    // A concatenation of two basis paths has no relation strictly inside
    // either factor, so only occurrences touching the seam need checking; the
    // plain lookup is simplest and the basis map makes it O(1) after hashing.
    std::optional<int> basis_id_of_reduced(const Path& p) const {
        auto it = basis_index_.find(p);
        if (it != basis_index_.end()) return it->second;
        return std::nullopt;
    }

    void validate_relations() {
        for (const Path& r : relations_) {
            if (!path_valid(quiver_, r))
                throw input_error("relation " + path_to_string(quiver_, r) + " is not a path");
            if (r.length() < 2)
                throw input_error("relation " + path_to_string(quiver_, r) +
                                  " has length < 2 (the ideal must sit inside F^2)");
        }
        for (std::size_t i = 0; i < relations_.size(); ++i)
            for (std::size_t j = 0; j < relations_.size(); ++j) {
                if (i == j) continue;
                if (!find_occurrences(quiver_, relations_[i], relations_[j]).empty())
                    throw input_error(
                        "relation set is not minimal: " + path_to_string(quiver_, relations_[i]) +
                        " divides " + path_to_string(quiver_, relations_[j]));
            }
    }

    // Breadth-first walk: extend relation-free paths arrow by arrow; a new
    // relation occurrence must end at the freshly appended arrow.
    void enumerate_basis(int cap) {
        std::vector<Path> level;
        for (int v = 0; v < quiver_.num_vertices(); ++v) level.push_back(trivial_path(v));
        basis_ = level;

        for (int len = 1; !level.empty(); ++len) {
            std::vector<Path> next;
            for (const Path& p : level) {
                int at = path_target(quiver_, p);
                for (int a = 0; a < quiver_.num_arrows(); ++a) {
                    if (quiver_.arrow(a).source != at) continue;
                    Path q = p;
                    q.arrows.push_back(a);
                    bool dead = false;
                    for (const Path& r : relations_) {
                        if (r.length() > q.length()) continue;
                        if (subpath(quiver_, q, q.length() - r.length(), r.length()) == r) {
                            dead = true;
                            break;
                        }
                    }
                    if (!dead) next.push_back(std::move(q));
                }
            }
            if (!next.empty() && len > cap)
                throw input_error(
                    "ideal is not admissible within the length cap " + std::to_string(cap) +
                    ": relation-free path " + path_to_string(quiver_, next.front()) + " found");
            std::sort(next.begin(), next.end());
            basis_.insert(basis_.end(), next.begin(), next.end());
            level = std::move(next);
        }

        std::sort(basis_.begin(), basis_.end());
        by_source_.assign(static_cast<std::size_t>(quiver_.num_vertices()), {});
        by_target_.assign(static_cast<std::size_t>(quiver_.num_vertices()), {});
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            int id = static_cast<int>(i);
            basis_index_.emplace(basis_[i], id);
            int s = path_source(basis_[i]);
            int t = path_target(quiver_, basis_[i]);
            by_source_[static_cast<std::size_t>(s)].push_back(id);
            by_target_[static_cast<std::size_t>(t)].push_back(id);
            by_endpoints_[{s, t}].push_back(id);
        }
    }

    Quiver quiver_;
    std::vector<Path> relations_;
    std::vector<Path> basis_;
    std::unordered_map<Path, int, PathHash> basis_index_;
    std::vector<std::vector<int>> by_source_;
    std::vector<std::vector<int>> by_target_;
    std::map<std::pair<int, int>, std::vector<int>> by_endpoints_;
};

/**
 * Exact linear combination of basis paths.  Zero coefficients are never
 * stored, so operator== is semantic equality.
 */
template <class S>
using AlgebraElement = std::map<int, S>;

template <class S>
inline void add_term(AlgebraElement<S>& dst, int id, const S& c) {
    if (c == S(0)) return;
    auto [it, fresh] = dst.emplace(id, c);
    if (!fresh) {
        it->second += c;
        if (it->second == S(0)) dst.erase(it);
    }
}

template <class S>
inline void add_scaled(AlgebraElement<S>& dst, const AlgebraElement<S>& src, const S& c) {
    for (const auto& [id, v] : src) add_term(dst, id, v * c);
}

template <class S>
inline AlgebraElement<S> mul(const MonomialAlgebra& A, const AlgebraElement<S>& a,
                             const AlgebraElement<S>& b) {
    AlgebraElement<S> out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b)
            if (auto k = A.mul(i, j)) add_term(out, *k, ci * cj);
    return out;
}

template <class S>
inline AlgebraElement<S> lmul(const MonomialAlgebra& A, int i, const AlgebraElement<S>& b) {
    AlgebraElement<S> out;
    for (const auto& [j, cj] : b)
        if (auto k = A.mul(i, j)) add_term(out, *k, cj);
    return out;
}

template <class S>
inline AlgebraElement<S> rmul(const MonomialAlgebra& A, const AlgebraElement<S>& a, int j) {
    AlgebraElement<S> out;
    for (const auto& [i, ci] : a)
        if (auto k = A.mul(i, j)) add_term(out, *k, ci);
    return out;
}

template <class S>
inline std::string element_to_string(const MonomialAlgebra& A, const AlgebraElement<S>& e) {
    if (e.empty()) return "0";
    std::string s;
    for (const auto& [id, c] : e) {
        if (!s.empty()) s += " + ";
        s += scalar_to_string(c) + "*" + A.basis_label(id);
    }
    return s;
}

} // namespace hochcomp
