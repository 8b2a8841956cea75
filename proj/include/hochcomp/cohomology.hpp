#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochcomp/algebra.hpp"
#include "hochcomp/common.hpp"
#include "hochcomp/resolution.hpp"

namespace hochcomp {

/** Coordinate of the cochain space in one degree: basis element `elem` of the
 *  resolution paired with a parallel algebra basis path `value`. */
struct HomBasisElem {
    int elem = 0;
    int value = 0;

    friend bool operator==(const HomBasisElem&, const HomBasisElem&) = default;
};

inline std::vector<HomBasisElem> hom_basis(Resolution& R, int n) {
    const MonomialAlgebra& A = R.algebra();
    std::vector<HomBasisElem> out;
    for (int i = 0; i < R.size(n); ++i) {
        const APElement& e = R.element(n, i);
        int s = path_source(e.support);
        int t = path_target(A.quiver(), e.support);
        for (int b : A.ids_between(s, t)) out.push_back(HomBasisElem{i, b});
    }
    return out;
}

inline std::map<std::pair<int, int>, int> hom_basis_index(const std::vector<HomBasisElem>& b) {
    std::map<std::pair<int, int>, int> out;
    for (std::size_t k = 0; k < b.size(); ++k)
        out.emplace(std::make_pair(b[k].elem, b[k].value), static_cast<int>(k));
    return out;
}

/** A cochain on the minimal complex: elementwise values in the algebra,
 *  supported on finitely many basis elements of its degree. */
template <class S>
struct Cochain {
    int degree = 0;
    std::map<int, AlgebraElement<S>> values;

    friend bool operator==(const Cochain&, const Cochain&) = default;
};

template <class S>
inline std::vector<S> cochain_to_vector(const std::vector<HomBasisElem>& basis,
                                        const std::map<std::pair<int, int>, int>& index,
                                        const Cochain<S>& f) {
    std::vector<S> v(basis.size(), S(0));
    for (const auto& [elem, val] : f.values)
        for (const auto& [bid, c] : val) {
            auto it = index.find({elem, bid});
            check_invariant(it != index.end(), "cochain value is not parallel to its argument");
            v[static_cast<std::size_t>(it->second)] = c;
        }
    return v;
}

template <class S>
inline Cochain<S> vector_to_cochain(int degree, const std::vector<HomBasisElem>& basis,
                                    const std::vector<S>& v) {
    Cochain<S> f;
    f.degree = degree;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!(v[k] == S(0))) add_term(f.values[basis[k].elem], basis[k].value, v[k]);
    std::erase_if(f.values, [](const auto& kv) { return kv.second.empty(); });
    return f;
}

// ---------------------------------------------------------------------------
// Exact dense linear algebra.
// ---------------------------------------------------------------------------

template <class S>
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<S>> a;

    DenseMatrix() = default;
    DenseMatrix(int r, int c)
        : rows(r), cols(c),
          a(static_cast<std::size_t>(r), std::vector<S>(static_cast<std::size_t>(c), S(0))) {}

    std::vector<S> column(int c) const {
        std::vector<S> v(static_cast<std::size_t>(rows), S(0));
        for (int r = 0; r < rows; ++r)
            v[static_cast<std::size_t>(r)] = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        return v;
    }
};

template <class S>
inline std::vector<S> matvec(const DenseMatrix<S>& M, const std::vector<S>& x) {
    check_invariant(static_cast<int>(x.size()) == M.cols, "matrix-vector size mismatch");
    std::vector<S> y(static_cast<std::size_t>(M.rows), S(0));
    for (int r = 0; r < M.rows; ++r)
        for (int c = 0; c < M.cols; ++c)
            if (!(M.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == S(0)))
                y[static_cast<std::size_t>(r)] +=
                    M.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                    x[static_cast<std::size_t>(c)];
    return y;
}

template <class S>
struct RrefResult {
    DenseMatrix<S> m;
    std::vector<int> pivot_cols;
};

/** Reduced row echelon form with the first nonzero entry of each column as
 *  pivot; fully deterministic for a given input. */
template <class S>
inline RrefResult<S> rref(DenseMatrix<S> m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = -1;
        for (int r = row; r < m.rows; ++r)
            if (!(m.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] == S(0))) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(m.a[static_cast<std::size_t>(p)], m.a[static_cast<std::size_t>(row)]);
        S inv = S(1) / m.a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        for (int c = col; c < m.cols; ++c)
            m.a[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            S f = m.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == S(0)) continue;
            for (int c = col; c < m.cols; ++c)
                m.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * m.a[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
        }
        pivots.push_back(col);
        ++row;
    }
    return RrefResult<S>{std::move(m), std::move(pivots)};
}

template <class S>
inline int rank_of(DenseMatrix<S> m) {
    return static_cast<int>(rref(std::move(m)).pivot_cols.size());
}

/** Kernel basis, one vector per free column in ascending column order. */
template <class S>
inline std::vector<std::vector<S>> nullspace(const DenseMatrix<S>& m) {
    RrefResult<S> r = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
    for (int c : r.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<S>> out;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<S> v(static_cast<std::size_t>(m.cols), S(0));
        v[static_cast<std::size_t>(free)] = S(1);
        for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
            v[static_cast<std::size_t>(r.pivot_cols[k])] =
                -r.m.a[k][static_cast<std::size_t>(free)];
        out.push_back(std::move(v));
    }
    return out;
}

/** Incrementally maintained row space used to test independence. */
template <class S>
class GaussBasis {
public:
    bool insert(std::vector<S> v) {
        for (const auto& [piv, row] : rows_) {
            S f = v[static_cast<std::size_t>(piv)];
            if (f == S(0)) continue;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= f * row[k];
        }
        int p = -1;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!(v[k] == S(0))) {
                p = static_cast<int>(k);
                break;
            }
        if (p < 0) return false;
        S inv = S(1) / v[static_cast<std::size_t>(p)];
        for (auto& x : v) x *= inv;
        rows_.emplace(p, std::move(v));
        return true;
    }

    int dim() const { return static_cast<int>(rows_.size()); }

private:
    std::map<int, std::vector<S>> rows_;
};

/** Solve cols * x = target; nullopt when target is outside the span.  Free
 *  coordinates are set to zero, so the solution is deterministic. */
template <class S>
inline std::optional<std::vector<S>> solve_in_columns(const std::vector<std::vector<S>>& cols,
                                                      const std::vector<S>& target) {
    std::size_t rows = target.size();
    for (const auto& c : cols) check_invariant(c.size() == rows, "column height mismatch");
    DenseMatrix<S> m(static_cast<int>(rows), static_cast<int>(cols.size()) + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) m.a[r][c] = cols[c][r];
        m.a[r][cols.size()] = target[r];
    }
    RrefResult<S> rr = rref(std::move(m));
    std::vector<S> x(cols.size(), S(0));
    for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k) {
        if (rr.pivot_cols[k] == static_cast<int>(cols.size())) return std::nullopt;
        x[static_cast<std::size_t>(rr.pivot_cols[k])] = rr.m.a[k][cols.size()];
    }
    return x;
}

// ---------------------------------------------------------------------------
// Cohomology.
// ---------------------------------------------------------------------------

/** Matrix of the coboundary raising degree n-1 cochains to degree n, in the
 *  hom bases src (degree n-1) and dst (degree n). */
template <class S>
inline DenseMatrix<S> coboundary_matrix(Resolution& R, int n,
                                        const std::vector<HomBasisElem>& src,
                                        const std::vector<HomBasisElem>& dst) {
    const MonomialAlgebra& A = R.algebra();
    auto src_index = hom_basis_index(src);
    auto dst_index = hom_basis_index(dst);
    DenseMatrix<S> M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (int i = 0; i < R.size(n); ++i) {
        for (const DiffTerm& t : R.differential(n, i)) {
            auto l0 = A.basis_id(t.left);
            if (!l0) continue;
            auto r0 = A.basis_id(t.right);
            if (!r0) continue;
            const Path& cs = R.element(n - 1, t.child).support;
            for (int v : A.ids_between(path_source(cs), path_target(A.quiver(), cs))) {
                auto x = A.mul(*l0, v);
                if (!x) continue;
                auto y = A.mul(*x, *r0);
                if (!y) continue;
                auto row = dst_index.find({i, *y});
                check_invariant(row != dst_index.end(), "coboundary image leaves the hom basis");
                auto col = src_index.find({t.child, v});
                check_invariant(col != src_index.end(), "hom basis misses a differential child");
                M.a[static_cast<std::size_t>(row->second)][static_cast<std::size_t>(col->second)] +=
                    S(t.sign);
            }
        }
    }
    return M;
}

template <class S>
struct HHResult {
    int degree = 0;
    int dim = 0;
    int cochain_dim = 0;
    int kernel_dim = 0;
    int image_dim = 0;
    std::vector<HomBasisElem> basis;                 // hom basis in this degree
    std::vector<Cochain<S>> representatives;         // one cocycle per class
    std::vector<std::vector<S>> rep_vectors;         // the same in coordinates
    std::vector<std::vector<S>> image_columns;       // independent coboundaries
};

/** Cohomology of the cochain complex in one degree, with representatives:
 *  kernel vectors of the outgoing coboundary that extend the span of the
 *  incoming image, each scaled to leading coefficient 1. */
template <class S>
inline HHResult<S> hochschild(Resolution& R, int n) {
    R.ensure_degree(n + 1);
    HHResult<S> res;
    res.degree = n;
    res.basis = hom_basis(R, n);
    res.cochain_dim = static_cast<int>(res.basis.size());

    auto dst = hom_basis(R, n + 1);
    DenseMatrix<S> out_matrix = coboundary_matrix<S>(R, n + 1, res.basis, dst);
    auto kernel = nullspace(out_matrix);
    res.kernel_dim = static_cast<int>(kernel.size());

    GaussBasis<S> span;
    if (n >= 1) {
        auto src = hom_basis(R, n - 1);
        DenseMatrix<S> in_matrix = coboundary_matrix<S>(R, n, src, res.basis);
        for (int c = 0; c < in_matrix.cols; ++c) {
            auto col = in_matrix.column(c);
            if (span.insert(col)) res.image_columns.push_back(std::move(col));
        }
    }
    res.image_dim = static_cast<int>(res.image_columns.size());

    for (auto& v : kernel) {
        if (!span.insert(v)) continue;
        int lead = -1;
        for (std::size_t k = 0; k < v.size() && lead < 0; ++k)
            if (!(v[k] == S(0))) lead = static_cast<int>(k);
        check_invariant(lead >= 0, "zero vector escaped the span filter");
        S inv = S(1) / v[static_cast<std::size_t>(lead)];
        for (auto& x : v) x *= inv;
        res.representatives.push_back(vector_to_cochain(n, res.basis, v));
        res.rep_vectors.push_back(std::move(v));
    }
    res.dim = static_cast<int>(res.rep_vectors.size());
    check_invariant(res.dim == res.kernel_dim - res.image_dim,
                    "independent-representative count disagrees with rank arithmetic");
    return res;
}

/** Coordinates of a cocycle's class in the representative basis. */
template <class S>
inline std::optional<std::vector<S>> class_coordinates(const HHResult<S>& hh,
                                                       const std::vector<S>& vec) {
    std::vector<std::vector<S>> cols = hh.rep_vectors;
    cols.insert(cols.end(), hh.image_columns.begin(), hh.image_columns.end());
    auto x = solve_in_columns(cols, vec);
    if (!x) return std::nullopt;
    return std::vector<S>(x->begin(), x->begin() + static_cast<long>(hh.rep_vectors.size()));
}

/** Dimension of the centre, from the commutation constraints against the
 *  algebra generators (vertex idempotents and arrows). */
template <class S>
inline int center_dim(const MonomialAlgebra& A) {
    std::vector<int> gens;
    for (int v = 0; v < A.quiver().num_vertices(); ++v) gens.push_back(A.unit_id(v));
    for (int a = 0; a < A.quiver().num_arrows(); ++a) {
        auto id = A.basis_id(Path{A.quiver().arrow(a).source, {a}});
        check_invariant(id.has_value(), "arrow missing from the algebra basis");
        gens.push_back(*id);
    }
    int d = A.dim();
    DenseMatrix<S> M(static_cast<int>(gens.size()) * d, d);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        for (int b = 0; b < d; ++b) {
            if (auto p = A.mul(b, gens[gi]))
                M.a[gi * static_cast<std::size_t>(d) + static_cast<std::size_t>(*p)]
                   [static_cast<std::size_t>(b)] += S(1);
            if (auto p = A.mul(gens[gi], b))
                M.a[gi * static_cast<std::size_t>(d) + static_cast<std::size_t>(*p)]
                   [static_cast<std::size_t>(b)] -= S(1);
        }
    }
    return d - rank_of(std::move(M));
}

} // namespace hochcomp
