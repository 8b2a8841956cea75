#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hochcomp/algebra.hpp"
#include "hochcomp/bar.hpp"
#include "hochcomp/cohomology.hpp"
#include "hochcomp/comparison.hpp"
#include "hochcomp/field.hpp"
#include "hochcomp/parse.hpp"
#include "hochcomp/resolution.hpp"
#include "hochcomp/threads.hpp"

namespace hochcomp {

/**
 * The graded products on cochains of the minimal complex, evaluated by
 * carrying arguments through the comparison morphisms: arguments are pushed
 * to the bar side with F, windows of bar factors are pulled back with G, and
 * the cochain values multiply in the algebra.
 */
template <class S>
class Products {
public:
    explicit Products(Comparison<S>& C)
        : C_(&C), R_(&C.resolution()), A_(&C.resolution().algebra()) {}

    static const AlgebraElement<S>& value_of(const Cochain<S>& f, int elem) {
        static const AlgebraElement<S> zero;
        auto it = f.values.find(elem);
        return it == f.values.end() ? zero : it->second;
    }

    /** f evaluated through G on the factor window [lo, lo+len) of mids; the
     *  junction vertex names the window's position when it is empty. */
    AlgebraElement<S> eval_window(const Cochain<S>& f, const std::vector<int>& mids, int lo,
                                  int len, int junction_vertex) {
        check_invariant(f.degree == len, "cochain degree disagrees with its window");
        if (len == 0) {
            auto idx = R_->index_of(0, trivial_path(junction_vertex));
            check_invariant(idx.has_value(), "vertex missing from the degree-0 table");
            return value_of(f, *idx);
        }
        BarTensor t{A_->unit_id(A_->source_of(mids[static_cast<std::size_t>(lo)])),
                    {mids.begin() + lo, mids.begin() + lo + len},
                    A_->unit_id(A_->target_of(mids[static_cast<std::size_t>(lo + len - 1)]))};
        AlgebraElement<S> out;
        for (const auto& [k, c] : C_->G(len, t)) {
            const AlgebraElement<S>& val = value_of(f, k.elem);
            if (val.empty()) continue;
            AlgebraElement<S> x = lmul(*A_, k.left, val);
            x = rmul(*A_, x, k.right);
            add_scaled(out, x, c);
        }
        return out;
    }

    Cochain<S> cup(const Cochain<S>& f, const Cochain<S>& g) {
        int p = f.degree, q = g.degree, n = p + q;
        R_->ensure_degree(n);
        int count = R_->size(n);
        std::vector<AlgebraElement<S>> vals(static_cast<std::size_t>(count));
        parallel_for(count, [&](int k) {
            AlgebraElement<S> acc;
            for (const auto& [t, c] : C_->F(n, k)) {
                int jl = A_->basis_path(t.left).base;
                int jm = p == 0 ? jl : A_->target_of(t.middles[static_cast<std::size_t>(p - 1)]);
                AlgebraElement<S> a = eval_window(f, t.middles, 0, p, jl);
                if (a.empty()) continue;
                AlgebraElement<S> b = eval_window(g, t.middles, p, q, jm);
                if (b.empty()) continue;
                AlgebraElement<S> x = mul(*A_, a, b);
                x = lmul(*A_, t.left, x);
                x = rmul(*A_, x, t.right);
                add_scaled(acc, x, c);
            }
            vals[static_cast<std::size_t>(k)] = std::move(acc);
        });
        return collect(n, std::move(vals));
    }

    /** Insertion of g into the i-th argument slot of f (1-based). */
    Cochain<S> circ_i(const Cochain<S>& f, const Cochain<S>& g, int slot) {
        int n = f.degree, m = g.degree, d = n + m - 1;
        check_invariant(n >= 1, "insertion target must have degree >= 1");
        check_invariant(1 <= slot && slot <= n, "insertion slot out of range");
        R_->ensure_degree(std::max(d, n));
        int count = R_->size(d);
        std::vector<AlgebraElement<S>> vals(static_cast<std::size_t>(count));
        parallel_for(count, [&](int k) {
            AlgebraElement<S> acc;
            int start = slot - 1;
            for (const auto& [t, c] : C_->F(d, k)) {
                int jw = start == 0 ? A_->basis_path(t.left).base
                                    : A_->target_of(t.middles[static_cast<std::size_t>(start - 1)]);
                AlgebraElement<S> inner = eval_window(g, t.middles, start, m, jw);
                if (inner.empty()) continue;
                for (const auto& [u, cu] : inner) {
                    std::vector<int> outer;
                    outer.reserve(static_cast<std::size_t>(n));
                    outer.insert(outer.end(), t.middles.begin(), t.middles.begin() + start);
                    outer.push_back(u);
                    outer.insert(outer.end(), t.middles.begin() + start + m, t.middles.end());
                    AlgebraElement<S> fv =
                        eval_window(f, outer, 0, n, A_->basis_path(t.left).base);
                    if (fv.empty()) continue;
                    AlgebraElement<S> x = lmul(*A_, t.left, fv);
                    x = rmul(*A_, x, t.right);
                    add_scaled(acc, x, c * cu);
                }
            }
            vals[static_cast<std::size_t>(k)] = std::move(acc);
        });
        return collect(d, std::move(vals));
    }

    /** Full composition: signed sum of the insertions. */
    Cochain<S> circ(const Cochain<S>& f, const Cochain<S>& g) {
        int n = f.degree, m = g.degree;
        check_invariant(n >= 1, "composition target must have degree >= 1");
        Cochain<S> out;
        out.degree = n + m - 1;
        for (int slot = 1; slot <= n; ++slot) {
            int sign = (slot - 1) * (m - 1) % 2 == 0 ? 1 : -1;
            accumulate(out, circ_i(f, g, slot), S(sign));
        }
        return out;
    }

    Cochain<S> bracket(const Cochain<S>& f, const Cochain<S>& g) {
        int n = f.degree, m = g.degree;
        if (n < 1 || m < 1) throw input_error("bracket arguments must have degree >= 1");
        Cochain<S> out = circ(f, g);
        int sign = (n - 1) * (m - 1) % 2 == 0 ? 1 : -1;
        accumulate(out, circ(g, f), S(-sign));
        return out;
    }

    /** Cup product of cochains of even positive degree read off directly from
     *  the two-sided chain structure of each support, no bar windows. */
    Cochain<S> cup_fast(const Cochain<S>& f, const Cochain<S>& g) {
        int p = f.degree, q = g.degree;
        if (p < 2 || q < 2 || p % 2 != 0 || q % 2 != 0)
            throw input_error("fast cup product requires even degrees >= 2");
        int n = p + q;
        R_->ensure_degree(n);
        const Quiver& qv = A_->quiver();
        Cochain<S> out;
        out.degree = n;
        for (int k = 0; k < R_->size(n); ++k) {
            const APElement& e = R_->element(n, k);
            const Path& w = e.support;
            int prefix_end = occ_end(*A_, e.left_chain[static_cast<std::size_t>(p - 2)]);
            int suffix_start = e.op_chain[static_cast<std::size_t>(p)].offset;
            check_invariant(prefix_end <= suffix_start,
                            "prefix and suffix chains overlap in even degree");
            auto pi = R_->index_of(p, subpath(qv, w, 0, prefix_end));
            auto si = R_->index_of(q, subpath(qv, w, suffix_start, w.length() - suffix_start));
            check_invariant(pi.has_value() && si.has_value(),
                            "two-sided truncations are not resolution elements");
            auto mid = A_->basis_id(subpath(qv, w, prefix_end, suffix_start - prefix_end));
            if (!mid) continue;
            AlgebraElement<S> x = rmul(*A_, value_of(f, *pi), *mid);
            x = mul(*A_, x, value_of(g, *si));
            if (!x.empty()) out.values.emplace(k, std::move(x));
        }
        return out;
    }

    /** The degree-1 cochain dual to one arrow. */
    Cochain<S> arrow_derivation(int arrow) {
        const Quiver& q = A_->quiver();
        check_invariant(arrow >= 0 && arrow < q.num_arrows(), "arrow id out of range");
        Path ap{q.arrow(arrow).source, {arrow}};
        auto idx = R_->index_of(1, ap);
        auto bid = A_->basis_id(ap);
        check_invariant(idx.has_value() && bid.has_value(), "arrow missing from its tables");
        Cochain<S> f;
        f.degree = 1;
        f.values[*idx].emplace(*bid, S(1));
        return f;
    }

    /** Every arrow i -> j must be the only basis path i -> j; otherwise the
     *  combinatorial arrow action below is not defined. */
    void validate_arrow_action_hypothesis() const {
        const Quiver& q = A_->quiver();
        for (int a = 0; a < q.num_arrows(); ++a) {
            const Arrow& ar = q.arrow(a);
            std::size_t d = A_->ids_between(ar.source, ar.target).size();
            if (d != 1)
                throw input_error("arrow action undefined: the space of paths " +
                                  std::to_string(ar.source + 1) + " -> " +
                                  std::to_string(ar.target + 1) + " has dimension " +
                                  std::to_string(d) + ", not 1");
        }
    }

    /** Bracket with the arrow's dual derivation, computed by occurrence
     *  counting: each value path is scaled by the arrow count difference
     *  between the value and the argument support. */
    Cochain<S> delta_action(int arrow, const Cochain<S>& f) {
        validate_arrow_action_hypothesis();
        const Quiver& q = A_->quiver();
        check_invariant(arrow >= 0 && arrow < q.num_arrows(), "arrow id out of range");
        Cochain<S> out;
        out.degree = f.degree;
        auto count_in = [&](const Path& p) {
            return static_cast<long long>(std::count(p.arrows.begin(), p.arrows.end(), arrow));
        };
        for (const auto& [i, val] : f.values) {
            long long cw = count_in(R_->element(f.degree, i).support);
            AlgebraElement<S> nv;
            for (const auto& [gid, c] : val) {
                long long k = count_in(A_->basis_path(gid)) - cw;
                if (k != 0) add_term(nv, gid, c * S(static_cast<int>(k)));
            }
            if (!nv.empty()) out.values.emplace(i, std::move(nv));
        }
        return out;
    }

private:
    Cochain<S> collect(int degree, std::vector<AlgebraElement<S>> vals) {
        Cochain<S> out;
        out.degree = degree;
        for (std::size_t k = 0; k < vals.size(); ++k)
            if (!vals[k].empty()) out.values.emplace(static_cast<int>(k), std::move(vals[k]));
        return out;
    }

    void accumulate(Cochain<S>& dst, const Cochain<S>& src, const S& scale) {
        for (const auto& [i, val] : src.values) {
            add_scaled(dst.values[i], val, scale);
            if (dst.values[i].empty()) dst.values.erase(i);
        }
    }

    Comparison<S>* C_;
    Resolution* R_;
    const MonomialAlgebra* A_;
};

// ---------------------------------------------------------------------------
// Cochain text format: one term per line,
//   AP:<support-label> -> <coeff> * <path-label>
// with degree >= 2 support labels carrying their chain offsets after '@'.
// ---------------------------------------------------------------------------

template <class S>
inline Cochain<S> parse_cochain(Resolution& R, const std::string& text) {
    const MonomialAlgebra& A = R.algebra();
    const Quiver& q = A.quiver();
    Cochain<S> f;
    f.degree = -1;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        auto arrow_pos = line.find("->");
        if (arrow_pos == std::string::npos || line.rfind("AP:", 0) != 0)
            throw input_error(lineno, "want 'AP:<element> -> <coeff> * <path>'");
        std::string elem_label = line.substr(3, arrow_pos - 3);
        while (!elem_label.empty() && (elem_label.back() == ' ' || elem_label.back() == '\t'))
            elem_label.pop_back();
        std::string rhs = line.substr(arrow_pos + 2);

        auto star = rhs.find('*');
        if (star == std::string::npos) throw input_error(lineno, "want '<coeff> * <path>'");
        auto strip = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string coeff_text = strip(rhs.substr(0, star));
        std::string path_text = strip(rhs.substr(star + 1));
        if (coeff_text.empty() || path_text.empty())
            throw input_error(lineno, "want '<coeff> * <path>'");

        std::string support_label = elem_label;
        std::string offsets_text;
        if (auto at = elem_label.find('@'); at != std::string::npos) {
            support_label = elem_label.substr(0, at);
            offsets_text = elem_label.substr(at + 1);
        }

        Path support;
        try {
            support = parse_path_label(q, support_label);
        } catch (const input_error& e) {
            throw input_error(lineno, e.what());
        }
        auto loc = R.locate(support);
        if (!loc)
            throw input_error(lineno, "'" + support_label + "' is not a resolution element");
        auto [degree, idx] = *loc;

        std::string expected;
        if (degree >= 2) {
            const auto& chain = R.element(degree, idx).left_chain;
            for (std::size_t k = 0; k < chain.size(); ++k) {
                if (k) expected += ',';
                expected += std::to_string(chain[k].offset);
            }
        }
        if (offsets_text != expected)
            throw input_error(lineno, "element '" + elem_label + "' should carry offsets '" +
                                          expected + "'");

        if (f.degree < 0) f.degree = degree;
        if (f.degree != degree)
            throw input_error(lineno, "mixed degrees " + std::to_string(f.degree) + " and " +
                                          std::to_string(degree) + " in one cochain");

        S coeff;
        try {
            coeff = parse_scalar<S>(coeff_text);
        } catch (const input_error& e) {
            throw input_error(lineno, e.what());
        }

        Path value;
        try {
            value = parse_path_label(q, path_text);
        } catch (const input_error& e) {
            throw input_error(lineno, e.what());
        }
        auto vid = A.basis_id(value);
        if (!vid) throw input_error(lineno, "'" + path_text + "' lies in the ideal");
        if (path_source(value) != path_source(support) ||
            path_target(q, value) != path_target(q, support))
            throw input_error(lineno, "'" + path_text + "' is not parallel to '" +
                                          support_label + "'");

        add_term(f.values[idx], *vid, coeff);
        if (f.values[idx].empty()) f.values.erase(idx);
    }
    if (f.degree < 0) throw input_error("cochain file holds no terms");
    return f;
}

template <class S>
inline std::string cochain_to_text(Resolution& R, const Cochain<S>& f) {
    const MonomialAlgebra& A = R.algebra();
    std::string out;
    for (const auto& [i, val] : f.values)
        for (const auto& [bid, c] : val) {
            out += "AP:" + R.label(f.degree, i) + " -> " + scalar_to_string(c) + " * " +
                   A.basis_label(bid) + "\n";
        }
    return out;
}

} // namespace hochcomp
