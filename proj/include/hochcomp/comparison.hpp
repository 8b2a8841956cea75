#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "hochcomp/algebra.hpp"
#include "hochcomp/bar.hpp"
#include "hochcomp/common.hpp"
#include "hochcomp/resolution.hpp"

namespace hochcomp {

/** One summand left (x) element (x) right of a chain in the minimal complex. */
struct BdzKey {
    int left = 0;
    int elem = 0;
    int right = 0;

    friend bool operator==(const BdzKey&, const BdzKey&) = default;
    friend auto operator<=>(const BdzKey&, const BdzKey&) = default;
};

template <class S>
using BdzChain = std::map<BdzKey, S>;

template <class S>
inline void add_bdz_term(BdzChain<S>& dst, const BdzKey& k, const S& c) {
    if (c == S(0)) return;
    auto [it, fresh] = dst.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == S(0)) dst.erase(it);
    }
}

/**
 * The pair of mutually inverse-up-to-homotopy comparison morphisms between
 * the minimal complex and the bar complex.  F carries a resolution basis
 * element to a bar chain with nonnegative integer coefficients; G carries a
 * bar tensor back.  Both directions are memoized; the caches are guarded, so
 * concurrent evaluation is fine once the needed resolution degrees exist.
 */
template <class S>
class Comparison {
public:
    explicit Comparison(Resolution& R) : R_(&R), A_(&R.algebra()) {}

    Resolution& resolution() const { return *R_; }
    const MonomialAlgebra& algebra() const { return *A_; }

    /** Image of resolution basis element i of degree n in the bar complex. */
    const BarChain<S>& F(int n, int i) {
        std::pair<int, int> key{n, i};
        {
            std::shared_lock lk(f_mu_);
            auto it = f_memo_.find(key);
            if (it != f_memo_.end()) return it->second;
        }
        BarChain<S> val = compute_F(n, i);
        std::unique_lock lk(f_mu_);
        auto [it, fresh] = f_memo_.try_emplace(std::move(key), std::move(val));
        (void)fresh;
        return it->second;
    }

    /** Image of a bar tensor with n middle factors in the minimal complex. */
    BdzChain<S> G(int n, const BarTensor& t) {
        check_invariant(static_cast<int>(t.middles.size()) == n,
                        "tensor degree disagrees with the requested degree");
        check_invariant(tensor_valid(*A_, t), "bar tensor factors do not chain");
        BdzChain<S> out;
        if (n == 0) {
            int v = A_->target_of(t.left);
            auto idx = R_->index_of(0, trivial_path(v));
            check_invariant(idx.has_value(), "vertex missing from the degree-0 table");
            add_bdz_term(out, BdzKey{t.left, *idx, t.right}, S(1));
            return out;
        }
        for (const CoreTerm& ct : g_core(n, t.middles)) {
            auto l = A_->mul(t.left, ct.left);
            if (!l) continue;
            auto r = A_->mul(ct.right, t.right);
            if (!r) continue;
            add_bdz_term(out, BdzKey{*l, ct.elem, *r}, S(1));
        }
        return out;
    }

    /** The unique term of F with trivial right slot (always coefficient 1). */
    BarTensor principal_term(int n, int i) {
        const BarChain<S>& f = F(n, i);
        std::optional<BarTensor> found;
        for (const auto& [t, c] : f) {
            if (!A_->basis_path(t.right).trivial()) continue;
            check_invariant(!found.has_value(), "two expansion terms with trivial right slot");
            check_invariant(c == S(1), "anchored expansion term with coefficient != 1");
            found = t;
        }
        check_invariant(found.has_value(), "expansion lacks a term with trivial right slot");
        return *found;
    }

    /** Differential of the minimal complex applied to a degree n chain. */
    BdzChain<S> apply_differential(int n, const BdzChain<S>& c) {
        BdzChain<S> out;
        for (const auto& [k, coef] : c) {
            for (const DiffTerm& dt : R_->differential(n, k.elem)) {
                auto l0 = A_->basis_id(dt.left);
                if (!l0) continue;
                auto r0 = A_->basis_id(dt.right);
                if (!r0) continue;
                auto l = A_->mul(k.left, *l0);
                if (!l) continue;
                auto r = A_->mul(*r0, k.right);
                if (!r) continue;
                add_bdz_term(out, BdzKey{*l, dt.child, *r}, coef * S(dt.sign));
            }
        }
        return out;
    }

private:
    struct CoreTerm {
        int left = 0;
        int elem = 0;
        int right = 0;
    };

    BarChain<S> compute_F(int n, int i) {
        const MonomialAlgebra& A = *A_;
        const Quiver& q = A.quiver();
        const APElement& e = R_->element(n, i);
        BarChain<S> out;
        if (n == 0) {
            int u = A.unit_id(e.support.base);
            out.emplace(BarTensor{u, {}, u}, S(1));
            return out;
        }
        if (n == 1) {
            auto a = A.basis_id(e.support);
            check_invariant(a.has_value(), "arrow missing from the algebra basis");
            out.emplace(BarTensor{A.unit_id(path_source(e.support)),
                                  {*a},
                                  A.unit_id(path_target(q, e.support))},
                        S(1));
            return out;
        }
        const Path& w = e.support;
        const auto& entries = R_->sub(n, i);
        int lunit = A.unit_id(path_source(w));
        for (std::size_t k = 1; k < entries.size(); ++k) {
            const SubEntry& se = entries[k];
            int clen = R_->element(n - 1, se.child).support.length();
            Path left = subpath(q, w, 0, se.offset);
            Path rest = subpath(q, w, se.offset + clen, w.length() - se.offset - clen);
            auto l_id = A.basis_id(left);
            if (!l_id) continue;
            for (const auto& [t, c] : F(n - 1, se.child)) {
                check_invariant(A.basis_path(t.left).trivial(),
                                "expansion term with nontrivial left slot");
                auto rp = compose(q, A.basis_path(t.right), rest);
                check_invariant(rp.has_value(), "right complement does not chain");
                auto r_id = A.basis_id(*rp);
                if (!r_id) continue;
                BarTensor nt{lunit, {}, *r_id};
                nt.middles.reserve(t.middles.size() + 1);
                nt.middles.push_back(*l_id);
                nt.middles.insert(nt.middles.end(), t.middles.begin(), t.middles.end());
                add_chain_term(out, nt, c);
            }
        }
        return out;
    }

    const std::vector<CoreTerm>& g_core(int n, const std::vector<int>& mids) {
        std::pair<int, std::vector<int>> key{n, mids};
        {
            std::shared_lock lk(g_mu_);
            auto it = g_memo_.find(key);
            if (it != g_memo_.end()) return it->second;
        }
        std::vector<CoreTerm> terms = compute_core(n, mids);
        std::unique_lock lk(g_mu_);
        auto [it, fresh] = g_memo_.try_emplace(std::move(key), std::move(terms));
        (void)fresh;
        return it->second;
    }

    std::vector<CoreTerm> compute_core(int n, const std::vector<int>& mids) {
        const MonomialAlgebra& A = *A_;
        const Quiver& q = A.quiver();
        std::vector<CoreTerm> terms;

        // Vanishing pattern: in even degree every factor pair (1,2), (3,4),
        // ... must multiply to zero; in odd degree >= 3 the shifted pairs
        // (2,3), (4,5), ... must.  A tensor that fails maps to zero.
        if (n >= 2) {
            int start = n % 2 == 0 ? 0 : 1;
            for (int j = start; j + 1 < n; j += 2)
                if (A.mul(mids[static_cast<std::size_t>(j)],
                          mids[static_cast<std::size_t>(j + 1)]))
                    return terms;
        }

        Path T = A.basis_path(mids[0]);
        for (int k = 1; k < n; ++k) {
            const Path& nxt = A.basis_path(mids[static_cast<std::size_t>(k)]);
            check_invariant(path_target(q, T) == nxt.base, "middle factors do not chain");
            T.arrows.insert(T.arrows.end(), nxt.arrows.begin(), nxt.arrows.end());
        }

        struct Entry {
            int offset;
            int elem;
            int len;
        };
        std::vector<Entry> entries;
        if (n == 1) {
            for (int o = 0; o < T.length(); ++o) {
                auto idx = R_->index_of(1, subpath(q, T, o, 1));
                check_invariant(idx.has_value(), "arrow missing from the degree-1 table");
                entries.push_back(Entry{o, *idx, 1});
            }
        } else {
            for (int o = 0; o < T.length(); ++o) {
                auto chain = greedy_chain_from(A, T, o, n - 1);
                if (static_cast<int>(chain.size()) != n - 1) continue;
                int end = occ_end(A, chain.back());
                auto idx = R_->index_of(n, subpath(q, T, o, end - o));
                check_invariant(idx.has_value(), "complete chain span missing from its table");
                entries.push_back(Entry{o, *idx, end - o});
            }
        }
        if (entries.empty()) return terms;

        auto complements = [&](const Entry& e) {
            auto l = A.basis_id(subpath(q, T, 0, e.offset));
            auto r = A.basis_id(subpath(q, T, e.offset + e.len, T.length() - e.offset - e.len));
            return std::make_pair(l, r);
        };

        if (n % 2 == 0) {
            // Even degree: only the occurrence of least offset counts, and a
            // dead complement kills the value outright.
            auto [l, r] = complements(entries.front());
            if (l && r) terms.push_back(CoreTerm{*l, entries.front().elem, *r});
        } else {
            // Odd degree: sum the occurrences starting inside the first
            // factor; terms with a dead complement drop individually.
            int limit = A.basis_path(mids[0]).length();
            for (const Entry& e : entries) {
                if (e.offset >= limit) break;
                auto [l, r] = complements(e);
                if (l && r) terms.push_back(CoreTerm{*l, e.elem, *r});
            }
        }
        return terms;
    }

    Resolution* R_;
    const MonomialAlgebra* A_;
    std::map<std::pair<int, int>, BarChain<S>> f_memo_;
    std::shared_mutex f_mu_;
    std::map<std::pair<int, std::vector<int>>, std::vector<CoreTerm>> g_memo_;
    std::shared_mutex g_mu_;
};

/** F commutes with the differentials through degree max_degree. */
template <class S>
inline CheckReport verify_chain_map_F(Comparison<S>& C, int max_degree) {
    Resolution& R = C.resolution();
    const MonomialAlgebra& A = C.algebra();
    CheckReport rep;
    for (int n = 1; n <= max_degree && rep.ok; ++n) {
        for (int i = 0; i < R.size(n) && rep.ok; ++i) {
            BarChain<S> lhs = bar_boundary(A, C.F(n, i));
            BarChain<S> rhs;
            for (const DiffTerm& t : R.differential(n, i)) {
                auto l = A.basis_id(t.left);
                if (!l) continue;
                auto r = A.basis_id(t.right);
                if (!r) continue;
                for (const auto& [bt, c] : C.F(n - 1, t.child)) {
                    auto lt = A.mul(*l, bt.left);
                    if (!lt) continue;
                    auto rt = A.mul(bt.right, *r);
                    if (!rt) continue;
                    add_chain_term(rhs, BarTensor{*lt, bt.middles, *rt}, c * S(t.sign));
                }
            }
            ++rep.checked;
            if (lhs != rhs) {
                rep.ok = false;
                rep.detail = "downward comparison fails to intertwine on " + R.label(n, i);
            }
        }
    }
    return rep;
}

/** G after F is the identity of the minimal complex through max_degree. */
template <class S>
inline CheckReport verify_roundtrip(Comparison<S>& C, int max_degree) {
    Resolution& R = C.resolution();
    const MonomialAlgebra& A = C.algebra();
    CheckReport rep;
    for (int n = 0; n <= max_degree && rep.ok; ++n) {
        for (int i = 0; i < R.size(n) && rep.ok; ++i) {
            BdzChain<S> acc;
            for (const auto& [t, c] : C.F(n, i))
                for (const auto& [k, ck] : C.G(n, t)) add_bdz_term(acc, k, ck * c);
            const Path& w = R.element(n, i).support;
            BdzChain<S> expect;
            expect.emplace(BdzKey{A.unit_id(path_source(w)),
                                  i,
                                  A.unit_id(path_target(A.quiver(), w))},
                           S(1));
            ++rep.checked;
            if (acc != expect) {
                rep.ok = false;
                rep.detail = "roundtrip is not the identity on " + R.label(n, i);
            }
        }
    }
    return rep;
}

/** G commutes with the differentials on sampled tensors of each degree. */
template <class S>
inline CheckReport verify_chain_map_G(Comparison<S>& C, int max_degree, int samples_per_degree,
                                      std::uint64_t seed) {
    Resolution& R = C.resolution();
    const MonomialAlgebra& A = C.algebra();
    R.ensure_degree(max_degree);
    CheckReport rep;
    for (int n = 1; n <= max_degree && rep.ok; ++n) {
        auto tensors = sample_tensors(A, n, samples_per_degree, seed + static_cast<std::uint64_t>(n));
        for (const BarTensor& t : tensors) {
            BdzChain<S> lhs = C.apply_differential(n, C.G(n, t));
            BdzChain<S> rhs;
            for (const auto& [bt, sign] : bar_boundary_terms(A, t))
                for (const auto& [k, c] : C.G(n - 1, bt)) add_bdz_term(rhs, k, c * S(sign));
            ++rep.checked;
            if (lhs != rhs) {
                rep.ok = false;
                rep.detail = "upward comparison fails to intertwine on a sampled tensor of degree " +
                             std::to_string(n);
                break;
            }
        }
    }
    return rep;
}

} // namespace hochcomp
