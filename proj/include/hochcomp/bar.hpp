#pragma once

#include <compare>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "hochcomp/algebra.hpp"
#include "hochcomp/common.hpp"

namespace hochcomp {

/**
 * Elementary tensor of the two-sided bar complex taken relative to the vertex
 * span: outer slots and middle factors are algebra basis paths chained head to
 * tail at common vertices.  Trivial paths may appear in any slot.
 */
struct BarTensor {
    int left = 0;
    std::vector<int> middles;
    int right = 0;

    friend bool operator==(const BarTensor&, const BarTensor&) = default;
    friend auto operator<=>(const BarTensor&, const BarTensor&) = default;
};

template <class S>
using BarChain = std::map<BarTensor, S>;

inline bool tensor_valid(const MonomialAlgebra& A, const BarTensor& t) {
    if (t.left < 0 || t.left >= A.dim() || t.right < 0 || t.right >= A.dim()) return false;
    int at = A.target_of(t.left);
    for (int m : t.middles) {
        if (m < 0 || m >= A.dim()) return false;
        if (A.source_of(m) != at) return false;
        at = A.target_of(m);
    }
    return A.source_of(t.right) == at;
}

inline BarTensor make_tensor(const MonomialAlgebra& A, int left, std::vector<int> middles,
                             int right) {
    BarTensor t{left, std::move(middles), right};
    check_invariant(tensor_valid(A, t), "bar tensor factors do not chain");
    return t;
}

template <class S>
inline void add_chain_term(BarChain<S>& dst, const BarTensor& t, const S& c) {
    if (c == S(0)) return;
    auto [it, fresh] = dst.emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second == S(0)) dst.erase(it);
    }
}

/**
 * Terms of the bar boundary of one tensor with n middle factors: the n+1
 * neighbour merges with alternating signs, merges that land in the ideal
 * dropped.  Empty for n = 0.
 */
inline std::vector<std::pair<BarTensor, int>> bar_boundary_terms(const MonomialAlgebra& A,
                                                                 const BarTensor& t) {
    std::vector<std::pair<BarTensor, int>> out;
    int n = static_cast<int>(t.middles.size());
    for (int i = 0; i <= n && n > 0; ++i) {
        int sign = i % 2 == 0 ? 1 : -1;
        if (i == 0) {
            auto p = A.mul(t.left, t.middles[0]);
            if (!p) continue;
            out.emplace_back(
                BarTensor{*p, {t.middles.begin() + 1, t.middles.end()}, t.right}, sign);
        } else if (i == n) {
            auto p = A.mul(t.middles[static_cast<std::size_t>(n - 1)], t.right);
            if (!p) continue;
            out.emplace_back(
                BarTensor{t.left, {t.middles.begin(), t.middles.end() - 1}, *p}, sign);
        } else {
            auto p = A.mul(t.middles[static_cast<std::size_t>(i - 1)],
                           t.middles[static_cast<std::size_t>(i)]);
            if (!p) continue;
            std::vector<int> mids(t.middles.begin(), t.middles.begin() + (i - 1));
            mids.push_back(*p);
            mids.insert(mids.end(), t.middles.begin() + (i + 1), t.middles.end());
            out.emplace_back(BarTensor{t.left, std::move(mids), t.right}, sign);
        }
    }
    return out;
}

template <class S>
inline BarChain<S> bar_boundary(const MonomialAlgebra& A, const BarChain<S>& c) {
    BarChain<S> out;
    for (const auto& [t, coef] : c)
        for (const auto& [s, sign] : bar_boundary_terms(A, t))
            add_chain_term(out, s, coef * S(sign));
    return out;
}

template <class S>
inline BarChain<S> chain_lmul(const MonomialAlgebra& A, int a, const BarChain<S>& c) {
    BarChain<S> out;
    for (const auto& [t, coef] : c)
        if (auto p = A.mul(a, t.left))
            add_chain_term(out, BarTensor{*p, t.middles, t.right}, coef);
    return out;
}

template <class S>
inline BarChain<S> chain_rmul(const MonomialAlgebra& A, const BarChain<S>& c, int a) {
    BarChain<S> out;
    for (const auto& [t, coef] : c)
        if (auto p = A.mul(t.right, a))
            add_chain_term(out, BarTensor{t.left, t.middles, *p}, coef);
    return out;
}

/**
 * Deterministic stream of valid tensors with n middle factors: slots are
 * drawn uniformly among the basis paths leaving the running endpoint, so
 * trivial middles occur naturally.
 */
inline std::vector<BarTensor> sample_tensors(const MonomialAlgebra& A, int n, int count,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<BarTensor> out;
    auto pick = [&](const std::vector<int>& ids) {
        return ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    };
    for (int k = 0; k < count; ++k) {
        BarTensor t;
        t.left = std::uniform_int_distribution<int>(0, A.dim() - 1)(rng);
        int at = A.target_of(t.left);
        for (int j = 0; j < n; ++j) {
            int m = pick(A.ids_from(at));
            t.middles.push_back(m);
            at = A.target_of(m);
        }
        t.right = pick(A.ids_from(at));
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace hochcomp
