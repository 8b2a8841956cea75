#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "hochcomp/common.hpp"

namespace hochcomp {

/** Exact rational scalar (GMP-backed, plain value semantics). */
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/**
 * Prime field GF(p) with a run-wide modulus.  The field is a run-wide
 * parameter, so a process-global modulus keeps the scalar a plain value type.
 */
class Fp {
public:
    Fp() = default;
    Fp(long long v) { // NOLINT(google-explicit-constructor) scalar-from-int
        long long m = static_cast<long long>(modulus());
        long long r = v % m;
        if (r < 0) r += m;
        v_ = static_cast<std::uint64_t>(r);
    }

    static void set_modulus(std::uint64_t p) {
        if (p < 2 || !is_prime(p)) throw input_error("field modulus must be prime, got " + std::to_string(p));
        if (p >= (1ull << 31)) throw input_error("field modulus must be < 2^31");
        modulus_ref() = p;
    }
    static std::uint64_t modulus() {
        if (modulus_ref() == 0) throw invariant_error("GF(p) used before set_modulus");
        return modulus_ref();
    }

    std::uint64_t value() const { return v_; }

    friend bool operator==(const Fp&, const Fp&) = default;

    Fp& operator+=(const Fp& o) { v_ = (v_ + o.v_) % modulus(); return *this; }
    Fp& operator-=(const Fp& o) { v_ = (v_ + modulus() - o.v_) % modulus(); return *this; }
    Fp& operator*=(const Fp& o) {
        v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % modulus());
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    Fp operator-() const { return Fp(0) - *this; }

    Fp inverse() const {
        if (v_ == 0) throw invariant_error("division by zero in GF(p)");
        // Fermat: v^(p-2)
        std::uint64_t e = modulus() - 2, b = v_, r = 1;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % modulus());
            b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % modulus());
            e >>= 1;
        }
        return from_raw(r);
    }

    friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

private:
    static Fp from_raw(std::uint64_t v) { Fp x; x.v_ = v; return x; }
    static std::uint64_t& modulus_ref() { static std::uint64_t m = 0; return m; }
    static bool is_prime(std::uint64_t p) {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }
    std::uint64_t v_ = 0;
};

template <class S> inline bool is_zero(const S& s) { return s == S(0); }

template <class S> inline std::string scalar_to_string(const S& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

/** Parse a scalar literal: an integer, or a/b for rationals. */
template <class S> inline S parse_scalar(const std::string& text);

template <> inline Rational parse_scalar<Rational>(const std::string& text) {
    auto parse_int = [&text](const std::string& s) -> Rational {
        std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (k == s.size()) throw input_error("bad rational literal '" + text + "'");
        for (std::size_t j = k; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw input_error("bad rational literal '" + text + "'");
        return Rational(s);
    };
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) return parse_int(text);
    Rational num = parse_int(text.substr(0, slash));
    Rational den = parse_int(text.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in '" + text + "'");
    return num / den;
}

template <> inline Fp parse_scalar<Fp>(const std::string& text) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size()) throw input_error("");
        return Fp(v);
    } catch (const std::exception&) {
        throw input_error("bad integer literal '" + text + "'");
    }
}

/** Runtime field selector parsed from the CLI ("rational" or "p:<prime>"). */
struct FieldSpec {
    bool rational = true;
    std::uint64_t p = 0;

    static FieldSpec parse(const std::string& text) {
        if (text == "rational") return FieldSpec{true, 0};
        if (text.rfind("p:", 0) == 0) {
            FieldSpec f{false, 0};
            try {
                f.p = std::stoull(text.substr(2));
            } catch (...) {
                throw input_error("bad field spec '" + text + "' (want rational or p:<prime>)");
            }
            return f;
        }
        throw input_error("bad field spec '" + text + "' (want rational or p:<prime>)");
    }

    std::string name() const { return rational ? "rational" : "p:" + std::to_string(p); }
};

} // namespace hochcomp
