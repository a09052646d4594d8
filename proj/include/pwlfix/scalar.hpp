#pragma once

#include <atomic>
#include <charconv>
#include <cmath>
#include <string>
#include <type_traits>

#include "pwlfix/rational.hpp"

namespace pwlfix {

namespace detail {
inline std::atomic<double>& float_epsilon_storage() {
    static std::atomic<double> eps{1e-12};
    return eps;
}
}  // namespace detail

/// Ambient relative tolerance for the float backend (default 1e-12).
inline double float_epsilon() { return detail::float_epsilon_storage().load(std::memory_order_relaxed); }
inline void set_float_epsilon(double eps) { detail::float_epsilon_storage().store(eps, std::memory_order_relaxed); }

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static std::string str(const Rational& v) { return v.str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    // Shortest round-trip representation; keeps serialized output byte-stable.
    static std::string str(double v) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        (void)ec;
        return std::string(buf, ptr);
    }
};

template <class S>
concept ScalarType = std::is_same_v<S, Rational> || std::is_same_v<S, double>;

template <ScalarType S>
S abs_value(const S& v) {
    if constexpr (scalar_traits<S>::is_exact) {
        return v.abs();
    } else {
        return std::fabs(v);
    }
}

inline int sign_of(const Rational& v) { return v.sign(); }
inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/// Relative closeness test used by the float backend; exact equality for rationals.
inline bool scalar_close(const Rational& a, const Rational& b) { return a == b; }
inline bool scalar_close(double a, double b) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= float_epsilon() * scale;
}

}  // namespace pwlfix
