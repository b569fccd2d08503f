#pragma once

// Forward-mode dual numbers with a tangent per coordinate direction.
//
// Nesting gives higher derivatives: Dual<Dual<double>> seeded in both levels
// carries the value, gradient and Hessian of any expression built from the
// supported operations, exact to rounding.

#include <array>
#include <cmath>
#include <concepts>
#include <type_traits>

namespace vtlab {

inline constexpr int kMaxDim = 4;

template <typename T>
struct Dual {
    using value_type = T;

    T v{};
    std::array<T, kMaxDim> d{};

    Dual() = default;
    Dual(double c) : v(c) {}  // NOLINT(google-explicit-constructor)
    template <typename U>
        requires(std::same_as<U, T> && !std::same_as<T, double>)
    Dual(const U& c) : v(c) {}  // NOLINT(google-explicit-constructor)
    Dual(const T& value, const std::array<T, kMaxDim>& tangent) : v(value), d(tangent) {}

    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (int i = 0; i < kMaxDim; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (int i = 0; i < kMaxDim; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    Dual& operator*=(double c) {
        v *= c;
        for (auto& x : d) x *= c;
        return *this;
    }
    Dual& operator/=(const Dual& o) { return *this = *this / o; }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator-(Dual a) {
        a.v = -a.v;
        for (auto& x : a.d) x = -x;
        return a;
    }
    friend Dual operator*(const Dual& a, const Dual& b) {
        Dual r;
        r.v = a.v * b.v;
        for (int i = 0; i < kMaxDim; ++i) r.d[i] = a.v * b.d[i] + a.d[i] * b.v;
        return r;
    }
    friend Dual operator*(Dual a, double c) { return a *= c; }
    friend Dual operator*(double c, Dual a) { return a *= c; }
    friend Dual operator/(const Dual& a, const Dual& b) {
        const T inv = T(1.0) / b.v;
        Dual r;
        r.v = a.v * inv;
        for (int i = 0; i < kMaxDim; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
        return r;
    }
    friend Dual operator/(Dual a, double c) { return a *= (1.0 / c); }
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;

template <typename T>
struct is_dual : std::false_type {};
template <typename T>
struct is_dual<Dual<T>> : std::true_type {};

// Innermost value of a (possibly nested) dual number.
inline double primal(double x) { return x; }
template <typename T>
double primal(const Dual<T>& x) {
    return primal(x.v);
}

template <typename T>
bool operator<(const Dual<T>& a, const Dual<T>& b) {
    return primal(a) < primal(b);
}
template <typename T>
bool operator>(const Dual<T>& a, const Dual<T>& b) {
    return primal(a) > primal(b);
}

namespace detail {

template <typename T>
Dual<T> chain(const Dual<T>& x, const T& f, const T& df) {
    Dual<T> r;
    r.v = f;
    for (int i = 0; i < kMaxDim; ++i) r.d[i] = df * x.d[i];
    return r;
}

}  // namespace detail

template <typename T>
Dual<T> sin(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return detail::chain(x, T(sin(x.v)), T(cos(x.v)));
}
template <typename T>
Dual<T> cos(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return detail::chain(x, T(cos(x.v)), T(-sin(x.v)));
}
template <typename T>
Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    const T e = exp(x.v);
    return detail::chain(x, e, e);
}
template <typename T>
Dual<T> log(const Dual<T>& x) {
    using std::log;
    return detail::chain(x, T(log(x.v)), T(T(1.0) / x.v));
}
template <typename T>
Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    const T s = sqrt(x.v);
    return detail::chain(x, s, T(T(0.5) / s));
}
template <typename T>
Dual<T> sinh(const Dual<T>& x) {
    using std::cosh;
    using std::sinh;
    return detail::chain(x, T(sinh(x.v)), T(cosh(x.v)));
}
template <typename T>
Dual<T> cosh(const Dual<T>& x) {
    using std::cosh;
    using std::sinh;
    return detail::chain(x, T(cosh(x.v)), T(sinh(x.v)));
}
template <typename T>
Dual<T> tanh(const Dual<T>& x) {
    using std::tanh;
    const T th = tanh(x.v);
    return detail::chain(x, th, T(T(1.0) - th * th));
}
template <typename T>
Dual<T> atan(const Dual<T>& x) {
    using std::atan;
    return detail::chain(x, T(atan(x.v)), T(T(1.0) / (T(1.0) + x.v * x.v)));
}
template <typename T>
Dual<T> pow(const Dual<T>& x, double p) {
    using std::pow;
    return detail::chain(x, T(pow(x.v, p)), T(p * pow(x.v, p - 1.0)));
}

// Independent variable x_i seeded in every nesting level.
template <typename T>
T seed_variable_as(double x, int i) {
    if constexpr (std::is_same_v<T, double>) {
        return x;
    } else {
        T r;
        r.v = seed_variable_as<typename T::value_type>(x, i);
        r.d[i] = typename T::value_type(1.0);
        return r;
    }
}

}  // namespace vtlab
