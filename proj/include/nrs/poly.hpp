#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "nrs/errors.hpp"
#include "nrs/rational.hpp"

namespace nrs {

// Scalar glue so Poly<K> can be instantiated over exact fields, exact
// domains (Z, Z[i]) and doubles with one code path.
template <typename K>
struct ScalarOps {
    static K zero() { return K(0); }
    static K one() { return K(1); }
    static bool is_zero(const K& x) { return x == K(0); }
};
template <>
struct ScalarOps<GaussRational> {
    static GaussRational zero() { return {}; }
    static GaussRational one() { return GaussRational(Rational(1)); }
    static bool is_zero(const GaussRational& x) { return x.is_zero(); }
};
template <>
struct ScalarOps<GaussInt> {
    static GaussInt zero() { return {}; }
    static GaussInt one() { return GaussInt(Integer(1)); }
    static bool is_zero(const GaussInt& x) { return x.is_zero(); }
};

/// Dense univariate polynomial, coefficients in ascending degree with
/// trailing zeros stripped.  The zero polynomial has an empty coefficient
/// vector and degree -1.
template <typename K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { strip(); }
    explicit Poly(const K& constant) : c_{constant} { strip(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(std::vector<K>{ScalarOps<K>::one()}); }
    /// The monomial z.
    static Poly variable() {
        return Poly(std::vector<K>{ScalarOps<K>::zero(), ScalarOps<K>::one()});
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }

    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return ScalarOps<K>::zero();
        return c_[i];
    }
    const K& leading() const {
        if (c_.empty()) throw InvalidInput("zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == ScalarOps<K>::one(); }

    Poly monic() const {
        if (is_zero()) throw InvalidInput("cannot normalize the zero polynomial");
        Poly r = *this;
        const K lc = r.c_.back();
        for (K& x : r.c_) x = x / lc;
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<long>(i));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), ScalarOps<K>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), ScalarOps<K>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<K> r = a.c_;
        for (K& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, ScalarOps<K>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const K& s, const Poly& a) {
        std::vector<K> r = a.c_;
        for (K& x : r) x = s * x;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// z^k * this.
    Poly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<K> r(c_.size() + k, ScalarOps<K>::zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
        return Poly(std::move(r));
    }

    template <typename P>
    P eval(const P& x) const {
        P acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + P(*it);
        return acc;
    }

private:
    std::vector<K> c_;
    void strip() {
        while (!c_.empty() && ScalarOps<K>::is_zero(c_.back())) c_.pop_back();
    }
};

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <typename K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw InvalidInput("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly<K>(), a};
    std::vector<K> rem(a.coeffs());
    std::vector<K> quo(a.degree() - b.degree() + 1, ScalarOps<K>::zero());
    const K inv_lead = ScalarOps<K>::one() / b.leading();
    for (int i = a.degree(); i >= b.degree(); --i) {
        if (ScalarOps<K>::is_zero(rem[i])) continue;
        K q = rem[i] * inv_lead;
        quo[i - b.degree()] = q;
        for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] = rem[i - b.degree() + j] - q * b.coeff(j);
    }
    return {Poly<K>(std::move(quo)), Poly<K>(std::move(rem))};
}

/// Exact quotient; throws if b does not divide a.
template <typename K>
Poly<K> divide_exact(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InvalidInput("polynomial division is not exact");
    return q;
}

template <typename K>
bool divides(const Poly<K>& b, const Poly<K>& a) {
    if (b.is_zero()) return a.is_zero();
    return divmod(a, b).second.is_zero();
}

template <typename K>
Poly<K> pow(const Poly<K>& base, int e) {
    Poly<K> r = Poly<K>::one();
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
}

/// Monic polynomial with the given roots.
template <typename K>
Poly<K> poly_from_roots(const std::vector<K>& roots) {
    Poly<K> r = Poly<K>::one();
    for (const K& root : roots)
        r = r * Poly<K>(std::vector<K>{-root, ScalarOps<K>::one()});
    return r;
}

inline Poly<GaussRational> to_gauss(const Poly<Rational>& p) {
    std::vector<GaussRational> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.emplace_back(q);
    return Poly<GaussRational>(std::move(c));
}

template <typename K>
std::vector<std::complex<double>> to_complex_coeffs(const Poly<K>& p) {
    std::vector<std::complex<double>> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(to_complex(x));
    return c;
}
inline std::vector<std::complex<double>> to_complex_coeffs(const Poly<std::complex<double>>& p) {
    return p.coeffs();
}

template <typename K>
Poly<K> conj(const Poly<K>& p) {
    std::vector<K> c = p.coeffs();
    for (K& x : c) x = x.conj();
    return Poly<K>(std::move(c));
}

}  // namespace nrs
