#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "nrs/poly.hpp"

namespace nrs {

// ---------------------------------------------------------------------------
// Denominator clearing: exact field polynomials scale to polynomials over the
// underlying integer domain (Z or Z[i]) before any remainder sequence runs.

inline Poly<Integer> clear_denominators(const Poly<Rational>& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) l = lcm(l, c.get_den());
    std::vector<Integer> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.get_num() * divexact(l, c.get_den()));
    return Poly<Integer>(std::move(out));
}

inline Poly<GaussInt> clear_denominators(const Poly<GaussRational>& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) l = lcm(lcm(l, c.re.get_den()), c.im.get_den());
    std::vector<GaussInt> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs())
        out.emplace_back(c.re.get_num() * divexact(l, c.re.get_den()),
                         c.im.get_num() * divexact(l, c.im.get_den()));
    return Poly<GaussInt>(std::move(out));
}

inline Poly<Rational> to_field(const Poly<Integer>& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.emplace_back(x);
    return Poly<Rational>(std::move(c));
}
inline Poly<GaussRational> to_field(const Poly<GaussInt>& p) {
    std::vector<GaussRational> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.emplace_back(Rational(x.re), Rational(x.im));
    return Poly<GaussRational>(std::move(c));
}

template <typename K>
struct DomainOf;
template <>
struct DomainOf<Rational> {
    using type = Integer;
};
template <>
struct DomainOf<GaussRational> {
    using type = GaussInt;
};

/// Strip the integer content (sign-normalized so the leading coefficient
/// stays positive).  Z only; sizes in Z[i] are controlled well enough by the
/// subresultant divisions alone.
inline Poly<Integer> primitive_part(const Poly<Integer>& p) {
    if (p.is_zero()) return p;
    Integer g = 0;
    for (const auto& c : p.coeffs()) g = gcd(g, c);
    if (sgn(p.leading()) < 0) g = -g;
    std::vector<Integer> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(divexact(c, g));
    return Poly<Integer>(std::move(out));
}

namespace detail {

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b, computed
/// fraction-free.
template <typename D>
Poly<D> pseudo_rem(const Poly<D>& a, const Poly<D>& b) {
    Poly<D> r = a;
    const D lcb = b.leading();
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Poly<D> s = r.leading() * b.shifted(r.degree() - b.degree());
        r = lcb * r - s;
        --e;
    }
    D scale = ScalarOps<D>::one();
    for (int i = 0; i < e; ++i) scale = scale * lcb;
    return scale * r;
}

template <typename D>
D dpow(const D& x, int e) {
    D r = ScalarOps<D>::one();
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

/// Subresultant polynomial remainder sequence (Collins/Brown).  Returns the
/// last nonzero remainder, a domain multiple of the gcd.  Coefficient growth
/// stays polynomial, unlike the naive Euclidean sequence over the field.
template <typename D>
Poly<D> subresultant_last(Poly<D> a, Poly<D> b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.is_zero()) return a;
    D g = ScalarOps<D>::one();
    D h = ScalarOps<D>::one();
    while (true) {
        const int delta = a.degree() - b.degree();
        Poly<D> r = pseudo_rem(a, b);
        if (r.is_zero()) return b;
        D divisor = g * dpow(h, delta);
        a = std::move(b);
        std::vector<D> coeffs;
        coeffs.reserve(r.coeffs().size());
        for (const auto& c : r.coeffs()) coeffs.push_back(divexact(c, divisor));
        b = Poly<D>(std::move(coeffs));
        g = a.leading();
        h = (delta == 0) ? h : divexact(dpow(g, delta), dpow(h, delta - 1));
        if (b.degree() == 0) return b;
    }
}

}  // namespace detail

/// Monic gcd over Q or Q(i).  Nonconstant exactly when f and g share a root
/// in the algebraic closure.
template <typename K>
Poly<K> gcd_subresultant(const Poly<K>& f, const Poly<K>& g) {
    if (f.is_zero() && g.is_zero())
        throw InvalidInput("gcd of two zero polynomials is undefined");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    if (f.degree() == 0 || g.degree() == 0) return Poly<K>::one();
    using D = typename DomainOf<K>::type;
    Poly<D> a = clear_denominators(f);
    Poly<D> b = clear_denominators(g);
    if constexpr (std::is_same_v<D, Integer>) {
        a = primitive_part(a);
        b = primitive_part(b);
    }
    Poly<D> last = detail::subresultant_last(std::move(a), std::move(b));
    if (last.degree() == 0) return Poly<K>::one();
    return to_field(last).monic();
}

/// Monic f / gcd(f, f'): same roots as f, all simple.
template <typename K>
Poly<K> squarefree_part(const Poly<K>& f) {
    if (f.is_zero()) throw InvalidInput("squarefree part of the zero polynomial");
    if (f.degree() == 0) return Poly<K>::one();
    Poly<K> g = gcd_subresultant(f, f.derivative());
    return divide_exact(f.monic(), g).monic();
}

// ---------------------------------------------------------------------------
// Sturm chains and real-root counting.

/// Sturm chain over Z: f, f', then negated remainders, each stripped to its
/// primitive part (a positive rescaling, which preserves sign variations).
struct SturmChain {
    std::vector<Poly<Integer>> seq;

    /// Sign variations in the sequence of values at x.
    int variations_at(const Rational& x) const {
        int var = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sign(p.template eval<Rational>(x));
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    }
    /// Sign variations at +inf (dir > 0) or -inf (dir < 0), read off the
    /// leading terms.
    int variations_at_infinity(int dir) const {
        int var = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sgn(p.leading());
            if (dir < 0 && p.degree() % 2 == 1) s = -s;
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    }
};

/// Divides out the positive integer content only; signs are preserved (the
/// Sturm chain depends on them).
inline Poly<Integer> positive_content_strip(const Poly<Integer>& p) {
    if (p.is_zero()) return p;
    Integer g = 0;
    for (const auto& c : p.coeffs()) g = gcd(g, c);
    std::vector<Integer> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(divexact(c, g));
    return Poly<Integer>(std::move(out));
}

/// Builds the Sturm chain of a squarefree f; detects non-squarefree input by
/// the chain terminating on a nonconstant polynomial.
inline SturmChain sturm_chain(const Poly<Rational>& f) {
    if (f.is_zero()) throw InvalidInput("Sturm chain of the zero polynomial");
    SturmChain chain;
    Poly<Integer> p0 = positive_content_strip(clear_denominators(f));
    chain.seq.push_back(p0);
    if (p0.degree() == 0) return chain;
    Poly<Integer> p1 = positive_content_strip(p0.derivative());
    chain.seq.push_back(p1);
    while (true) {
        const Poly<Integer>& a = chain.seq[chain.seq.size() - 2];
        const Poly<Integer>& b = chain.seq.back();
        if (b.is_zero() || b.degree() == 0) break;
        Poly<Integer> r = detail::pseudo_rem(a, b);
        // The pseudo-remainder multiplier lc(b)^e may be negative; flip so the
        // stored element is a positive multiple of the negated true remainder.
        int e = a.degree() - b.degree() + 1;
        int mult_sign = (sgn(b.leading()) < 0 && e % 2 == 1) ? -1 : 1;
        if (r.is_zero()) {
            if (b.degree() > 0)
                throw ContractViolation("sturm_count requires squarefree input (apply squarefree_part first)");
            break;
        }
        r = (mult_sign < 0) ? r : -r;
        chain.seq.push_back(positive_content_strip(r));
    }
    return chain;
}

struct Interval {
    Rational lo, hi;
};

/// Exact count of distinct real roots of a squarefree f, on the whole line or
/// in (lo, hi].
inline int sturm_count(const Poly<Rational>& f, std::optional<Interval> interval = std::nullopt) {
    if (f.is_zero()) throw InvalidInput("sturm_count of the zero polynomial");
    if (f.degree() == 0) return 0;
    SturmChain chain = sturm_chain(f);
    if (interval) {
        if (!(interval->lo < interval->hi)) throw InvalidInput("sturm_count: need lo < hi");
        return chain.variations_at(interval->lo) - chain.variations_at(interval->hi);
    }
    return chain.variations_at_infinity(-1) - chain.variations_at_infinity(+1);
}

// ---------------------------------------------------------------------------
// Numeric root extraction (companion matrix eigenvalues + Newton polish).
// Defined in roots_numeric.cpp.

std::vector<std::complex<double>> roots_numeric(const std::vector<std::complex<double>>& monic_or_not,
                                                double tol);

template <typename K>
std::vector<std::complex<double>> roots_numeric(const Poly<K>& f, double tol) {
    if (f.is_zero() || f.degree() < 1)
        throw InvalidInput("roots_numeric needs a polynomial of degree >= 1");
    return roots_numeric(to_complex_coeffs(f), tol);
}

}  // namespace nrs
