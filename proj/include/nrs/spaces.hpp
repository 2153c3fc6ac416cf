#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nrs/polyarith.hpp"

namespace nrs {

enum class Family { PolyC, PolyR, QR, PolyRHplus };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

/// Which space of non-resultant systems: family + the (d, m, n) parameters.
struct SpaceId {
    Family family = Family::PolyR;
    int d = 1;
    int m = 1;
    int n = 1;

    void validate() const;
};

/// An m-tuple of monic polynomials.  Real-coefficient families store
/// rational polynomials, Poly_C stores Gaussian-rational ones.  A nonempty
/// `degrees` vector carries per-slot degrees for the degenerate D-tuple form;
/// otherwise every slot has degree d.
struct System {
    SpaceId space;
    std::vector<Poly<Rational>> real_polys;
    std::vector<Poly<GaussRational>> gauss_polys;
    std::vector<int> degrees;

    bool is_gauss() const { return space.family == Family::PolyC; }
    int slot_degree(int k) const {
        return degrees.empty() ? space.d : degrees[static_cast<std::size_t>(k)];
    }
    void validate() const;
};

System make_system(SpaceId space, std::vector<Poly<Rational>> polys,
                   std::vector<int> degrees = {});
System make_system_gauss(SpaceId space, std::vector<Poly<GaussRational>> polys,
                         std::vector<int> degrees = {});

/// True when every coefficient is real; such a Poly_C system can be viewed as
/// a real tuple (the conjugation-fixed points).
bool has_real_coefficients(const System& sys);
std::vector<Poly<Rational>> real_view(const System& sys);

/// Counts of distinct common n-fold roots: i real, j in the open upper half
/// plane, k = i + j.
struct StratumSignature {
    int i = 0;
    int j = 0;
    int k() const { return i + j; }
    friend bool operator==(const StratumSignature& a, const StratumSignature& b) {
        return a.i == b.i && a.j == b.j;
    }
};

// ---------------------------------------------------------------------------
// Jets.

/// (f, f + f', ..., f + f^(n-1)); every entry monic of the same degree, and
/// the entries vanish simultaneously at a point exactly when the point is an
/// n-fold root.
template <typename K>
std::vector<Poly<K>> jet_tuple(const Poly<K>& f, int n) {
    std::vector<Poly<K>> out;
    out.reserve(static_cast<std::size_t>(n));
    out.push_back(f);
    Poly<K> der = f;
    for (int t = 1; t < n; ++t) {
        der = der.derivative();
        out.push_back(f + der);
    }
    return out;
}

/// The m*n jet entries of the whole system, slot-major.
std::vector<Poly<Rational>> jet_family(const System& sys);
std::vector<Poly<GaussRational>> jet_family_gauss(const System& sys);

/// Reinterprets the jet tuple of a single degree-d polynomial as an m = n,
/// n = 1 system; f avoids n-fold roots iff the output avoids common roots.
System jet_embedding(const Poly<Rational>& f, int n);

// ---------------------------------------------------------------------------
// Exact membership and stratification.

/// Monic gcd of all derivatives f_k^(t), t < n; its roots are exactly the
/// common n-fold roots of the tuple in the algebraic closure.
template <typename K>
Poly<K> common_nfold_gcd(const std::vector<Poly<K>>& polys, int n) {
    Poly<K> g = Poly<K>::zero();
    for (const auto& f : polys) {
        Poly<K> der = f;
        for (int t = 0; t < n; ++t) {
            g = g.is_zero() ? der.monic() : gcd_subresultant(g, der);
            if (!g.is_zero() && g.degree() == 0) return g;
            if (t + 1 < n) der = der.derivative();
        }
    }
    return g;
}

bool is_member(const System& sys);

/// none for members (in the Poly_R sense); otherwise the (i, j) counts of the
/// stratum containing the tuple.
std::optional<StratumSignature> stratum_signature(const System& sys);

// ---------------------------------------------------------------------------
// The fixed conjugation-equivariant region homeomorphisms.  The choice is
// versioned because every numeric map output depends on it pointwise.

inline constexpr const char* kRegionMapVersion = "exp-v1";

/// C -> right half plane (0,inf) x R, x+iy -> e^x + iy.
std::complex<double> to_right_half(std::complex<double> a);
/// C -> left half plane (-inf,0) x R, x+iy -> -e^{-x} + iy.
std::complex<double> to_left_half(std::complex<double> a);
/// C -> {Re < d}, x+iy -> (d - e^{-x}) + iy.
std::complex<double> to_left_of(double d, std::complex<double> a);
/// C -> upper half plane, x+iy -> x + i e^y.
std::complex<double> to_upper_half(std::complex<double> a);

// ---------------------------------------------------------------------------
// Numeric map realizations.  Outputs carry double-precision coefficients and
// are re-verified against a numeric membership check before being returned.

struct NumericSystem {
    SpaceId space;
    std::vector<Poly<std::complex<double>>> polys;
    std::vector<int> degrees;
    std::string region_map_version = kRegionMapVersion;

    int slot_degree(int k) const {
        return degrees.empty() ? space.d : degrees[static_cast<std::size_t>(k)];
    }
    bool coefficients_real(double tol = 0.0) const;
};

/// Smallest normalized jet residual over the candidate common roots; a true
/// common n-fold root would drive it to zero.  Membership re-checks require
/// it to exceed `threshold`.
double numeric_membership_residual(const NumericSystem& sys);
bool numeric_member_recheck(const NumericSystem& sys, double threshold = 1e-6);

/// Root transplantation product: roots of `a` move to the right half plane,
/// roots of `b` to the left, components multiply.  Degrees add.
NumericSystem loop_product(const System& a, const System& b);

/// Degree d -> d+1 stabilization: compresses roots into {Re < d} and appends
/// one new real root per slot at d + k/(m+1).
NumericSystem stabilize(const System& sys);

/// One-slot stabilization for degenerate degree tuples: only `slot` (0-based)
/// gains a root.
NumericSystem stabilize_slot(const System& sys, int slot);

/// Doubling homeomorphism: a Poly_C system of degree d0 maps to a real system
/// of degree 2*d0 whose roots sit in conjugate pairs off the real line.
NumericSystem double_to_hplus(const System& sys);

/// Exact conversion of numeric coefficients back to rationals (doubles are
/// dyadic rationals); used when a map output feeds an exact consumer.
System to_exact(const NumericSystem& sys);

}  // namespace nrs
