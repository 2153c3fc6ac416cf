#include "nrs/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nrs {

std::string family_name(Family f) {
    switch (f) {
        case Family::PolyC: return "Poly_C";
        case Family::PolyR: return "Poly_R";
        case Family::QR: return "Q_R";
        case Family::PolyRHplus: return "Poly_R_Hplus";
    }
    return "?";
}

Family family_from_name(const std::string& s) {
    if (s == "Poly_C") return Family::PolyC;
    if (s == "Poly_R") return Family::PolyR;
    if (s == "Q_R") return Family::QR;
    if (s == "Poly_R_Hplus") return Family::PolyRHplus;
    throw InvalidInput("unknown family: \"" + s + "\"");
}

void SpaceId::validate() const {
    if (d < 1 || m < 1 || n < 1) throw InvalidInput("space parameters must be positive");
    if (m == 1 && n == 1) throw InvalidInput("(m, n) = (1, 1) is excluded");
}

void System::validate() const {
    space.validate();
    const std::size_t m = static_cast<std::size_t>(space.m);
    if (!degrees.empty() && degrees.size() != m)
        throw InvalidInput("degrees vector must have one entry per slot");
    for (int dk : degrees)
        if (dk < 1) throw InvalidInput("per-slot degrees must be positive");
    if (is_gauss()) {
        if (gauss_polys.size() != m || !real_polys.empty())
            throw InvalidInput("Poly_C system must carry m Gaussian-rational polynomials");
        for (std::size_t k = 0; k < m; ++k) {
            if (!gauss_polys[k].is_monic() || gauss_polys[k].degree() != slot_degree(static_cast<int>(k)))
                throw InvalidInput("slot " + std::to_string(k) + ": polynomial must be monic of the declared degree");
        }
    } else {
        if (real_polys.size() != m || !gauss_polys.empty())
            throw InvalidInput("real-family system must carry m rational polynomials");
        for (std::size_t k = 0; k < m; ++k) {
            if (!real_polys[k].is_monic() || real_polys[k].degree() != slot_degree(static_cast<int>(k)))
                throw InvalidInput("slot " + std::to_string(k) + ": polynomial must be monic of the declared degree");
        }
    }
}

System make_system(SpaceId space, std::vector<Poly<Rational>> polys, std::vector<int> degrees) {
    System sys;
    sys.space = space;
    sys.degrees = std::move(degrees);
    if (space.family == Family::PolyC) {
        for (auto& p : polys) sys.gauss_polys.push_back(to_gauss(p));
    } else {
        sys.real_polys = std::move(polys);
    }
    sys.validate();
    return sys;
}

System make_system_gauss(SpaceId space, std::vector<Poly<GaussRational>> polys, std::vector<int> degrees) {
    if (space.family != Family::PolyC)
        throw InvalidInput("Gaussian coefficients are only valid for Poly_C");
    System sys;
    sys.space = space;
    sys.gauss_polys = std::move(polys);
    sys.degrees = std::move(degrees);
    sys.validate();
    return sys;
}

bool has_real_coefficients(const System& sys) {
    if (!sys.is_gauss()) return true;
    for (const auto& p : sys.gauss_polys)
        for (const auto& c : p.coeffs())
            if (!c.is_real()) return false;
    return true;
}

std::vector<Poly<Rational>> real_view(const System& sys) {
    if (!sys.is_gauss()) return sys.real_polys;
    if (!has_real_coefficients(sys))
        throw InvalidInput("system has non-real coefficients");
    std::vector<Poly<Rational>> out;
    out.reserve(sys.gauss_polys.size());
    for (const auto& p : sys.gauss_polys) {
        std::vector<Rational> c;
        c.reserve(p.coeffs().size());
        for (const auto& g : p.coeffs()) c.push_back(g.re);
        out.emplace_back(std::move(c));
    }
    return out;
}

std::vector<Poly<Rational>> jet_family(const System& sys) {
    std::vector<Poly<Rational>> out;
    for (const auto& f : real_view(sys)) {
        auto jets = jet_tuple(f, sys.space.n);
        for (auto& j : jets) out.push_back(std::move(j));
    }
    return out;
}

std::vector<Poly<GaussRational>> jet_family_gauss(const System& sys) {
    std::vector<Poly<GaussRational>> out;
    const auto polys = sys.is_gauss() ? sys.gauss_polys : [&] {
        std::vector<Poly<GaussRational>> g;
        for (const auto& p : sys.real_polys) g.push_back(to_gauss(p));
        return g;
    }();
    for (const auto& f : polys) {
        auto jets = jet_tuple(f, sys.space.n);
        for (auto& j : jets) out.push_back(std::move(j));
    }
    return out;
}

System jet_embedding(const Poly<Rational>& f, int n) {
    if (f.is_zero() || !f.is_monic()) throw InvalidInput("jet_embedding needs a monic polynomial");
    SpaceId id{Family::PolyR, f.degree(), n, 1};
    return make_system(id, jet_tuple(f, n));
}

namespace {

bool has_no_real_roots(const Poly<Rational>& f) {
    if (f.degree() == 0) return true;
    return sturm_count(squarefree_part(f)) == 0;
}

// Def-form test for the H+ family: even degree needs every slot free of real
// roots; odd degree needs slot k to factor as (z - k) * h_k with h_k free of
// real roots.
bool hplus_root_condition(const System& sys) {
    const auto polys = real_view(sys);
    for (std::size_t k = 0; k < polys.size(); ++k) {
        const Poly<Rational>& f = polys[k];
        if (f.degree() % 2 == 0) {
            if (!has_no_real_roots(f)) return false;
        } else {
            Poly<Rational> anchor(
                std::vector<Rational>{Rational(-static_cast<long>(k + 1)), Rational(1)});
            if (!divides(anchor, f)) return false;
            if (!has_no_real_roots(divide_exact(f, anchor))) return false;
        }
    }
    return true;
}

}  // namespace

bool is_member(const System& sys) {
    sys.validate();
    switch (sys.space.family) {
        case Family::PolyC: {
            Poly<GaussRational> g = common_nfold_gcd(sys.gauss_polys, sys.space.n);
            return g.degree() == 0;
        }
        case Family::PolyR: {
            Poly<Rational> g = common_nfold_gcd(sys.real_polys, sys.space.n);
            return g.degree() == 0;
        }
        case Family::QR: {
            Poly<Rational> g = common_nfold_gcd(sys.real_polys, sys.space.n);
            if (g.degree() == 0) return true;
            return sturm_count(squarefree_part(g)) == 0;
        }
        case Family::PolyRHplus: {
            Poly<Rational> g = common_nfold_gcd(sys.real_polys, sys.space.n);
            if (g.degree() != 0) return false;
            return hplus_root_condition(sys);
        }
    }
    return false;
}

std::optional<StratumSignature> stratum_signature(const System& sys) {
    sys.validate();
    const auto polys = real_view(sys);
    Poly<Rational> g = common_nfold_gcd(polys, sys.space.n);
    if (g.degree() == 0) return std::nullopt;
    Poly<Rational> sf = squarefree_part(g);
    StratumSignature sig;
    sig.i = sturm_count(sf);
    sig.j = (sf.degree() - sig.i) / 2;
    return sig;
}

// ---------------------------------------------------------------------------
// Region maps.

std::complex<double> to_right_half(std::complex<double> a) {
    return {std::exp(a.real()), a.imag()};
}
std::complex<double> to_left_half(std::complex<double> a) {
    return {-std::exp(-a.real()), a.imag()};
}
std::complex<double> to_left_of(double d, std::complex<double> a) {
    return {d - std::exp(-a.real()), a.imag()};
}
std::complex<double> to_upper_half(std::complex<double> a) {
    return {a.real(), std::exp(a.imag())};
}

// ---------------------------------------------------------------------------
// Numeric membership re-check.

bool NumericSystem::coefficients_real(double tol) const {
    double scale = 1.0;
    double worst = 0.0;
    for (const auto& p : polys)
        for (const auto& c : p.coeffs()) {
            scale = std::max(scale, std::abs(c));
            worst = std::max(worst, std::abs(c.imag()));
        }
    return worst <= tol * scale;
}

double numeric_membership_residual(const NumericSystem& sys) {
    const int n = sys.space.n;
    // Candidates: every root of the first slot (a common n-fold root is in
    // particular one of them).
    std::vector<std::complex<double>> candidates;
    try {
        candidates = roots_numeric(sys.polys.at(0), 1e-6);
    } catch (const NumericalFailure&) {
        return 0.0;
    }
    std::vector<std::vector<std::complex<double>>> jet_coeffs;
    for (const auto& f : sys.polys) {
        Poly<std::complex<double>> der = f;
        for (int t = 0; t < n; ++t) {
            jet_coeffs.push_back(t == 0 ? f.coeffs() : (f + der).coeffs());
            if (t + 1 < n) der = der.derivative();
        }
    }
    auto residual_at = [&](std::complex<double> a) {
        double worst = 0.0;
        for (const auto& c : jet_coeffs) {
            std::complex<double> acc = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * a + *it;
            const double denom = std::pow(1.0 + std::abs(a), static_cast<int>(c.size()) - 1);
            worst = std::max(worst, std::abs(acc) / denom);
        }
        return worst;
    };

    double best = std::numeric_limits<double>::infinity();
    for (auto a : candidates) {
        if (sys.space.family == Family::QR) {
            if (std::abs(a.imag()) > 1e-6) continue;
            a = {a.real(), 0.0};
        }
        best = std::min(best, residual_at(a));
    }
    return best;
}

namespace {

bool numeric_no_real_roots(const Poly<std::complex<double>>& f, double threshold) {
    auto roots = roots_numeric(f, 1e-6);
    for (const auto& r : roots)
        if (std::abs(r.imag()) <= threshold) return false;
    return true;
}

}  // namespace

bool numeric_member_recheck(const NumericSystem& sys, double threshold) {
    double res = numeric_membership_residual(sys);
    if (!(res > threshold)) {
        // The transplantation maps compress distinct far-out roots below any
        // fixed residual threshold.  The rounded coefficients are dyadic
        // rationals, so membership of the output is exactly decidable; let
        // the exact test settle sub-threshold cases.
        return is_member(to_exact(sys));
    }
    if (sys.space.family == Family::PolyRHplus) {
        for (int k = 0; k < sys.space.m; ++k) {
            const auto& f = sys.polys[static_cast<std::size_t>(k)];
            if (sys.slot_degree(k) % 2 == 0) {
                if (!numeric_no_real_roots(f, threshold)) return false;
            } else {
                // Split off the single real root and require the cofactor to
                // stay away from the real axis.
                auto roots = roots_numeric(f, 1e-6);
                int real_count = 0;
                for (const auto& r : roots)
                    if (std::abs(r.imag()) <= threshold) ++real_count;
                if (real_count != 1) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Numeric maps.

namespace {

// Splits the numeric roots of a real-coefficient polynomial into conjugate
// pairs plus real leftovers, so rebuilt products have exactly real
// coefficients.
struct RealRootSplit {
    std::vector<std::complex<double>> upper;  // one per conjugate pair, Im > 0
    std::vector<double> real;
};

RealRootSplit split_conjugate(const std::vector<std::complex<double>>& roots) {
    RealRootSplit out;
    std::vector<std::complex<double>> up, down;
    for (const auto& r : roots) {
        // Eigenvalues of real polynomials carry stray imaginary parts; snap
        // near-axis roots before pairing so two real roots never pair up.
        if (std::abs(r.imag()) <= 1e-8 * (1.0 + std::abs(r)))
            out.real.push_back(r.real());
        else if (r.imag() > 0)
            up.push_back(r);
        else
            down.push_back(r);
    }
    std::vector<bool> used(down.size(), false);
    for (const auto& u : up) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < down.size(); ++i) {
            if (used[i]) continue;
            double dist = std::abs(std::conj(u) - down[i]);
            if (dist < best_d) {
                best_d = dist;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) {
            out.real.push_back(u.real());
            continue;
        }
        used[static_cast<std::size_t>(best)] = true;
        std::complex<double> mate = down[static_cast<std::size_t>(best)];
        out.upper.emplace_back(0.5 * (u.real() + mate.real()), 0.5 * (u.imag() - mate.imag()));
    }
    for (std::size_t i = 0; i < down.size(); ++i)
        if (!used[i]) out.real.push_back(down[i].real());
    return out;
}

// Monic real polynomial from paired roots: product of real quadratics and
// real linear factors, so imaginary parts vanish identically.
Poly<std::complex<double>> rebuild_real(const RealRootSplit& split) {
    std::vector<double> acc{1.0};
    auto mul = [&](const std::vector<double>& f) {
        std::vector<double> r(acc.size() + f.size() - 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) r[i + j] += acc[i] * f[j];
        acc = std::move(r);
    };
    for (double x : split.real) mul({-x, 1.0});
    for (const auto& a : split.upper) mul({std::norm(a), -2.0 * a.real(), 1.0});
    std::vector<std::complex<double>> c(acc.begin(), acc.end());
    return Poly<std::complex<double>>(std::move(c));
}

template <typename MapFn>
Poly<std::complex<double>> transplant_real(const Poly<Rational>& f, MapFn&& map) {
    if (f.degree() == 0) return Poly<std::complex<double>>(std::complex<double>(1.0));
    auto roots = roots_numeric(f, 1e-8);
    for (auto& r : roots) r = map(r);
    // The region maps commute with conjugation exactly in floating point, so
    // pairing survives transplantation.
    return rebuild_real(split_conjugate(roots));
}

template <typename MapFn>
Poly<std::complex<double>> transplant_complex(const Poly<GaussRational>& f, MapFn&& map) {
    if (f.degree() == 0) return Poly<std::complex<double>>(std::complex<double>(1.0));
    auto roots = roots_numeric(f, 1e-8);
    for (auto& r : roots) r = map(r);
    std::vector<std::complex<double>> rs(roots.begin(), roots.end());
    return poly_from_roots(rs);
}

void require_member(const System& sys, const char* what) {
    if (!is_member(sys)) throw InvalidInput(std::string(what) + ": input is not a member of its space");
}

NumericSystem checked(NumericSystem out, const char* what) {
    if (!numeric_member_recheck(out))
        throw NumericalFailure(std::string(what) + ": output failed the membership re-check",
                               numeric_membership_residual(out));
    return out;
}

}  // namespace

NumericSystem loop_product(const System& a, const System& b) {
    a.validate();
    b.validate();
    if (a.space.family != b.space.family || a.space.m != b.space.m || a.space.n != b.space.n)
        throw InvalidInput("loop_product needs matching (family, m, n)");
    if (!a.degrees.empty() || !b.degrees.empty())
        throw InvalidInput("loop_product is defined for equal-degree systems");
    if (a.space.family == Family::PolyRHplus)
        throw UnsupportedParameters("loop_product: use the Poly_R view for H+ systems");
    require_member(a, "loop_product");
    require_member(b, "loop_product");

    NumericSystem out;
    out.space = a.space;
    out.space.d = a.space.d + b.space.d;
    for (int k = 0; k < a.space.m; ++k) {
        if (a.is_gauss()) {
            auto fa = transplant_complex(a.gauss_polys[static_cast<std::size_t>(k)], to_right_half);
            auto fb = transplant_complex(b.gauss_polys[static_cast<std::size_t>(k)], to_left_half);
            out.polys.push_back(fa * fb);
        } else {
            auto fa = transplant_real(a.real_polys[static_cast<std::size_t>(k)], to_right_half);
            auto fb = transplant_real(b.real_polys[static_cast<std::size_t>(k)], to_left_half);
            out.polys.push_back(fa * fb);
        }
    }
    return checked(std::move(out), "loop_product");
}

namespace {

NumericSystem stabilize_impl(const System& sys, std::optional<int> only_slot) {
    sys.validate();
    if (sys.space.family == Family::PolyRHplus)
        throw UnsupportedParameters(
            "stabilize: the H+ family's odd-degree normal form pins real roots at z = k, "
            "which no anchor in (d, d+1) satisfies; stabilize the Poly_R view instead");
    require_member(sys, "stabilize");

    int dmax = 0;
    for (int k = 0; k < sys.space.m; ++k) dmax = std::max(dmax, sys.slot_degree(k));
    const double d = static_cast<double>(dmax);

    NumericSystem out;
    out.space = sys.space;
    auto map = [d](std::complex<double> a) { return to_left_of(d, a); };
    for (int k = 0; k < sys.space.m; ++k) {
        Poly<std::complex<double>> img =
            sys.is_gauss() ? transplant_complex(sys.gauss_polys[static_cast<std::size_t>(k)], map)
                           : transplant_real(sys.real_polys[static_cast<std::size_t>(k)], map);
        const bool grow = !only_slot || *only_slot == k;
        if (grow) {
            const double anchor = d + static_cast<double>(k + 1) / (sys.space.m + 1);
            img = img * Poly<std::complex<double>>(
                            std::vector<std::complex<double>>{-anchor, 1.0});
        }
        out.polys.push_back(std::move(img));
    }
    if (only_slot) {
        out.degrees.resize(static_cast<std::size_t>(sys.space.m));
        for (int k = 0; k < sys.space.m; ++k)
            out.degrees[static_cast<std::size_t>(k)] = sys.slot_degree(k) + (*only_slot == k ? 1 : 0);
        out.space.d = *std::max_element(out.degrees.begin(), out.degrees.end());
    } else {
        out.space.d = sys.space.d + 1;
    }
    return checked(std::move(out), "stabilize");
}

}  // namespace

NumericSystem stabilize(const System& sys) {
    if (!sys.degrees.empty())
        throw InvalidInput("stabilize on a degenerate degree tuple: use stabilize_slot");
    return stabilize_impl(sys, std::nullopt);
}

NumericSystem stabilize_slot(const System& sys, int slot) {
    if (slot < 0 || slot >= sys.space.m) throw InvalidInput("stabilize_slot: slot out of range");
    return stabilize_impl(sys, slot);
}

NumericSystem double_to_hplus(const System& sys) {
    sys.validate();
    if (sys.space.family != Family::PolyC)
        throw InvalidInput("double_to_hplus takes a Poly_C system");
    if (!sys.degrees.empty())
        throw InvalidInput("double_to_hplus is defined for equal-degree systems");
    require_member(sys, "double_to_hplus");

    NumericSystem out;
    out.space = sys.space;
    out.space.family = Family::PolyRHplus;
    out.space.d = 2 * sys.space.d;
    for (const auto& f : sys.gauss_polys) {
        auto roots = roots_numeric(f, 1e-8);
        RealRootSplit split;
        for (const auto& r : roots) split.upper.push_back(to_upper_half(r));
        out.polys.push_back(rebuild_real(split));
    }
    return checked(std::move(out), "double_to_hplus");
}

System to_exact(const NumericSystem& nsys) {
    System sys;
    sys.space = nsys.space;
    sys.degrees = nsys.degrees;
    const bool gauss = nsys.space.family == Family::PolyC;
    for (const auto& p : nsys.polys) {
        if (gauss) {
            std::vector<GaussRational> c;
            for (const auto& x : p.coeffs())
                c.emplace_back(rational_from_double(x.real()), rational_from_double(x.imag()));
            sys.gauss_polys.emplace_back(std::move(c));
        } else {
            std::vector<Rational> c;
            for (const auto& x : p.coeffs()) c.push_back(rational_from_double(x.real()));
            sys.real_polys.emplace_back(std::move(c));
        }
    }
    sys.validate();
    return sys;
}

}  // namespace nrs
