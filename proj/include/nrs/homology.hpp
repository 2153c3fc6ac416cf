#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrs/errors.hpp"

namespace nrs {

enum class Field { F2, Q };

std::string field_name(Field f);
Field field_from_name(const std::string& s);

/// Homology dimensions by degree 0..qmax over a fixed field.
struct GradedDims {
    std::vector<std::int64_t> dims;
    Field field = Field::F2;
    bool reduced = false;

    int qmax() const { return static_cast<int>(dims.size()) - 1; }
    std::int64_t at(int q) const {
        if (q < 0 || q > qmax()) return 0;
        return dims[static_cast<std::size_t>(q)];
    }
    /// Adds the degree-0 class of a connected space.
    GradedDims to_unreduced() const;
    friend bool operator==(const GradedDims& a, const GradedDims& b) {
        return a.dims == b.dims && a.field == b.field && a.reduced == b.reduced;
    }
};

/// Stable ranges: D(d;m,n) = (mn-2)(floor(d/n)+1)-1 and its complex analogue
/// (2mn-3)(floor(d/n)+1)-1.
struct StabilityDims {
    int real;
    int complex_;
};
StabilityDims stability_dims(int d, int m, int n);

// ---------------------------------------------------------------------------
// Braid space and D_j summand dimensions.

/// Monomial in the standard mod-2 basis of the braid space homology:
/// generators y_k (k >= 1) of degree 2^k - 1 and weight 2^k, exponents[k-1]
/// holding the power of y_k.
struct DLMonomial {
    std::vector<int> exponents;

    int degree() const {
        int acc = 0;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            acc += exponents[i] * ((1 << (i + 1)) - 1);
        return acc;
    }
    int weight() const {
        int acc = 0;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            acc += exponents[i] * (1 << (i + 1));
        return acc;
    }
};

/// All monomials of weight <= max_weight (a finite set).
std::vector<DLMonomial> enumerate_dl_monomials(int max_weight);

/// Unreduced dim H_q(C_j(C); F2) for q <= qmax: the number of basis monomials
/// of weight <= j and degree q.  Certified against the Fox-Neuwirth oracle.
GradedDims config_space_betti_f2(int j, int qmax);

/// Reduced dims of the summand D_j = F(C,j)_+ ^_{S_j} (S^1)^{^j}: over F2 the
/// config-space dims shifted up by j (Thom shift); over Q only D_1 = S^1
/// survives.
GradedDims dj_betti(int j, Field field, int qmax);

/// Shared read-only cache for D_j dimensions, built once before any parallel
/// fan-out.
class DjCache {
public:
    DjCache(int jmax, int qmax);
    const GradedDims& get(int j, Field field) const;
    int jmax() const { return jmax_; }
    int qmax() const { return qmax_; }

private:
    int jmax_, qmax_;
    std::vector<GradedDims> f2_, q_;
};

// ---------------------------------------------------------------------------
// Stable splitting formulas.

enum class SpaceKind { PolyC, PolyR, QR, B, P };
SpaceKind space_kind_from_name(const std::string& s);
std::string space_kind_name(SpaceKind k);

struct Summand {
    bool is_sphere;  // sphere S^a or suspended summand Sigma^shift D_j
    int shift;       // suspension amount (0 for spheres)
    int param;       // a for spheres, j for D_j
};

struct SpaceFormula {
    std::vector<Summand> summands;
};

std::string format_formula(const SpaceFormula& f);

/// The wedge decomposition of the requested space at (d, m, n); empty when
/// floor(d/n) = 0 (the space is contractible).
SpaceFormula space_formula(SpaceKind kind, int d, int m, int n);

/// Reduced homology of a wedge formula.
GradedDims formula_betti(const SpaceFormula& f, Field field, int qmax);
GradedDims formula_betti(const SpaceFormula& f, Field field, int qmax, const DjCache& cache);

// ---------------------------------------------------------------------------
// Loop space models.

/// Unreduced H_*(Omega S^{N1}): one class in each degree c(N1-2), truncated
/// at c <= james_cut when modelling a James filtration stage.
GradedDims loop_sphere_betti(int N1, Field field, int qmax,
                             std::optional<int> james_cut = std::nullopt);

/// Unreduced H_*(Omega^2 S^{2*N2+1}): over F2 a polynomial algebra on
/// generators of degree 2^k (2*N2) - 1, k >= 0; over Q one exterior generator
/// of degree 2*N2 - 1.
GradedDims double_loop_betti(int N2, Field field, int qmax);

/// Product model Omega^2 S^{2*N2+1} x Omega S^{N1} (series convolution).
GradedDims loop_model_betti(int N2, int N1, Field field, int qmax,
                            std::optional<int> james_cut = std::nullopt);

// ---------------------------------------------------------------------------
// Vassiliev E^1 page.

struct E1Table {
    int d, m, n;
    Field field;
    std::map<std::pair<int, int>, std::int64_t> entries;  // (k, s) -> dim

    std::int64_t at(int k, int s) const {
        auto it = entries.find({k, s});
        return it == entries.end() ? 0 : it->second;
    }
    /// Total dimension along the antidiagonal s_total = k + s.
    std::int64_t antidiagonal_total(int s) const;
};

/// E^1 entries up to total degree s <= smax.  `truncated` applies the root
/// budget j <= floor(d/n) - k to the inner sum; the untruncated variant is
/// kept for comparison only.
E1Table e1_table(int d, int m, int n, Field field, int smax, bool truncated = true);

// ---------------------------------------------------------------------------
// Degree-by-degree verification of the stable-range theorems.

struct CheckFailure {
    char check;
    int q;
    std::int64_t lhs, rhs;
};

struct VerifyReport {
    int d, m, n;
    Field field;
    int qmax;
    bool pass = true;
    std::vector<CheckFailure> failures;
    // First degree (if any) where the model comparison of checks (a)/(b)/(c)
    // stops holding beyond the stable range: the observed sharpness margin.
    std::optional<int> first_mismatch_a, first_mismatch_b, first_mismatch_c;
};

/// Test hook: replaces the D_j dimension provider.
using DjProvider = std::function<GradedDims(int j, Field field, int qmax)>;

VerifyReport verify_theorems(int d, int m, int n, Field field, int qmax = -1,
                             const DjProvider& dj = {});

}  // namespace nrs
