#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nrs/spaces.hpp"

namespace nrs {

/// A point of RP^{mn-1}: unit vector with the first nonzero coordinate
/// positive (the stored representative of the sign pair).
struct ProjPoint {
    std::vector<double> v;
};

/// Chordal distance between projective points: min(|u - v|, |u + v|).
double chordal_distance(const ProjPoint& a, const ProjPoint& b);

/// The loop R u {inf} -> RP^{mn-1} traced by the jet family of a Q_R member,
/// sampled at alpha = tan(pi t / 2) with t in [-1, 1]; both endpoints sit at
/// the basepoint [1 : ... : 1].
struct LoopSample {
    std::vector<double> t;        // parameter grid, endpoints -1 and 1
    std::vector<double> alpha;    // tan(pi t / 2); +-inf at the endpoints
    std::vector<ProjPoint> points;
    // Exact relative lift sign between consecutive stored representatives,
    // certified per interval by a jet entry with no sign change there (root
    // count Sturm-verified to be zero).
    std::vector<int> rel_sign;
    ProjPoint basepoint;
    int mn = 0;

    std::string to_csv() const;
};

/// Samples the loop, refining adaptively until (i) consecutive chordal steps
/// drop below 0.5 and (ii) every interval carries a sign anchor: some jet
/// entry with nonzero values at both ends and exactly zero real roots inside
/// (decided by Sturm, so hidden double sign flips cannot slip between
/// samples).  Evaluation is exact at each grid point, rounded only after
/// normalization.  Throws NumericalFailure past 2^20 points.
LoopSample eval_real_loop(const System& sys, int resolution_hint = 64);

/// Lifts the loop to S^{mn-1} by sign continuation along the grid; 0 when
/// the lift closes, 1 when it ends at the antipode.  Equals d mod 2 for
/// degree-d members.
int loop_class_mod2(const LoopSample& loop);

/// j = (d - #real roots)/2 for a squarefree real polynomial: the connected
/// component index of Poly^{d,1}_2(R).  Exact.
int component_index_12(const Poly<Rational>& f);

/// Linear combination sum c_{k,t} (f_k + f_k^{(t)}) of the jet family; keeps
/// degree d exactly when the weights do not sum to zero.
Poly<Rational> hyperplane_pullback(const System& sys, const std::vector<Rational>& weights);
Poly<GaussRational> hyperplane_pullback_gauss(const System& sys,
                                              const std::vector<Rational>& weights);

struct EFieldSample {
    std::complex<double> z;
    std::complex<double> value;
    bool at_root = false;  // grid point hit a root; value not evaluated
};

/// Evaluates 1 + sum_k 1/(z - a_k) on a grid (grid points equal to a root are
/// flagged and skipped).
std::vector<EFieldSample> electric_field_samples(const std::vector<std::complex<double>>& roots,
                                                 const std::vector<std::complex<double>>& grid);

}  // namespace nrs
