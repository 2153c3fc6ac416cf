#include "nrs/scanning.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nrs {

double chordal_distance(const ProjPoint& a, const ProjPoint& b) {
    double dminus = 0.0, dplus = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        const double m = a.v[i] - b.v[i];
        const double p = a.v[i] + b.v[i];
        dminus += m * m;
        dplus += p * p;
    }
    return std::sqrt(std::min(dminus, dplus));
}

namespace {

constexpr std::size_t kMaxLoopPoints = std::size_t(1) << 20;

// A grid node: the stored canonical representative plus the exact data the
// refinement needs (coordinate signs and lazily computed Sturm variation
// counts per jet entry).
struct GridNode {
    double t = 0.0;
    bool neg_inf = false, pos_inf = false;
    Rational alpha;
    ProjPoint pt;
    std::vector<int> csign;       // exact signs of the stored representative
    std::vector<int> variations;  // per-entry Sturm variations, -1 = unset
};

ProjPoint basepoint_of(int mn) {
    ProjPoint pt;
    pt.v.assign(static_cast<std::size_t>(mn), 1.0 / std::sqrt(static_cast<double>(mn)));
    return pt;
}

class LoopBuilder {
public:
    LoopBuilder(std::vector<Poly<Rational>> jets, int mn) : jets_(std::move(jets)), mn_(mn) {
        chains_.reserve(jets_.size());
        for (const auto& p : jets_) chains_.push_back(sturm_chain(squarefree_part(p)));
    }

    GridNode node_at(double t) const {
        GridNode nd;
        nd.t = t;
        if (t <= -1.0 || t >= 1.0) {
            (t <= -1.0 ? nd.neg_inf : nd.pos_inf) = true;
            nd.pt = basepoint_of(mn_);
            nd.csign.assign(static_cast<std::size_t>(mn_), +1);
        } else {
            nd.alpha = rational_from_double(std::tan(M_PI * t / 2.0));
            project(nd);
        }
        nd.variations.assign(jets_.size(), -1);
        return nd;
    }

    int variations(GridNode& nd, std::size_t entry) const {
        int& v = nd.variations[entry];
        if (v < 0) {
            if (nd.neg_inf)
                v = chains_[entry].variations_at_infinity(-1);
            else if (nd.pos_inf)
                v = chains_[entry].variations_at_infinity(+1);
            else
                v = chains_[entry].variations_at(nd.alpha);
        }
        return v;
    }

    /// Exact relative lift sign across [a, b], or 0 when no entry anchors the
    /// interval (some entry must be nonzero at both ends with no root
    /// between; then its stored signs determine the continuation).
    int anchor_sign(GridNode& a, GridNode& b) const {
        for (std::size_t k = 0; k < jets_.size(); ++k) {
            if (a.csign[k] == 0 || b.csign[k] == 0) continue;
            if (variations(a, k) - variations(b, k) == 0)
                return a.csign[k] * b.csign[k];
        }
        return 0;
    }

private:
    std::vector<Poly<Rational>> jets_;
    std::vector<SturmChain> chains_;
    int mn_;

    // Exact jet evaluation, scaled by the largest absolute entry before
    // rounding, so huge alpha never overflows.
    void project(GridNode& nd) const {
        std::vector<Rational> u;
        u.reserve(jets_.size());
        for (const auto& p : jets_) u.push_back(p.eval<Rational>(nd.alpha));
        Rational scale(0);
        for (const auto& x : u) {
            Rational av = abs(x);
            if (av > scale) scale = av;
        }
        if (sgn(scale) == 0)
            throw ContractViolation("jet family vanished at a grid point: not a Q_R member");
        int lead = 0;
        for (const auto& x : u) {
            if (sgn(x) != 0) {
                lead = sgn(x);
                break;
            }
        }
        nd.pt.v.reserve(u.size());
        nd.csign.reserve(u.size());
        double norm2 = 0.0;
        for (const auto& x : u) {
            double val = Rational(x / scale).get_d() * lead;
            nd.pt.v.push_back(val);
            nd.csign.push_back(sgn(x) * lead);
            norm2 += val * val;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : nd.pt.v) x *= inv;
    }
};

}  // namespace

LoopSample eval_real_loop(const System& sys, int resolution_hint) {
    sys.validate();
    const int mn = sys.space.m * sys.space.n;
    if (mn < 3) throw UnsupportedParameters("eval_real_loop: needs mn >= 3");
    {
        System q = sys;
        q.space.family = Family::QR;
        if (sys.is_gauss() || !is_member(q))
            throw InvalidInput("eval_real_loop: input must be a Q_R member");
    }
    LoopBuilder builder(jet_family(sys), mn);

    std::vector<GridNode> grid;
    const int r = std::max(resolution_hint, 8);
    grid.reserve(static_cast<std::size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) grid.push_back(builder.node_at(-1.0 + 2.0 * i / r));

    // Adaptive refinement: chordal steps below 0.5 and a sign anchor in every
    // interval.
    bool stable = false;
    while (!stable) {
        stable = true;
        std::vector<GridNode> next;
        next.reserve(grid.size() * 2);
        next.push_back(std::move(grid.front()));
        for (std::size_t i = 1; i < grid.size(); ++i) {
            GridNode& prev = next.back();
            GridNode& cur = grid[i];
            const bool too_far = chordal_distance(prev.pt, cur.pt) >= 0.5;
            const bool no_anchor = !too_far && builder.anchor_sign(prev, cur) == 0;
            if (too_far || no_anchor) {
                next.push_back(builder.node_at(0.5 * (prev.t + cur.t)));
                stable = false;
            }
            next.push_back(std::move(cur));
        }
        grid = std::move(next);
        if (grid.size() > kMaxLoopPoints)
            throw NumericalFailure("loop refinement exceeded the point cap (near-degenerate member)",
                                   static_cast<double>(grid.size()));
    }

    LoopSample loop;
    loop.mn = mn;
    loop.basepoint = basepoint_of(mn);
    loop.t.reserve(grid.size());
    loop.alpha.reserve(grid.size());
    loop.points.reserve(grid.size());
    loop.rel_sign.reserve(grid.size() - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        loop.t.push_back(grid[i].t);
        if (grid[i].neg_inf)
            loop.alpha.push_back(-std::numeric_limits<double>::infinity());
        else if (grid[i].pos_inf)
            loop.alpha.push_back(std::numeric_limits<double>::infinity());
        else
            loop.alpha.push_back(grid[i].alpha.get_d());
        loop.points.push_back(grid[i].pt);
        if (i > 0) loop.rel_sign.push_back(builder.anchor_sign(grid[i - 1], grid[i]));
    }
    return loop;
}

int loop_class_mod2(const LoopSample& loop) {
    if (loop.points.size() < 2 || loop.mn < 3)
        throw InvalidInput("loop_class_mod2: malformed loop sample");
    if (loop.rel_sign.size() + 1 != loop.points.size())
        throw InvalidInput("loop_class_mod2: missing continuation data");
    int lift = 1;
    for (std::size_t i = 1; i < loop.points.size(); ++i) {
        if (chordal_distance(loop.points[i - 1], loop.points[i]) >= 1.0)
            throw ContractViolation("ambiguous sign continuation: refine the loop first");
        const int s = loop.rel_sign[i - 1];
        if (s == 0) throw ContractViolation("unanchored interval: refine the loop first");
        lift *= s;
    }
    return lift > 0 ? 0 : 1;
}

int component_index_12(const Poly<Rational>& f) {
    if (f.is_zero() || !f.is_monic() || f.degree() < 1)
        throw InvalidInput("component_index_12: need a monic polynomial of positive degree");
    if (gcd_subresultant(f, f.derivative()).degree() != 0)
        throw InvalidInput("component_index_12: polynomial has a repeated root (not a member)");
    return (f.degree() - sturm_count(f)) / 2;
}

namespace {

template <typename K>
Poly<K> pullback_impl(const std::vector<Poly<K>>& jets, const std::vector<Rational>& weights) {
    if (weights.size() != jets.size())
        throw InvalidInput("hyperplane_pullback: need one weight per jet entry");
    bool any = false;
    for (const auto& w : weights)
        if (sgn(w) != 0) any = true;
    if (!any) throw InvalidInput("hyperplane_pullback: weights must not all vanish");
    Poly<K> acc;
    for (std::size_t i = 0; i < jets.size(); ++i) acc = acc + K(weights[i]) * jets[i];
    return acc;
}

}  // namespace

Poly<Rational> hyperplane_pullback(const System& sys, const std::vector<Rational>& weights) {
    return pullback_impl(jet_family(sys), weights);
}

Poly<GaussRational> hyperplane_pullback_gauss(const System& sys,
                                              const std::vector<Rational>& weights) {
    return pullback_impl(jet_family_gauss(sys), weights);
}

std::vector<EFieldSample> electric_field_samples(const std::vector<std::complex<double>>& roots,
                                                 const std::vector<std::complex<double>>& grid) {
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t k = i + 1; k < roots.size(); ++k)
            if (roots[i] == roots[k]) throw InvalidInput("electric_field_samples: roots must be distinct");
    std::vector<EFieldSample> out;
    out.reserve(grid.size());
    for (const auto& z : grid) {
        EFieldSample s;
        s.z = z;
        std::complex<double> acc = 1.0;
        for (const auto& a : roots) {
            if (z == a) {
                s.at_root = true;
                break;
            }
            acc += 1.0 / (z - a);
        }
        s.value = s.at_root ? std::complex<double>(0.0) : acc;
        out.push_back(s);
    }
    return out;
}

std::string LoopSample::to_csv() const {
    std::ostringstream os;
    os << "t,alpha";
    for (int k = 0; k < mn; ++k) os << ",x" << k;
    os << "\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << t[i] << "," << alpha[i];
        for (double x : points[i].v) os << "," << x;
        os << "\n";
    }
    return os.str();
}

}  // namespace nrs
