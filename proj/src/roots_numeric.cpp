#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "nrs/errors.hpp"
#include "nrs/polyarith.hpp"

namespace nrs {

namespace {

using Cplx = std::complex<double>;

Cplx horner(const std::vector<Cplx>& c, Cplx x) {
    Cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Parlett-Reinsch style balancing: scale row/column pairs by powers of two
// until their norms are comparable.  Improves eigenvalue accuracy for
// companion matrices with coefficients of mixed magnitude.
void balance(Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ < 16) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            double r = m.row(i).lpNorm<1>() - std::abs(m(i, i));
            double c = m.col(i).lpNorm<1>() - std::abs(m(i, i));
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c > r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (f != 1.0) {
                m.row(i) /= f;
                m.col(i) *= f;
                changed = true;
            }
        }
    }
}

}  // namespace

std::vector<Cplx> roots_numeric(const std::vector<Cplx>& coeffs, double tol) {
    std::vector<Cplx> c = coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() < 2) throw InvalidInput("roots_numeric needs degree >= 1");
    const int deg = static_cast<int>(c.size()) - 1;
    const Cplx lead = c.back();
    for (auto& x : c) x /= lead;

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i];
    balance(comp);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("companion eigenvalue iteration failed", 0.0);

    std::vector<Cplx> roots(deg);
    for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()[i];

    // One Newton step per root, kept only when it reduces |f|: near multiple
    // roots both f and f' are cancellation noise and the raw quotient can
    // throw an accurate eigenvalue far off.
    std::vector<Cplx> dc(deg);
    for (int i = 1; i <= deg; ++i) dc[i - 1] = c[i] * static_cast<double>(i);
    for (auto& r : roots) {
        Cplx fp = horner(dc, r);
        if (std::abs(fp) <= 1e-300) continue;
        const Cplx f0 = horner(c, r);
        const Cplx step = f0 / fp;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
        const Cplx candidate = r - step;
        if (std::abs(horner(c, candidate)) < std::abs(f0)) r = candidate;
    }

    // Cluster near-coincident roots (multiple-root eigenvalue scatter) to a
    // common centroid.
    const double cluster_tol = 1e-6;
    std::vector<int> group(deg);
    for (int i = 0; i < deg; ++i) group[i] = i;
    std::function<int(int)> find = [&](int i) { return group[i] == i ? i : group[i] = find(group[i]); };
    for (int i = 0; i < deg; ++i)
        for (int j = i + 1; j < deg; ++j)
            if (std::abs(roots[i] - roots[j]) <= cluster_tol) group[find(i)] = find(j);
    std::vector<Cplx> sum(deg, 0.0);
    std::vector<int> count(deg, 0);
    for (int i = 0; i < deg; ++i) {
        sum[find(i)] += roots[i];
        ++count[find(i)];
    }
    for (int i = 0; i < deg; ++i) roots[i] = sum[find(i)] / static_cast<double>(count[find(i)]);

    double worst = 0.0;
    for (const auto& r : roots) {
        double denom = std::pow(1.0 + std::abs(r), deg);
        worst = std::max(worst, std::abs(horner(c, r)) / denom);
    }
    if (!(worst <= tol))
        throw NumericalFailure("root residual above tolerance", worst);
    return roots;
}

}  // namespace nrs
