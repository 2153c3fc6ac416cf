#include "nrs/homology.hpp"

#include <algorithm>
#include <sstream>

namespace nrs {

std::string field_name(Field f) { return f == Field::F2 ? "F2" : "Q"; }

Field field_from_name(const std::string& s) {
    if (s == "F2" || s == "f2") return Field::F2;
    if (s == "Q" || s == "q") return Field::Q;
    throw InvalidInput("unknown field: \"" + s + "\" (expected f2 or q)");
}

GradedDims GradedDims::to_unreduced() const {
    if (!reduced) return *this;
    GradedDims out = *this;
    out.reduced = false;
    if (!out.dims.empty()) out.dims[0] += 1;
    return out;
}

StabilityDims stability_dims(int d, int m, int n) {
    if (m < 1 || n < 1 || d < 1 || (m == 1 && n == 1))
        throw InvalidInput("stability_dims: need d >= 1 and (m, n) != (1, 1)");
    const int eta = d / n;
    return {(m * n - 2) * (eta + 1) - 1, (2 * m * n - 3) * (eta + 1) - 1};
}

// ---------------------------------------------------------------------------
// Braid space dimensions over F2.

std::vector<DLMonomial> enumerate_dl_monomials(int max_weight) {
    if (max_weight < 0) throw InvalidInput("enumerate_dl_monomials: negative weight bound");
    int gens = 0;
    while ((2 << gens) <= max_weight) ++gens;  // generators y_1 .. y_gens
    std::vector<DLMonomial> out;
    DLMonomial cur;
    cur.exponents.assign(static_cast<std::size_t>(gens), 0);
    std::function<void(int, int)> rec = [&](int k, int budget) {
        if (k > gens) {
            out.push_back(cur);
            return;
        }
        const int w = 1 << k;
        for (int e = 0; e * w <= budget; ++e) {
            cur.exponents[static_cast<std::size_t>(k - 1)] = e;
            rec(k + 1, budget - e * w);
        }
        cur.exponents[static_cast<std::size_t>(k - 1)] = 0;
    };
    rec(1, max_weight);
    return out;
}

GradedDims config_space_betti_f2(int j, int qmax) {
    if (j < 0 || qmax < 0) throw InvalidInput("config_space_betti_f2: bad parameters");
    GradedDims out;
    out.field = Field::F2;
    out.reduced = false;
    out.dims.assign(static_cast<std::size_t>(qmax + 1), 0);
    for (const DLMonomial& mono : enumerate_dl_monomials(j)) {
        const int q = mono.degree();
        if (q <= qmax) out.dims[static_cast<std::size_t>(q)] += 1;
    }
    return out;
}

GradedDims dj_betti(int j, Field field, int qmax) {
    if (j < 1) throw InvalidInput("dj_betti: j >= 1 required");
    GradedDims out;
    out.field = field;
    out.reduced = true;
    out.dims.assign(static_cast<std::size_t>(qmax + 1), 0);
    if (field == Field::F2) {
        if (qmax >= j) {
            GradedDims base = config_space_betti_f2(j, qmax - j);
            for (int q = j; q <= qmax; ++q)
                out.dims[static_cast<std::size_t>(q)] = base.at(q - j);
        }
    } else {
        // Rationally the sign twist kills everything except D_1 = S^1.
        if (j == 1 && qmax >= 1) out.dims[1] = 1;
    }
    return out;
}

DjCache::DjCache(int jmax, int qmax) : jmax_(jmax), qmax_(qmax) {
    f2_.reserve(static_cast<std::size_t>(jmax));
    q_.reserve(static_cast<std::size_t>(jmax));
    for (int j = 1; j <= jmax; ++j) {
        f2_.push_back(dj_betti(j, Field::F2, qmax));
        q_.push_back(dj_betti(j, Field::Q, qmax));
    }
}

const GradedDims& DjCache::get(int j, Field field) const {
    if (j < 1 || j > jmax_) throw InvalidInput("DjCache: j out of range");
    return field == Field::F2 ? f2_[static_cast<std::size_t>(j - 1)]
                              : q_[static_cast<std::size_t>(j - 1)];
}

// ---------------------------------------------------------------------------
// Formulas.

SpaceKind space_kind_from_name(const std::string& s) {
    if (s == "polyC" || s == "polyc") return SpaceKind::PolyC;
    if (s == "polyR" || s == "polyr") return SpaceKind::PolyR;
    if (s == "qR" || s == "qr") return SpaceKind::QR;
    if (s == "B" || s == "b") return SpaceKind::B;
    if (s == "P" || s == "p") return SpaceKind::P;
    throw InvalidInput("unknown space kind: \"" + s + "\"");
}

std::string space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::PolyC: return "polyC";
        case SpaceKind::PolyR: return "polyR";
        case SpaceKind::QR: return "qR";
        case SpaceKind::B: return "B";
        case SpaceKind::P: return "P";
    }
    return "?";
}

std::string format_formula(const SpaceFormula& f) {
    if (f.summands.empty()) return "(point)";
    std::ostringstream os;
    bool first = true;
    for (const auto& s : f.summands) {
        if (!first) os << " v ";
        first = false;
        if (s.is_sphere)
            os << "S^" << s.param;
        else if (s.shift == 0)
            os << "D_" << s.param;
        else
            os << "Sigma^" << s.shift << " D_" << s.param;
    }
    return os.str();
}

SpaceFormula space_formula(SpaceKind kind, int d, int m, int n) {
    if (m < 1 || n < 1) throw InvalidInput("space_formula: bad (m, n)");
    if (m * n < 3) throw UnsupportedParameters("space_formula: needs mn >= 3");
    if (d < 0) throw InvalidInput("space_formula: d >= 0 required");
    const int eta = d / n;
    const int N = m * n - 2;
    SpaceFormula f;
    switch (kind) {
        case SpaceKind::PolyC:
            for (int j = 1; j <= eta; ++j) f.summands.push_back({false, 2 * N * j, j});
            break;
        case SpaceKind::QR:
            for (int k = 1; k <= eta; ++k) f.summands.push_back({true, 0, N * k});
            break;
        case SpaceKind::PolyR:
            for (int i = 1; i <= eta; ++i) f.summands.push_back({true, 0, N * i});
            for (int j = 1; 2 * j <= eta; ++j)
                for (int i = 0; i + 2 * j <= eta; ++i)
                    f.summands.push_back({false, N * (i + 2 * j), j});
            break;
        case SpaceKind::B:
            for (int j = 1; 1 + 2 * j <= eta; ++j)
                for (int i = 1; i + 2 * j <= eta; ++i)
                    f.summands.push_back({false, N * (i + 2 * j), j});
            break;
        case SpaceKind::P: {
            SpaceFormula c = space_formula(SpaceKind::PolyC, d / 2, m, n);
            SpaceFormula b = space_formula(SpaceKind::B, d, m, n);
            SpaceFormula q = space_formula(SpaceKind::QR, d, m, n);
            f.summands.insert(f.summands.end(), c.summands.begin(), c.summands.end());
            f.summands.insert(f.summands.end(), b.summands.begin(), b.summands.end());
            f.summands.insert(f.summands.end(), q.summands.begin(), q.summands.end());
            break;
        }
    }
    return f;
}

namespace {

GradedDims formula_betti_impl(const SpaceFormula& f, Field field, int qmax, const DjProvider& dj) {
    GradedDims out;
    out.field = field;
    out.reduced = true;
    out.dims.assign(static_cast<std::size_t>(qmax + 1), 0);
    for (const auto& s : f.summands) {
        if (s.is_sphere) {
            if (s.param <= qmax) out.dims[static_cast<std::size_t>(s.param)] += 1;
        } else {
            if (s.shift > qmax) continue;
            GradedDims d = dj(s.param, field, qmax - s.shift);
            for (int q = 0; q + s.shift <= qmax; ++q)
                out.dims[static_cast<std::size_t>(q + s.shift)] += d.at(q);
        }
    }
    return out;
}

}  // namespace

GradedDims formula_betti(const SpaceFormula& f, Field field, int qmax) {
    return formula_betti_impl(f, field, qmax,
                              [](int j, Field fl, int qm) { return dj_betti(j, fl, qm); });
}

GradedDims formula_betti(const SpaceFormula& f, Field field, int qmax, const DjCache& cache) {
    return formula_betti_impl(f, field, qmax, [&cache](int j, Field fl, int qm) {
        if (j > cache.jmax() || qm > cache.qmax()) return dj_betti(j, fl, qm);
        GradedDims d = cache.get(j, fl);
        d.dims.resize(static_cast<std::size_t>(qm + 1), 0);
        return d;
    });
}

// ---------------------------------------------------------------------------
// Loop space models.

GradedDims loop_sphere_betti(int N1, Field field, int qmax, std::optional<int> james_cut) {
    if (N1 < 2) throw UnsupportedParameters("loop_sphere_betti: N1 >= 2 required");
    GradedDims out;
    out.field = field;
    out.reduced = false;
    out.dims.assign(static_cast<std::size_t>(qmax + 1), 0);
    const int step = N1 - 1;
    for (int c = 0; c * step <= qmax; ++c) {
        if (james_cut && c > *james_cut) break;
        out.dims[static_cast<std::size_t>(c * step)] += 1;
    }
    return out;
}

GradedDims double_loop_betti(int N2, Field field, int qmax) {
    if (N2 < 1) throw UnsupportedParameters("double_loop_betti: N2 >= 1 required");
    GradedDims out;
    out.field = field;
    out.reduced = false;
    out.dims.assign(static_cast<std::size_t>(qmax + 1), 0);
    out.dims[0] = 1;
    if (field == Field::Q) {
        const int g = 2 * N2 - 1;
        if (g <= qmax) out.dims[static_cast<std::size_t>(g)] += 1;
        return out;
    }
    // F2: polynomial algebra, generator degrees 2^k (2 N2) - 1.
    for (int k = 0;; ++k) {
        const long long deg = (1LL << k) * (2LL * N2) - 1;
        if (deg > qmax) break;
        const int g = static_cast<int>(deg);
        for (int q = g; q <= qmax; ++q)
            out.dims[static_cast<std::size_t>(q)] += out.dims[static_cast<std::size_t>(q - g)];
    }
    return out;
}

GradedDims loop_model_betti(int N2, int N1, Field field, int qmax, std::optional<int> james_cut) {
    GradedDims a = double_loop_betti(N2, field, qmax);
    GradedDims b = loop_sphere_betti(N1, field, qmax, james_cut);
    GradedDims out;
    out.field = field;
    out.reduced = false;
    out.dims.assign(static_cast<std::size_t>(qmax + 1), 0);
    for (int q = 0; q <= qmax; ++q) {
        std::int64_t acc = 0;
        for (int i = 0; i <= q; ++i) acc += a.at(i) * b.at(q - i);
        out.dims[static_cast<std::size_t>(q)] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// E^1 page.

std::int64_t E1Table::antidiagonal_total(int s) const {
    std::int64_t acc = 0;
    for (const auto& [ks, v] : entries)
        if (ks.second - ks.first == s) acc += v;
    return acc;
}

namespace {

E1Table e1_table_impl(int d, int m, int n, Field field, int smax, bool truncated,
                      const DjProvider& dj) {
    if (m * n < 3) throw UnsupportedParameters("e1_table: needs mn >= 3");
    E1Table t;
    t.d = d;
    t.m = m;
    t.n = n;
    t.field = field;
    const int eta = d / n;
    const int N = m * n - 2;
    for (int k = 1; k <= eta; ++k) {
        const int base = (m * n - 1) * k;
        if (base <= smax) {
            // The S^0 contribution.
            t.entries[{k, base}] += 1;
        }
        const int jhi = truncated ? std::min(k, eta - k) : k;
        for (int j = 1; j <= jhi; ++j) {
            const int shift = N * j;
            GradedDims dd = dj(j, field, std::max(0, smax - base));
            for (int s = base + shift; s <= smax; ++s) {
                // dim H~_{s-base}(Sigma^{shift} D_j)
                std::int64_t v = dd.at(s - base - shift);
                if (v) t.entries[{k, s}] += v;
            }
        }
    }
    // Drop explicit zeros so sparsity assertions are meaningful.
    for (auto it = t.entries.begin(); it != t.entries.end();)
        it = (it->second == 0) ? t.entries.erase(it) : std::next(it);
    return t;
}

}  // namespace

E1Table e1_table(int d, int m, int n, Field field, int smax, bool truncated) {
    return e1_table_impl(d, m, n, field, smax, truncated,
                         [](int j, Field fl, int qm) { return dj_betti(j, fl, qm); });
}

// ---------------------------------------------------------------------------
// verify_theorems.

VerifyReport verify_theorems(int d, int m, int n, Field field, int qmax, const DjProvider& dj_in) {
    if (m * n < 3) throw UnsupportedParameters("verify_theorems: needs mn >= 3");
    if (d < 1) throw InvalidInput("verify_theorems: d >= 1");
    const DjProvider dj =
        dj_in ? dj_in : DjProvider([](int j, Field fl, int qm) { return dj_betti(j, fl, qm); });
    const StabilityDims D = stability_dims(d, m, n);
    if (qmax < 0) qmax = D.complex_ + 10;
    const int eta = d / n;
    const int N = m * n - 2;

    VerifyReport rep;
    rep.d = d;
    rep.m = m;
    rep.n = n;
    rep.field = field;
    rep.qmax = qmax;

    auto fail = [&rep](char check, int q, std::int64_t lhs, std::int64_t rhs) {
        rep.pass = false;
        rep.failures.push_back({check, q, lhs, rhs});
    };

    auto betti_of = [&](SpaceKind kind, int dd) {
        return formula_betti_impl(space_formula(kind, dd, m, n), field, qmax, dj);
    };

    // (a) Poly_R splitting vs Omega^2 S^{2mn-1} x Omega S^{mn-1} through D.
    {
        GradedDims lhs = betti_of(SpaceKind::PolyR, d).to_unreduced();
        GradedDims rhs = loop_model_betti(m * n - 1, m * n - 1, field, qmax);
        for (int q = 0; q <= std::min(D.real, qmax); ++q)
            if (lhs.at(q) != rhs.at(q)) fail('a', q, lhs.at(q), rhs.at(q));
        for (int q = 0; q <= qmax; ++q)
            if (lhs.at(q) != rhs.at(q)) {
                rep.first_mismatch_a = q;
                break;
            }
    }
    // (b) Poly_C splitting vs Omega^2 S^{2mn-1} through D_C.
    {
        GradedDims lhs = betti_of(SpaceKind::PolyC, d).to_unreduced();
        GradedDims rhs = double_loop_betti(m * n - 1, field, qmax);
        for (int q = 0; q <= std::min(D.complex_, qmax); ++q)
            if (lhs.at(q) != rhs.at(q)) fail('b', q, lhs.at(q), rhs.at(q));
        for (int q = 0; q <= qmax; ++q)
            if (lhs.at(q) != rhs.at(q)) {
                rep.first_mismatch_b = q;
                break;
            }
    }
    // (c) Q_R vs the James-truncated Omega S^{mn-1} through D.
    {
        GradedDims lhs = betti_of(SpaceKind::QR, d).to_unreduced();
        GradedDims rhs = loop_sphere_betti(m * n - 1, field, qmax, eta);
        for (int q = 0; q <= std::min(D.real, qmax); ++q)
            if (lhs.at(q) != rhs.at(q)) fail('c', q, lhs.at(q), rhs.at(q));
        for (int q = 0; q <= qmax; ++q)
            if (lhs.at(q) != rhs.at(q)) {
                rep.first_mismatch_c = q;
                break;
            }
    }
    // (d) E^1 antidiagonal totals vs the model space P.
    {
        E1Table t = e1_table_impl(d, m, n, field, eta + qmax, /*truncated=*/true, dj);
        GradedDims p = betti_of(SpaceKind::P, d);
        for (int s = 0; s <= qmax; ++s) {
            std::int64_t lhs = t.antidiagonal_total(s);
            if (lhs != p.at(s)) fail('d', s, lhs, p.at(s));
        }
    }
    // (e) Degree-shift identity Poly_R(d, m, n) = Poly_R(floor(d/n), mn, 1).
    {
        GradedDims lhs = betti_of(SpaceKind::PolyR, d);
        GradedDims rhs =
            formula_betti_impl(space_formula(SpaceKind::PolyR, eta, m * n, 1), field, qmax, dj);
        for (int q = 0; q <= qmax; ++q)
            if (lhs.at(q) != rhs.at(q)) fail('e', q, lhs.at(q), rhs.at(q));
    }
    // (f) Stability d -> d+1.
    {
        GradedDims lhs = betti_of(SpaceKind::PolyR, d);
        GradedDims rhs = betti_of(SpaceKind::PolyR, d + 1);
        const bool same_eta = (d / n) == ((d + 1) / n);
        const int limit = same_eta ? qmax : std::min(D.real, qmax);
        for (int q = 0; q <= limit; ++q)
            if (lhs.at(q) != rhs.at(q)) fail('f', q, lhs.at(q), rhs.at(q));
    }
    // (g) Snaith consistency: the full wedge sum over j vs the reduced
    // Omega^2 model.
    {
        GradedDims rhs = double_loop_betti(m * n - 1, field, qmax);
        std::vector<std::int64_t> lhs(static_cast<std::size_t>(qmax + 1), 0);
        lhs[0] = 1;
        for (int j = 1; 2 * N * j + j <= qmax; ++j) {
            GradedDims dd = dj(j, field, qmax - 2 * N * j);
            for (int q = 0; q + 2 * N * j <= qmax; ++q)
                lhs[static_cast<std::size_t>(q + 2 * N * j)] += dd.at(q);
        }
        for (int q = 0; q <= qmax; ++q)
            if (lhs[static_cast<std::size_t>(q)] != rhs.at(q))
                fail('g', q, lhs[static_cast<std::size_t>(q)], rhs.at(q));
    }
    return rep;
}

}  // namespace nrs
