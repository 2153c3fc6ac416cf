#include "nrs/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "nrs/scanning.hpp"

namespace nrs {

// ---------------------------------------------------------------------------
// Fox-Neuwirth complex.

namespace {

// binom(a+b, a) mod 2 by Lucas: odd exactly when a and b share no binary digit.
inline int binom_mod2(int a, int b) { return (a & b) == 0 ? 1 : 0; }

}  // namespace

FNComplex FNComplex::build(int j) {
    if (j < 1 || j > 8) throw InvalidInput("FNComplex: 1 <= j <= 8");
    FNComplex fn;
    fn.j = j;
    fn.cells.assign(static_cast<std::size_t>(j), {});
    // Compositions of j <-> subsets of the j-1 gaps.
    for (int mask = 0; mask < (1 << (j - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int g = 0; g < j - 1; ++g) {
            if (mask & (1 << g)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        const int q = j - static_cast<int>(parts.size());
        fn.cells[static_cast<std::size_t>(q)].push_back(std::move(parts));
    }
    std::size_t total = 0;
    for (const auto& cs : fn.cells) total += cs.size();
    if (total != (std::size_t(1) << (j - 1)))
        throw ContractViolation("Fox-Neuwirth cell count mismatch");

    // Index maps per dimension.
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(j));
    for (std::size_t q = 0; q < fn.cells.size(); ++q)
        for (std::size_t i = 0; i < fn.cells[q].size(); ++i)
            index[q][fn.cells[q][i]] = static_cast<int>(i);

    auto differential = [&](const std::vector<int>& cell) {
        std::map<std::vector<int>, int> image;
        for (std::size_t i = 0; i + 1 < cell.size(); ++i) {
            if (!binom_mod2(cell[i], cell[i + 1])) continue;
            std::vector<int> merged;
            merged.reserve(cell.size() - 1);
            for (std::size_t l = 0; l < cell.size(); ++l) {
                if (l == i) {
                    merged.push_back(cell[i] + cell[i + 1]);
                    ++l;
                } else {
                    merged.push_back(cell[l]);
                }
            }
            image[merged] ^= 1;
        }
        return image;
    };

    // Bit-packed columns of d_q : C_q -> C_{q+1}, one row of bits per source.
    fn.boundary.assign(static_cast<std::size_t>(j), {});
    for (int q = 0; q + 1 < j; ++q) {
        const auto& src = fn.cells[static_cast<std::size_t>(q)];
        const auto& dst_index = index[static_cast<std::size_t>(q + 1)];
        const std::size_t words = (dst_index.size() + 63) / 64;
        auto& mat = fn.boundary[static_cast<std::size_t>(q)];
        mat.assign(src.size(), std::vector<std::uint64_t>(words, 0));
        for (std::size_t c = 0; c < src.size(); ++c) {
            for (const auto& [cell, coef] : differential(src[c])) {
                if (!coef) continue;
                const int r = dst_index.at(cell);
                mat[c][static_cast<std::size_t>(r) / 64] |= std::uint64_t(1) << (r % 64);
            }
        }
    }

    // d o d = 0 check, straight from the definition.
    for (int q = 0; q + 2 < j; ++q) {
        for (const auto& cell : fn.cells[static_cast<std::size_t>(q)]) {
            std::map<std::vector<int>, int> dd;
            for (const auto& [mid, c1] : differential(cell)) {
                if (!c1) continue;
                for (const auto& [end, c2] : differential(mid))
                    if (c2) dd[end] ^= 1;
            }
            for (const auto& [cell2, v] : dd)
                if (v) throw ContractViolation("Fox-Neuwirth differential does not square to zero");
        }
    }
    return fn;
}

namespace {

int f2_rank(std::vector<std::vector<std::uint64_t>> rows) {
    int rank = 0;
    std::size_t ncols = rows.empty() ? 0 : rows[0].size() * 64;
    for (std::size_t col = 0; col < ncols; ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t(1) << (col % 64);
        std::size_t pivot = std::size_t(-1);
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
            if (rows[r][w] & bit) {
                pivot = r;
                break;
            }
        if (pivot == std::size_t(-1)) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != static_cast<std::size_t>(rank) && (rows[r][w] & bit))
                for (std::size_t k = 0; k < rows[r].size(); ++k)
                    rows[r][k] ^= rows[static_cast<std::size_t>(rank)][k];
        }
        ++rank;
        if (rank == static_cast<int>(rows.size())) break;
    }
    return rank;
}

}  // namespace

GradedDims fox_neuwirth_betti(int j, int qmax) {
    FNComplex fn = FNComplex::build(j);
    std::vector<int> rank(static_cast<std::size_t>(j), 0);  // rank of d_q
    for (int q = 0; q + 1 < j; ++q)
        rank[static_cast<std::size_t>(q)] = f2_rank(fn.boundary[static_cast<std::size_t>(q)]);
    GradedDims out;
    out.field = Field::F2;
    out.reduced = false;
    out.dims.assign(static_cast<std::size_t>(qmax + 1), 0);
    for (int q = 0; q < j && q <= qmax; ++q) {
        std::int64_t dim = static_cast<std::int64_t>(fn.cells[static_cast<std::size_t>(q)].size());
        dim -= rank[static_cast<std::size_t>(q)];
        if (q > 0) dim -= rank[static_cast<std::size_t>(q - 1)];
        out.dims[static_cast<std::size_t>(q)] = dim;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random members.

namespace {

Poly<Rational> random_monic_real(int d, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = Rational(dist(rng));
    c[static_cast<std::size_t>(d)] = 1;
    return Poly<Rational>(std::move(c));
}

Poly<GaussRational> random_monic_gauss(int d, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<GaussRational> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i < d; ++i)
        c[static_cast<std::size_t>(i)] = GaussRational(Rational(dist(rng)), Rational(dist(rng)));
    c[static_cast<std::size_t>(d)] = GaussRational(Rational(1));
    return Poly<GaussRational>(std::move(c));
}

System random_tuple(const SpaceId& id, std::mt19937_64& rng, int bound) {
    if (id.family == Family::PolyC) {
        std::vector<Poly<GaussRational>> polys;
        for (int k = 0; k < id.m; ++k) polys.push_back(random_monic_gauss(id.d, rng, bound));
        return make_system_gauss(id, std::move(polys));
    }
    std::vector<Poly<Rational>> polys;
    for (int k = 0; k < id.m; ++k) polys.push_back(random_monic_real(id.d, rng, bound));
    return make_system(id, std::move(polys));
}

}  // namespace

System random_member(const SpaceId& id, std::mt19937_64& rng, int* rejections, int bound) {
    if (id.family == Family::PolyRHplus)
        throw UnsupportedParameters("random_member: H+ members have measure-zero normal forms; construct them");
    for (int tries = 0;; ++tries) {
        System sys = random_tuple(id, rng, bound);
        if (is_member(sys)) {
            if (rejections) *rejections = tries;
            return sys;
        }
        if (tries > 100000)
            throw NumericalFailure("random_member: rejection sampling did not terminate", tries);
    }
}

bool certify_nonmember(const System& sys) {
    // Independent of the membership fast path: exhibit the nonconstant
    // derivative gcd and verify the divisibility it asserts.
    const int n = sys.space.n;
    if (sys.is_gauss()) {
        Poly<GaussRational> g = common_nfold_gcd(sys.gauss_polys, n);
        if (g.degree() < 1) return false;
        for (const auto& f : sys.gauss_polys) {
            Poly<GaussRational> der = f;
            for (int t = 0; t < n; ++t) {
                if (!divides(g, der)) return false;
                der = der.derivative();
            }
        }
        return true;
    }
    Poly<Rational> g = common_nfold_gcd(sys.real_polys, n);
    if (g.degree() < 1) return false;
    for (const auto& f : sys.real_polys) {
        Poly<Rational> der = f;
        for (int t = 0; t < n; ++t) {
            if (!divides(g, der)) return false;
            der = der.derivative();
        }
    }
    return true;
}

SampleReport planted_root_fuzz(int d, int m, int n, int trials, std::uint64_t seed) {
    if (d < n) throw InvalidInput("planted_root_fuzz: needs d >= n");
    SampleReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 4);
    std::uniform_int_distribution<long> pos(1, 20);
    SpaceId id{Family::PolyR, d, m, n};

    auto record_failure = [&](const std::string& what, int trial) {
        rep.all_assertions_passed = false;
        std::ostringstream os;
        os << what << " (trial " << trial << ", seed " << seed << ")";
        rep.failures.push_back(os.str());
    };

    for (int trial = 0; trial < trials; ++trial) {
        ++rep.trials;
        const bool plant_pair = (d >= 2 * n) && (rng() & 1);
        Poly<Rational> plant;
        int cofactor_deg;
        if (plant_pair) {
            Rational a = make_rational(num(rng), den(rng));
            Rational b = make_rational(pos(rng), den(rng));
            plant = Poly<Rational>(std::vector<Rational>{a * a + b * b, -2 * a, Rational(1)});
            cofactor_deg = d - 2 * n;
        } else {
            Rational alpha = make_rational(num(rng), den(rng));
            plant = Poly<Rational>(std::vector<Rational>{-alpha, Rational(1)});
            cofactor_deg = d - n;
        }
        Poly<Rational> plant_n = pow(plant, n);
        std::vector<Poly<Rational>> polys;
        for (int k = 0; k < m; ++k) {
            Poly<Rational> h = cofactor_deg == 0 ? Poly<Rational>::one()
                                                 : random_monic_real(cofactor_deg, rng, 10);
            polys.push_back(plant_n * h);
        }
        System sys = make_system(id, std::move(polys));
        if (is_member(sys)) {
            record_failure("planted tuple classified as member", trial);
            continue;
        }
        if (!certify_nonmember(sys)) {
            record_failure("divisibility certificate disagrees with the membership path", trial);
            continue;
        }
        auto sig = stratum_signature(sys);
        if (!sig) {
            record_failure("non-member has no stratum signature", trial);
            continue;
        }
        rep.stratum_histogram[{sig->i, sig->j}] += 1;
        if (plant_pair && sig->j < 1) record_failure("planted conjugate pair not seen in stratum", trial);
        if (!plant_pair && sig->i < 1) record_failure("planted real root not seen in stratum", trial);
    }
    return rep;
}

MemberRateReport member_rate_experiment(int d, int m, int n, int trials, std::uint64_t seed) {
    MemberRateReport rep;
    rep.seed = seed;
    rep.trials = trials;
    std::mt19937_64 rng(seed);
    SpaceId id{Family::PolyR, d, m, n};
    for (int trial = 0; trial < trials; ++trial) {
        System sys = random_tuple(id, rng, 10);
        if (is_member(sys)) {
            ++rep.members;
        } else if (certify_nonmember(sys)) {
            ++rep.genuine_nonmembers;
        } else {
            ++rep.uncertified_nonmembers;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Segment discriminant.

namespace {

Rational det_exact(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(a[r][col]) == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

/// Resultant of f and f' via the Sylvester determinant.
Rational resultant_with_derivative(const Poly<Rational>& f) {
    const Poly<Rational> df = f.derivative();
    const int p = f.degree(), q = df.degree();
    const std::size_t n = static_cast<std::size_t>(p + q);
    std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n, Rational(0)));
    for (int r = 0; r < q; ++r)
        for (int c = 0; c <= p; ++c) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + c)] = f.coeff(p - c);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c <= q; ++c)
            s[static_cast<std::size_t>(q + r)][static_cast<std::size_t>(r + c)] = df.coeff(q - c);
    return det_exact(std::move(s));
}

}  // namespace

int segment_discriminant_roots(const Poly<Rational>& f0, const Poly<Rational>& f1) {
    if (f0.degree() != f1.degree() || !f0.is_monic() || !f1.is_monic())
        throw InvalidInput("segment_discriminant_roots: need monic polynomials of equal degree");
    const int d = f0.degree();
    const int rdeg = 2 * d - 1;  // degree bound of Res_z(f_t, f_t') in t
    // Interpolate the resultant as a polynomial in t from rdeg + 1 values.
    std::vector<Rational> nodes, values;
    for (int v = 0; v <= rdeg; ++v) {
        Rational t = make_rational(v, static_cast<long>(rdeg + 1));
        Poly<Rational> ft = (Rational(1) - t) * f0 + t * f1;
        nodes.push_back(t);
        values.push_back(resultant_with_derivative(ft));
    }
    Poly<Rational> r;
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        Poly<Rational> basis = Poly<Rational>::one();
        Rational denom(1);
        for (std::size_t w = 0; w < nodes.size(); ++w) {
            if (w == v) continue;
            basis = basis * Poly<Rational>(std::vector<Rational>{-nodes[w], Rational(1)});
            denom *= nodes[v] - nodes[w];
        }
        r = r + (values[v] / denom) * basis;
    }
    if (r.is_zero())
        throw ContractViolation("segment discriminant vanishes identically (endpoints not members?)");
    if (sgn(r.eval<Rational>(Rational(0))) == 0 || sgn(r.eval<Rational>(Rational(1))) == 0)
        return 1;  // an endpoint sits on the discriminant
    return sturm_count(squarefree_part(r), Interval{Rational(0), Rational(1)});
}

// ---------------------------------------------------------------------------
// pi_0 experiment for (m, n) = (1, 2).

namespace {

// Root data of a Poly^{d,1}_2(R) member with exactly j conjugate pairs.
// Sampling in root space reaches every component, which coefficient-box
// sampling cannot do for the all-real component at d = 8.
struct RootData12 {
    std::vector<Rational> reals;
    std::vector<std::pair<Rational, Rational>> pairs;  // (a, b), roots a +- b i, b > 0
};

RootData12 sample_root_data(int d, int j, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> pos(1, 40);
    RootData12 data;
    std::set<Rational> reals;
    while (static_cast<int>(reals.size()) < d - 2 * j) reals.insert(make_rational(num(rng), 4));
    data.reals.assign(reals.begin(), reals.end());
    std::set<std::pair<Rational, Rational>> pairs;
    while (static_cast<int>(pairs.size()) < j)
        pairs.insert({make_rational(num(rng), 4), make_rational(pos(rng), 4)});
    data.pairs.assign(pairs.begin(), pairs.end());
    return data;
}

RootData12 jitter_root_data(const RootData12& base, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> off(-3, 3);
    RootData12 out = base;
    for (auto& x : out.reals) x += make_rational(off(rng), 64);
    for (auto& [a, b] : out.pairs) {
        a += make_rational(off(rng), 64);
        b += make_rational(off(rng), 64);
        if (!(b > 0)) b = make_rational(1, 64);
    }
    return out;
}

Poly<Rational> poly_from_root_data(const RootData12& data) {
    Poly<Rational> f = Poly<Rational>::one();
    for (const auto& x : data.reals)
        f = f * Poly<Rational>(std::vector<Rational>{-x, Rational(1)});
    for (const auto& [a, b] : data.pairs)
        f = f * Poly<Rational>(std::vector<Rational>{a * a + b * b, -2 * a, Rational(1)});
    return f;
}

Poly<Rational> member_with_pairs(int d, int j, std::mt19937_64& rng) {
    return poly_from_root_data(sample_root_data(d, j, rng));
}

}  // namespace

Pi0Report pi0_experiment_12(int d, int trials, std::uint64_t seed, int paths) {
    if (d < 1) throw InvalidInput("pi0_experiment_12: d >= 1");
    Pi0Report rep;
    rep.d = d;
    rep.seed = seed;
    rep.trials = trials;
    const int jmax = d / 2;
    rep.histogram.assign(static_cast<std::size_t>(jmax) + 1, 0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> jdist(0, jmax);

    for (int trial = 0; trial < trials; ++trial) {
        const int j = jdist(rng);
        Poly<Rational> f = member_with_pairs(d, j, rng);
        const int label = component_index_12(f);
        if (label < 0 || label > jmax) throw ContractViolation("pi0 label out of range");
        rep.histogram[static_cast<std::size_t>(label)] += 1;
        if (label != j) ++rep.label_mismatches;
    }
    rep.all_labels_seen = std::all_of(rep.histogram.begin(), rep.histogram.end(),
                                      [](int c) { return c > 0; });

    // Straight-line label constancy on segments certified (exactly, via the
    // discriminant in t) to stay inside the space.
    for (int p = 0; p < paths; ++p) {
        const int j = jdist(rng);
        Poly<Rational> f0, f1;
        bool found = false;
        for (int attempt = 0; attempt < 24 && !found; ++attempt) {
            RootData12 base = sample_root_data(d, j, rng);
            f0 = poly_from_root_data(base);
            // Independent far pairs first; nearby jittered pairs once those
            // keep crossing the discriminant.
            f1 = attempt < 8 ? member_with_pairs(d, j, rng)
                             : poly_from_root_data(jitter_root_data(base, rng));
            if (f0 != f1 && segment_discriminant_roots(f0, f1) == 0) {
                found = true;
            } else {
                ++rep.paths_discarded;
            }
        }
        if (!found) continue;
        ++rep.paths_checked;
        for (int step = 0; step <= 100; ++step) {
            Rational t = make_rational(step, 100);
            Poly<Rational> ft = (Rational(1) - t) * f0 + t * f1;
            if (component_index_12(ft) != j) {
                ++rep.label_violations;
                break;
            }
        }
    }
    return rep;
}

}  // namespace nrs
