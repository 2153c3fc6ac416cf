#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "nrs/homology.hpp"
#include "nrs/spaces.hpp"

namespace nrs {

// ---------------------------------------------------------------------------
// Fox-Neuwirth chain complex: independent brute-force certificate for the
// mod-2 homology of the unordered configuration spaces C_j(C).

struct FNComplex {
    int j;
    // cells[q]: the ordered compositions (a_1,...,a_r) of j with dimension
    // q = j - r.
    std::vector<std::vector<std::vector<int>>> cells;
    // boundary[q]: mod-2 matrix of d: C_q -> C_{q+1}, rows indexed by target
    // cells, columns by source cells (bit-packed rows of the transpose).
    std::vector<std::vector<std::vector<std::uint64_t>>> boundary;

    /// Builds the complex; asserts d o d = 0 and the 2^{j-1} total cell count.
    static FNComplex build(int j);
};

/// Homology dims of the Fox-Neuwirth complex over F2, dimensions 0..qmax.
GradedDims fox_neuwirth_betti(int j, int qmax);

// ---------------------------------------------------------------------------
// Randomized membership experiments.

/// Rejection sampler for members: monic integer-coefficient polynomials with
/// coefficients uniform in [-bound, bound], resampled until the tuple is a
/// member.  Returns the accepted system; `rejections` counts discards.
System random_member(const SpaceId& id, std::mt19937_64& rng, int* rejections = nullptr,
                     int bound = 10);

struct SampleReport {
    int trials = 0;
    int member_count = 0;
    std::int64_t rejections = 0;
    std::map<std::pair<int, int>, int> stratum_histogram;  // (i, j) -> count
    std::uint64_t seed = 0;
    bool all_assertions_passed = true;
    std::vector<std::string> failures;
};

/// Plants a random (z - alpha)^n (real alpha) or a conjugate-pair quadratic
/// power into every slot of a random tuple, then asserts non-membership and
/// the planted stratum side.  Exceptions carry the reproducing seed.
SampleReport planted_root_fuzz(int d, int m, int n, int trials, std::uint64_t seed);

/// Unplanted draws: classifies random integer-coefficient tuples; every
/// flagged non-member is re-certified by an independent divisibility check.
struct MemberRateReport {
    int trials = 0;
    int members = 0;
    int genuine_nonmembers = 0;
    int uncertified_nonmembers = 0;  // must stay 0
    std::uint64_t seed = 0;
};
MemberRateReport member_rate_experiment(int d, int m, int n, int trials, std::uint64_t seed);

/// Independent certificate that a flagged non-member is genuine: the
/// derivative gcd is nonconstant and divides every derivative, exhibiting a
/// common n-fold root in the closure.
bool certify_nonmember(const System& sys);

// ---------------------------------------------------------------------------
// pi_0 experiment for (m, n) = (1, 2).

struct Pi0Report {
    int d = 0;
    int trials = 0;
    std::vector<int> histogram;  // index j = number of conjugate pairs
    int paths_checked = 0;
    int paths_discarded = 0;  // straight line crossed the discriminant
    int label_violations = 0;
    int label_mismatches = 0;  // sampler-planted j vs computed label
    std::uint64_t seed = 0;
    bool all_labels_seen = false;
};

/// Samples members of Poly^{d,1}_2(R) from root space (so every component is
/// reachable), labels them by conjugate-pair count, and checks label
/// constancy along straight segments certified to stay inside the space.
Pi0Report pi0_experiment_12(int d, int trials, std::uint64_t seed, int paths = 100);

/// Number of parameters t in (0, 1) where (1-t) f0 + t f1 leaves the space
/// (acquires a multiple root), decided exactly via the discriminant in t.
int segment_discriminant_roots(const Poly<Rational>& f0, const Poly<Rational>& f1);

}  // namespace nrs
