#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specialsys/divisor.hpp"

namespace specialsys {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1
inline constexpr std::uint64_t kDefaultSeed = 365248766ULL;
inline constexpr int kDefaultTrials = 3;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

struct OracleConfig {
    std::uint64_t prime = kDefaultPrime;
    int trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
    int jobs = 1;
};

/// Dimension query for a plane system: curves of degree d vanishing to
/// order mults[i] at random points of an affine chart over F_p.
///
/// The prime must exceed the degree so derivative coefficients stay
/// nonzero mod p. Rank at random points is maximal with probability
/// >= 1 - (defect-locus degree)/p; the max over trials absorbs bad
/// draws. With p near 2^31 and 3 trials the failure probability is
/// negligible, and a rank deficiency observed mod p certifies
/// speciality in characteristic 0 once reproduced for independent
/// primes.
struct InterpolationProblem {
    Int degree = 0;
    std::vector<Int> mults;
    std::uint64_t prime = kDefaultPrime;
    int trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;

    /// Throws std::invalid_argument on violated invariants
    /// (composite or too-small prime, mults < 1, trials < 1).
    void validate() const;

    /// Monomial count (d+1)(d+2)/2.
    Int monomial_count() const;
};

struct RankResult {
    int rank = 0;                // max over trials
    Int adim = -1;               // monomial_count - 1 - rank
    std::vector<int> per_trial;  // rank of each trial, in trial order
};

struct FatPoint {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    Int mult = 1;
};

using FpMatrix = std::vector<std::vector<std::uint64_t>>;

/// Derivative-conditions matrix: one row per (point, derivative order
/// (a, b) with a + b < mult), one column per monomial x^alpha y^beta
/// of total degree <= d (ordered by total degree, then alpha
/// descending: 1, x, y, x^2, xy, y^2, ...). Entries are plain mixed
/// partials with falling-factorial coefficients reduced mod p.
/// Requires p > d.
FpMatrix conditions_matrix(Int degree, std::span<const FatPoint> points, std::uint64_t p);

/// Rank over F_p by Gaussian elimination with partial pivoting on the
/// first nonzero entry. Destroys the matrix.
int rank_mod_p(FpMatrix& m, std::uint64_t p);

/// Actual projective dimension of the system: for each trial draw the
/// points uniformly at random (rejecting exact coordinate
/// collisions), compute the rank, and take the max. The generator is
/// split per trial from the seed, so results are independent of
/// `jobs` and identical across runs and platforms.
RankResult actual_dim(const InterpolationProblem& problem, int jobs = 1);

struct DimensionPair {
    Int vdim = 0;
    Int adim = 0;
    bool special = false;  // adim > max(vdim, -1)
};

/// Interpolation problem for a rational plane system: the nonzero
/// multiplicities of the full class become fat points. Negative
/// entries are rejected.
InterpolationProblem interpolation_problem(const SystemSpec& spec, const OracleConfig& config = {});

/// Bridges the Riemann-Roch count and the rank oracle for a rational
/// plane system. Zero multiplicities are skipped; negative entries are
/// rejected (honest input systems only).
DimensionPair dimension_pair(const SystemSpec& spec, const OracleConfig& config = {});

}  // namespace specialsys
