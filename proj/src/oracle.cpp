#include "specialsys/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace specialsys {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) acc = mulmod(acc, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return acc;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// splitmix64 finalizer; the whole generator is fixed here so results
// never depend on the platform's std:: distributions.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() { return mix64(state += 0x9E3779B97F4A7C15ULL); }
    std::uint64_t next_mod(std::uint64_t p) { return next() % p; }
};

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    return mix64(seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(trial + 1)));
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic witness set for 64-bit integers
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

void InterpolationProblem::validate() const {
    if (degree < 0) throw std::invalid_argument("oracle: negative degree");
    if (degree > 2000) throw std::invalid_argument("oracle: degree too large for dense interpolation");
    if (!is_prime_u64(prime)) throw std::invalid_argument("oracle: modulus is not prime");
    if (prime <= static_cast<std::uint64_t>(degree)) throw std::invalid_argument("oracle: prime must exceed the degree");
    if (prime >= (1ULL << 62)) throw std::invalid_argument("oracle: prime too large");
    if (trials < 1) throw std::invalid_argument("oracle: trials must be positive");
    for (Int m : mults)
        if (m < 1) throw std::invalid_argument("oracle: point multiplicities must be >= 1");
}

Int InterpolationProblem::monomial_count() const { return (degree + 1) * (degree + 2) / 2; }

FpMatrix conditions_matrix(Int degree, std::span<const FatPoint> points, std::uint64_t p) {
    if (p <= static_cast<std::uint64_t>(degree))
        throw std::invalid_argument("conditions_matrix: prime must exceed the degree");
    const Int d = degree;
    const std::size_t cols = static_cast<std::size_t>((d + 1) * (d + 2) / 2);

    // falling factorials ff[n][k] = n (n-1) ... (n-k+1) mod p
    std::vector<std::vector<std::uint64_t>> ff(static_cast<std::size_t>(d + 1));
    for (Int n = 0; n <= d; ++n) {
        ff[n].resize(static_cast<std::size_t>(n + 1));
        ff[n][0] = 1;
        for (Int k = 1; k <= n; ++k) ff[n][k] = mulmod(ff[n][k - 1], static_cast<std::uint64_t>(n - k + 1) % p, p);
    }

    FpMatrix rows;
    for (const FatPoint& pt : points) {
        std::vector<std::uint64_t> xpow(static_cast<std::size_t>(d + 1)), ypow(xpow.size());
        xpow[0] = ypow[0] = 1 % p;
        for (Int e = 1; e <= d; ++e) {
            xpow[e] = mulmod(xpow[e - 1], pt.x % p, p);
            ypow[e] = mulmod(ypow[e - 1], pt.y % p, p);
        }
        for (Int order = 0; order < pt.mult; ++order) {
            for (Int a = order; a >= 0; --a) {
                const Int b = order - a;
                std::vector<std::uint64_t> row(cols, 0);
                std::size_t col = 0;
                for (Int total = 0; total <= d; ++total) {
                    for (Int alpha = total; alpha >= 0; --alpha, ++col) {
                        const Int beta = total - alpha;
                        if (alpha < a || beta < b) continue;
                        std::uint64_t v = mulmod(ff[alpha][a], ff[beta][b], p);
                        v = mulmod(v, xpow[alpha - a], p);
                        v = mulmod(v, ypow[beta - b], p);
                        row[col] = v;
                    }
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

int rank_mod_p(FpMatrix& m, std::uint64_t p) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t row = 0;
    int rank = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);
        const std::uint64_t inv = invmod(m[row][col], p);
        for (std::size_t r = row + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            const std::uint64_t f = mulmod(m[r][col], inv, p);
            m[r][col] = 0;
            for (std::size_t c = col + 1; c < cols; ++c) {
                if (m[row][c] == 0) continue;
                std::uint64_t sub = mulmod(f, m[row][c], p);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace {

int run_trial(const InterpolationProblem& problem, int trial) {
    SplitMix rng{trial_seed(problem.seed, trial)};
    std::vector<FatPoint> points;
    points.reserve(problem.mults.size());
    for (Int m : problem.mults) {
        for (;;) {
            FatPoint pt{rng.next_mod(problem.prime), rng.next_mod(problem.prime), m};
            const bool clash = std::any_of(points.begin(), points.end(),
                                           [&](const FatPoint& q) { return q.x == pt.x && q.y == pt.y; });
            if (!clash) { points.push_back(pt); break; }
        }
    }
    FpMatrix mat = conditions_matrix(problem.degree, points, problem.prime);
    return rank_mod_p(mat, problem.prime);
}

}  // namespace

RankResult actual_dim(const InterpolationProblem& problem, int jobs) {
    problem.validate();
    RankResult out;
    out.per_trial.assign(static_cast<std::size_t>(problem.trials), 0);
    if (jobs > 1 && problem.trials > 1) {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        const int n = problem.trials;
        for (int w = 0; w < std::min(jobs, n); ++w) {
            workers.emplace_back([&] {
                for (int t = next.fetch_add(1); t < n; t = next.fetch_add(1))
                    out.per_trial[static_cast<std::size_t>(t)] = run_trial(problem, t);
            });
        }
        for (auto& th : workers) th.join();
    } else {
        for (int t = 0; t < problem.trials; ++t)
            out.per_trial[static_cast<std::size_t>(t)] = run_trial(problem, t);
    }
    out.rank = *std::max_element(out.per_trial.begin(), out.per_trial.end());
    out.adim = problem.monomial_count() - 1 - out.rank;
    return out;
}

InterpolationProblem interpolation_problem(const SystemSpec& spec, const OracleConfig& config) {
    if (spec.surface.kind != SurfaceKind::RationalAnticanonical)
        throw std::invalid_argument("the rank oracle covers the rational profile only");
    const DivisorClass full = spec.full_class();
    if (full.degree < 0) throw std::invalid_argument("oracle: negative degree");

    InterpolationProblem problem;
    problem.degree = full.degree;
    for (Int m : full.mults) {
        if (m < 0) throw std::invalid_argument("oracle: negative multiplicity");
        if (m > 0) problem.mults.push_back(m);
    }
    problem.prime = config.prime;
    problem.trials = config.trials;
    problem.seed = config.seed;
    return problem;
}

DimensionPair dimension_pair(const SystemSpec& spec, const OracleConfig& config) {
    const InterpolationProblem problem = interpolation_problem(spec, config);
    DimensionPair out;
    out.vdim = virtual_dim(spec.full_class(), 1);
    out.adim = actual_dim(problem, config.jobs).adim;
    out.special = out.adim > std::max<Int>(out.vdim, -1);
    return out;
}

}  // namespace specialsys
