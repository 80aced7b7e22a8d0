#include "specialsys/classify.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

namespace specialsys {

namespace {

void validate_plane_spec(const SystemSpec& spec) {
    if (spec.surface.kind != SurfaceKind::RationalAnticanonical)
        throw std::invalid_argument("speciality_plane: rational profile required");
    if (spec.base.slots() > 9)
        throw ScopeError(
            "speciality_plane: more than 9 free multiplicity slots is outside the "
            "symbolic classification; use the finite-field oracle (adim) instead");
    if (spec.base.degree < 0) throw std::invalid_argument("speciality_plane: negative degree");
    for (Int m : spec.base.mults)
        if (m < 0) throw std::invalid_argument("speciality_plane: negative multiplicity");
    if (spec.doubles < 0) throw std::invalid_argument("speciality_plane: negative double-point count");
}

Int content(const DivisorClass& cls) {
    Int g = std::abs(cls.degree);
    for (Int m : cls.mults) g = std::gcd(g, std::abs(m));
    return g == 0 ? 1 : g;
}

DivisorClass divide(const DivisorClass& cls, Int n) {
    DivisorClass out = cls;
    out.degree /= n;
    for (auto& m : out.mults) m /= n;
    return out;
}

// Merge peel records with equal witnesses, preserving first-seen order.
std::vector<PeelRecord> merged_peels(const std::vector<PeelRecord>& peels) {
    std::vector<PeelRecord> out;
    for (const auto& p : peels) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const PeelRecord& q) { return q.witness == p.witness; });
        if (it != out.end())
            it->count += p.count;
        else
            out.push_back(p);
    }
    return out;
}

}  // namespace

Verdict speciality_plane(const SystemSpec& spec) {
    validate_plane_spec(spec);
    const DivisorClass full = spec.full_class();

    Verdict v;
    v.vdim = virtual_dim(full, 1);
    v.edim = std::max<Int>(v.vdim, -1);

    PeeledReduction red = reduce_with_peeling(full);
    if (red.terminal == Terminal::NegativeDegree)
        v.adim_predicted = -1;  // nothing mobile remains
    else
        v.adim_predicted = std::max<Int>(virtual_dim(red.residual, 1), -1);
    v.special = v.adim_predicted > v.edim;

    if (v.special) {
        for (const auto& peel : red.peels) {
            if (peel.count >= 2) {
                v.witness = peel.witness;
                break;
            }
        }
    }

    if (v.adim_predicted >= 0) {
        Decomposition dec;
        dec.fixed = merged_peels(red.peels);
        DivisorClass residual = red.trace.pull_back(red.residual).normalized();
        if (!residual.is_zero()) {
            FreePart free;
            free.cls = residual;
            if (self_intersection(residual) == 0) {
                free.pencil_multiple = content(residual);
                free.pencil = divide(residual, free.pencil_multiple);
            }
            dec.free = std::move(free);
        }
        v.decomposition = std::move(dec);
    }
    return v;
}

Verdict classify_kodaira_zero(const SystemSpec& spec) {
    const SurfaceKind kind = spec.surface.kind;
    if (kind != SurfaceKind::K3 && kind != SurfaceKind::Abelian && kind != SurfaceKind::Enriques)
        throw std::invalid_argument("classify_kodaira_zero: K3, Abelian or Enriques profile required");
    const Int c = spec.base.degree;
    const Int hsq = spec.h_square;
    const Int s = spec.doubles;
    if (!spec.base.mults.empty())
        throw std::invalid_argument("classify_kodaira_zero: the class is abstract, multiplicities are not allowed");
    if (c < 1) throw std::invalid_argument("classify_kodaira_zero: the multiple of H must be >= 1");
    if (hsq < 2 || hsq % 2 != 0)
        throw std::invalid_argument("classify_kodaira_zero: H^2 must be a positive even integer");
    if (s < 0) throw std::invalid_argument("classify_kodaira_zero: negative double-point count");

    const Int chi = spec.surface.chi();
    // L = cH - sum 2E_i: L^2 = c^2 H^2 - 4s, L.K = 2s (K restricted to
    // the exceptional part; K_S is numerically trivial here).
    const Int lsq = checked_sub(checked_mul(checked_mul(c, c), hsq), 4 * s);
    const Int lk = 2 * s;

    Verdict v;
    v.vdim = checked_add(checked_sub(lsq, lk) / 2, chi - 1);
    v.edim = std::max<Int>(v.vdim, -1);
    v.special = (kind == SurfaceKind::K3 && c == 2 && hsq == 2 && s == 2);
    v.adim_predicted = v.edim + (v.special ? 1 : 0);
    return v;
}

PencilInvariants pencil_invariants(Int chi) {
    if (chi < 0 || chi > 2) throw std::invalid_argument("pencil_invariants: chi must be 0, 1 or 2");
    return {chi - 1, 3 * chi - 5};
}

bool pencil_multiplicity_allowed(Int chi, Int n) {
    if (n <= 0) throw std::invalid_argument("pencil_multiplicity_allowed: n must be positive");
    return (2 * (1 - chi)) % n == 0;
}

bool very_ample_check(const DivisorClass& H) {
    if (H.slots() > 9) throw std::invalid_argument("very_ample_check: at most 9 slots supported");
    DivisorClass s = H;
    std::sort(s.mults.begin(), s.mults.end(), std::greater<Int>());
    if (!s.mults.empty() && s.mults.back() < 0) return false;
    const Int m1 = s.mult(0), m2 = s.mult(1), m3 = s.mult(2);
    if (s.degree < m1 + m2 + m3) return false;  // not in standard form
    if (s.degree < m1 + m2 + 1) return false;
    Int total = std::accumulate(s.mults.begin(), s.mults.end(), Int{0});
    return 3 * s.degree - total >= 3;
}

SecantReport secant_report(const DivisorClass& H, Int k, DimensionMode mode, const OracleConfig& config) {
    if (k < 0) throw std::invalid_argument("secant_report: k must be >= 0");
    if (!very_ample_check(H))
        throw std::domain_error("secant_report: H is not very ample (requires standard form, "
                                "d >= m1 + m2 + 1 and 3d - sum m_i >= 3)");

    SystemSpec spec;
    spec.surface.kind = SurfaceKind::RationalAnticanonical;
    spec.base = H;
    spec.doubles = k + 1;

    SecantReport rep;
    rep.H = H;
    rep.k = k;
    rep.N = virtual_dim(H, 1);
    const Int adim = mode == DimensionMode::Symbolic ? speciality_plane(spec).adim_predicted
                                                     : dimension_pair(spec, config).adim;
    rep.actual = rep.N - 1 - adim;
    rep.expected = std::min<Int>(rep.N, 3 * k + 2);
    rep.defective = rep.actual < rep.expected;
    return rep;
}

namespace {

void enumerate_very_ample(Int d, std::vector<Int>& mults, Int max_part, std::vector<DivisorClass>& out) {
    DivisorClass H(d, mults);
    if (very_ample_check(H)) out.push_back(std::move(H));
    if (mults.size() >= 9) return;
    for (Int m = 1; m <= max_part; ++m) {
        // prune: very ample needs m1 + m2 + 1 <= d and sum <= 3d - 3
        if (mults.size() == 1 && mults[0] + m + 1 > d) break;
        Int total = std::accumulate(mults.begin(), mults.end(), Int{0}) + m;
        if (total > 3 * d - 3) break;
        mults.push_back(m);
        enumerate_very_ample(d, mults, m, out);
        mults.pop_back();
    }
}

}  // namespace

std::vector<SecantReport> scan_defective(Int d_max, Int k_max, DimensionMode mode, const OracleConfig& config,
                                         int jobs) {
    if (d_max < 0 || k_max < 0) throw std::invalid_argument("scan_defective: bounds must be >= 0");

    std::vector<DivisorClass> candidates;
    for (Int d = 1; d <= d_max; ++d) {
        std::vector<Int> mults;
        enumerate_very_ample(d, mults, d, candidates);
    }

    std::vector<std::vector<SecantReport>> per_candidate(candidates.size());
    auto work = [&](std::size_t i) {
        for (Int k = 0; k <= k_max; ++k) {
            SecantReport rep = secant_report(candidates[i], k, mode, config);
            if (rep.defective) per_candidate[i].push_back(std::move(rep));
        }
    };
    if (jobs > 1 && candidates.size() > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < candidates.size(); i = next.fetch_add(1)) work(i);
            });
        for (auto& th : workers) th.join();
    } else {
        for (std::size_t i = 0; i < candidates.size(); ++i) work(i);
    }

    std::vector<SecantReport> out;
    for (auto& rows : per_candidate)
        for (auto& rep : rows) out.push_back(std::move(rep));
    return out;
}

}  // namespace specialsys
