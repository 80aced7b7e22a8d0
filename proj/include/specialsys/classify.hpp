#pragma once

#include <optional>
#include <vector>

#include "specialsys/cremona.hpp"
#include "specialsys/divisor.hpp"
#include "specialsys/oracle.hpp"

namespace specialsys {

/// Thrown when a system falls outside the symbolic classifier's scope
/// (more than 9 free multiplicity slots); the finite-field oracle still
/// answers dimension queries for such systems.
struct ScopeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Mobile part of a peeled decomposition, in input slot labels. When
/// the class has self-intersection 0 it is composed with a pencil and
/// is reported as pencil_multiple copies of the primitive `pencil`
/// class; otherwise pencil is absent and pencil_multiple is 1.
struct FreePart {
    DivisorClass cls;
    Int pencil_multiple = 1;
    std::optional<DivisorClass> pencil;
};

struct Decomposition {
    std::vector<PeelRecord> fixed;  // (class, copies), input slot labels
    std::optional<FreePart> free;   // absent when only fixed parts remain
};

/// Speciality verdict. adim_predicted is the symbolic prediction of
/// the actual projective dimension; special = adim_predicted > edim.
/// On the rational profile a special verdict always carries a witness
/// (-1)-class W with L.W <= -2, in the input slot labels, and a
/// decomposition is reported whenever the system is nonempty.
struct Verdict {
    Int vdim = 0;
    Int edim = -1;
    Int adim_predicted = -1;
    bool special = false;
    std::optional<DivisorClass> witness;
    std::optional<Decomposition> decomposition;
};

/// Speciality of |d h - sum m_i e_i - sum 2 E_j| on the blow-up of the
/// plane at general points (at most 9 free slots, any number of double
/// points). Reduces the full class with the peeling rule: a terminal
/// standard residual M gives adim = max(vdim(M), -1); an empty
/// residual gives adim = -1; every peel of c >= 2 copies contributes
/// its witness, and the first such witness is reported on special
/// verdicts.
Verdict speciality_plane(const SystemSpec& spec);

/// Classification for K3 / Abelian / Enriques profiles, on the
/// abstract data (multiple c of the polarization H, H^2, doubles):
/// Abelian and Enriques systems through general double points are
/// never special; a K3 system is special exactly for c = 2, H^2 = 2
/// and 2 double points, where the predicted dimension exceeds the
/// expected one by 1. No finite-field oracle exists for these
/// surfaces, so the prediction is rule-based; the CLI marks it
/// "predicted, unverified". H^2 must be a positive even integer (the
/// Picard lattices here are even) and c >= 1.
Verdict classify_kodaira_zero(const SystemSpec& spec);

struct PencilInvariants {
    Int d_square = 0;  // D^2   = chi - 1
    Int d_dot_k = 0;   // D.K   = 3 chi - 5
};

/// Numerical characters of the pencil class D attached to a special
/// system through double points; chi must be 0, 1 or 2. chi = 0 gives
/// D^2 = -1, the contradiction behind the Abelian rule.
PencilInvariants pencil_invariants(Int chi);

/// True iff n divides 2(1 - chi); every n passes for chi = 1.
bool pencil_multiplicity_allowed(Int chi, Int n);

/// Very-ampleness of H on the blow-up at <= 9 general points: true iff
/// H is in standard form after sorting (multiplicities descending,
/// nonnegative, d >= m1+m2+m3) and d >= m1 + m2 + 1 and
/// 3d - sum m_i >= 3.
bool very_ample_check(const DivisorClass& H);

enum class DimensionMode { Symbolic, Oracle };

/// Terracini bookkeeping for the k-secant variety of the surface
/// embedded by |H|: N = vdim(H), actual = N - 1 - adim(H with k+1
/// double points), expected = min(N, 3k+2).
struct SecantReport {
    DivisorClass H;
    Int k = 0;
    Int N = 0;
    Int expected = 0;
    Int actual = 0;
    bool defective = false;
};

SecantReport secant_report(const DivisorClass& H, Int k, DimensionMode mode = DimensionMode::Symbolic,
                           const OracleConfig& config = {});

/// All defective (H, k) with H very ample of degree <= d_max on <= 9
/// slots and k <= k_max, ordered by (degree, multiplicity vector, k).
std::vector<SecantReport> scan_defective(Int d_max, Int k_max, DimensionMode mode = DimensionMode::Symbolic,
                                         const OracleConfig& config = {}, int jobs = 1);

}  // namespace specialsys
