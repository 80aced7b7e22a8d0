#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace specialsys {

using Int = std::int64_t;

/// Thrown when 64-bit integer arithmetic would wrap.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// A divisor class d*h - sum_i m_i * e_i on a blow-up of the plane at
/// general points: `degree` is the coefficient of the line class h,
/// `mults[i]` the coefficient of the exceptional class e_i.
///
/// Entries may be negative: Cremona images and internal residuals
/// legitimately carry negative degree or multiplicities, so no
/// effectivity is enforced here. Trailing zero multiplicities are kept
/// unless `normalized()` is called explicitly, because slot identity
/// matters to Cremona traces.
struct DivisorClass {
    Int degree = 0;
    std::vector<Int> mults;

    DivisorClass() = default;
    DivisorClass(Int d, std::vector<Int> m) : degree(d), mults(std::move(m)) {}

    std::size_t slots() const { return mults.size(); }

    /// Multiplicity at slot i; slots beyond the stored range are 0.
    Int mult(std::size_t i) const { return i < mults.size() ? mults[i] : 0; }

    /// Copy with trailing zero multiplicities removed.
    DivisorClass normalized() const;

    /// Copy zero-extended to at least r slots.
    DivisorClass extended(std::size_t r) const;

    bool is_zero() const;

    bool operator==(const DivisorClass&) const = default;
};

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator*(Int n, const DivisorClass& a);

/// The class e_i (degree 0, multiplicity -1 at slot i).
DivisorClass exceptional_class(std::size_t i);

/// K = -3h + sum e_i on the blow-up at r points.
DivisorClass canonical_class(std::size_t r);

/// Intersection pairing d_A d_B - sum m_{A,i} m_{B,i}; the shorter
/// multiplicity vector is zero-extended. Overflow raises OverflowError.
Int intersect(const DivisorClass& a, const DivisorClass& b);

Int self_intersection(const DivisorClass& a);

/// L.K with K taken on the slots of L.
Int canonical_degree(const DivisorClass& a);

/// Riemann-Roch virtual dimension (L^2 - L.K)/2 + chi - 1 (projective).
/// For chi = 1 this is the plane count d(d+3)/2 - sum m_i(m_i+1)/2.
Int virtual_dim(const DivisorClass& a, Int chi = 1);

/// max(virtual_dim, -1).
Int expected_dim(const DivisorClass& a, Int chi = 1);

/// Arithmetic genus (L^2 + L.K)/2 + 1.
Int arithmetic_genus(const DivisorClass& a);

enum class SurfaceKind { RationalAnticanonical, K3, Abelian, Enriques };

/// Which surface the linear system lives on. chi is fixed by the kind.
struct SurfaceProfile {
    SurfaceKind kind = SurfaceKind::RationalAnticanonical;

    Int chi() const;
    std::string name() const;
};

/// A linear system specification: a surface, a base class, and a count
/// of additional general double points.
///
/// On the rational profile `base` holds the free multiplicities (at
/// most 9 slots for the symbolic classifier) and the full class is
/// `base` extended by `doubles` entries equal to 2.
///
/// On K3/Abelian/Enriques profiles the class is carried abstractly:
/// base.degree is the multiple c of the polarization H, base.mults is
/// empty, and `h_square` stores H^2.
struct SystemSpec {
    SurfaceProfile surface;
    DivisorClass base;
    Int doubles = 0;
    Int h_square = 0;

    /// Rational profile only: base with `doubles` extra entries of 2.
    DivisorClass full_class() const;
};

}  // namespace specialsys
