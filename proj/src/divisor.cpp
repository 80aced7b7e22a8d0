#include "specialsys/divisor.hpp"

#include <algorithm>

namespace specialsys {

Int checked_add(Int a, Int b) {
    Int r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

Int checked_sub(Int a, Int b) {
    Int r = 0;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

DivisorClass DivisorClass::normalized() const {
    DivisorClass out = *this;
    while (!out.mults.empty() && out.mults.back() == 0) out.mults.pop_back();
    return out;
}

DivisorClass DivisorClass::extended(std::size_t r) const {
    DivisorClass out = *this;
    if (out.mults.size() < r) out.mults.resize(r, 0);
    return out;
}

bool DivisorClass::is_zero() const {
    if (degree != 0) return false;
    return std::all_of(mults.begin(), mults.end(), [](Int m) { return m == 0; });
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass out = a.extended(b.slots());
    out.degree = checked_add(out.degree, b.degree);
    for (std::size_t i = 0; i < b.slots(); ++i) out.mults[i] = checked_add(out.mults[i], b.mults[i]);
    return out;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    DivisorClass out = a.extended(b.slots());
    out.degree = checked_sub(out.degree, b.degree);
    for (std::size_t i = 0; i < b.slots(); ++i) out.mults[i] = checked_sub(out.mults[i], b.mults[i]);
    return out;
}

DivisorClass operator*(Int n, const DivisorClass& a) {
    DivisorClass out = a;
    out.degree = checked_mul(n, out.degree);
    for (auto& m : out.mults) m = checked_mul(n, m);
    return out;
}

DivisorClass exceptional_class(std::size_t i) {
    DivisorClass out;
    out.mults.assign(i + 1, 0);
    out.mults[i] = -1;
    return out;
}

DivisorClass canonical_class(std::size_t r) {
    return DivisorClass(-3, std::vector<Int>(r, -1));
}

Int intersect(const DivisorClass& a, const DivisorClass& b) {
    Int acc = checked_mul(a.degree, b.degree);
    const std::size_t n = std::min(a.slots(), b.slots());
    for (std::size_t i = 0; i < n; ++i) acc = checked_sub(acc, checked_mul(a.mults[i], b.mults[i]));
    return acc;
}

Int self_intersection(const DivisorClass& a) { return intersect(a, a); }

Int canonical_degree(const DivisorClass& a) { return intersect(a, canonical_class(a.slots())); }

Int virtual_dim(const DivisorClass& a, Int chi) {
    // (L^2 - L.K) is always even: d^2 + 3d and m^2 - m are.
    Int num = checked_sub(self_intersection(a), canonical_degree(a));
    return checked_add(num / 2, chi - 1);
}

Int expected_dim(const DivisorClass& a, Int chi) { return std::max<Int>(virtual_dim(a, chi), -1); }

Int arithmetic_genus(const DivisorClass& a) {
    Int num = checked_add(self_intersection(a), canonical_degree(a));
    return num / 2 + 1;
}

Int SurfaceProfile::chi() const {
    switch (kind) {
        case SurfaceKind::RationalAnticanonical: return 1;
        case SurfaceKind::K3: return 2;
        case SurfaceKind::Abelian: return 0;
        case SurfaceKind::Enriques: return 1;
    }
    throw std::logic_error("unknown surface kind");
}

std::string SurfaceProfile::name() const {
    switch (kind) {
        case SurfaceKind::RationalAnticanonical: return "p2";
        case SurfaceKind::K3: return "k3";
        case SurfaceKind::Abelian: return "abelian";
        case SurfaceKind::Enriques: return "enriques";
    }
    throw std::logic_error("unknown surface kind");
}

DivisorClass SystemSpec::full_class() const {
    if (surface.kind != SurfaceKind::RationalAnticanonical)
        throw std::logic_error("full_class is defined on the rational profile only");
    if (doubles < 0) throw std::invalid_argument("negative double-point count");
    DivisorClass out = base;
    out.mults.reserve(out.mults.size() + static_cast<std::size_t>(doubles));
    for (Int i = 0; i < doubles; ++i) out.mults.push_back(2);
    return out;
}

}  // namespace specialsys
