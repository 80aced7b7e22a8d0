#pragma once

#include <cstddef>
#include <string>

#include "specialsys/divisor.hpp"

namespace specialsys {

struct ParseError : std::runtime_error {
    std::size_t position;  // byte offset into the input text
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// Parses system notation `<d>; <m>[^<count>][, ...]`, e.g. "4; 2^5"
/// or "10; 4, 3^2, 2^6". Whitespace is insignificant. Degree and
/// multiplicities must be nonnegative: negative entries only arise
/// internally, never as input.
DivisorClass parse_class(const std::string& text);

/// Canonical notation: multiplicities sorted descending, trailing
/// zeros dropped, equal runs folded into m^k. parse_class of the
/// result round-trips.
std::string render_canonical(const DivisorClass& cls);

/// Slot-faithful notation: preserves multiplicity order (only folding
/// consecutive equal runs), so witness classes keep their original
/// point labels. Handles negative entries.
std::string render_slots(const DivisorClass& cls);

/// render_slots wrapped in parentheses: "(2; 1^5)".
std::string render_parens(const DivisorClass& cls);

/// Splits a parsed class plus `extra_doubles` additional double points
/// into a rational-profile SystemSpec: all entries different from 2
/// become free slots (padded with 2s up to 9), the remaining 2s count
/// as double points. Throws ScopeError via speciality_plane's
/// contract when more than 9 entries differ from 2.
SystemSpec split_plane_system(const DivisorClass& cls, Int extra_doubles);

}  // namespace specialsys
