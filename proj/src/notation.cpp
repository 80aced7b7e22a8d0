#include "specialsys/notation.hpp"

#include <algorithm>
#include <cctype>

#include "specialsys/classify.hpp"

namespace specialsys {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    Int integer(const char* what) {
        skip_ws();
        const std::size_t start = pos;
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = text[pos] == '-';
            ++pos;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(std::string("expected ") + what, start);
        Int value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            value = checked_add(checked_mul(value, 10), text[pos] - '0');
            ++pos;
        }
        if (negative) throw ParseError(std::string(what) + " must be nonnegative", start);
        return value;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
};

void append_atom(std::string& out, Int value, Int run) {
    out += std::to_string(value);
    if (run > 1) {
        out += '^';
        out += std::to_string(run);
    }
}

std::string render_mults(const DivisorClass& cls) {
    std::string out = std::to_string(cls.degree) + ";";
    Int run = 0;
    Int current = 0;
    bool first = true;
    auto flush = [&] {
        if (run == 0) return;
        out += first ? " " : ", ";
        first = false;
        append_atom(out, current, run);
        run = 0;
    };
    for (Int m : cls.mults) {
        if (run > 0 && m == current) {
            ++run;
            continue;
        }
        flush();
        current = m;
        run = 1;
    }
    flush();
    return out;
}

}  // namespace

DivisorClass parse_class(const std::string& text) {
    Cursor cur{text};
    DivisorClass cls;
    cls.degree = cur.integer("degree");
    cur.expect(';');
    if (!cur.done()) {
        for (;;) {
            Int m = cur.integer("multiplicity");
            Int count = 1;
            cur.skip_ws();
            if (cur.peek() == '^') {
                ++cur.pos;
                const std::size_t at = cur.pos;
                count = cur.integer("exponent");
                if (count < 1) throw ParseError("exponent must be >= 1", at);
            }
            for (Int i = 0; i < count; ++i) cls.mults.push_back(m);
            if (cur.done()) break;
            cur.expect(',');
            if (cur.done()) throw ParseError("trailing comma", cur.pos);
        }
    }
    return cls;
}

std::string render_canonical(const DivisorClass& cls) {
    DivisorClass c = cls;
    std::sort(c.mults.begin(), c.mults.end(), std::greater<Int>());
    c = c.normalized();
    return render_mults(c);
}

std::string render_slots(const DivisorClass& cls) { return render_mults(cls); }

std::string render_parens(const DivisorClass& cls) { return "(" + render_mults(cls) + ")"; }

SystemSpec split_plane_system(const DivisorClass& cls, Int extra_doubles) {
    if (extra_doubles < 0) throw std::invalid_argument("negative double-point count");
    std::vector<Int> entries = cls.mults;
    std::sort(entries.begin(), entries.end(), std::greater<Int>());

    std::vector<Int> big, small;
    Int twos = extra_doubles;
    for (Int m : entries) {
        if (m == 2)
            ++twos;
        else if (m > 2)
            big.push_back(m);
        else if (m > 0)
            small.push_back(m);
        // zero entries impose nothing and are dropped
    }
    if (big.size() + small.size() > 9)
        throw ScopeError("more than 9 multiplicities different from 2 is outside the symbolic "
                         "classification; use the finite-field oracle (adim) instead");

    SystemSpec spec;
    spec.surface.kind = SurfaceKind::RationalAnticanonical;
    spec.base.degree = cls.degree;
    spec.base.mults = big;
    while (twos > 0 && spec.base.mults.size() + small.size() < 9) {
        spec.base.mults.push_back(2);
        --twos;
    }
    spec.base.mults.insert(spec.base.mults.end(), small.begin(), small.end());
    spec.doubles = twos;
    return spec;
}

}  // namespace specialsys
