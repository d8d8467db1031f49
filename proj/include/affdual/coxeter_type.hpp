#pragma once

#include <stdexcept>
#include <string>

namespace affdual {

enum class Family { A, B, C, D, E, F, G };

struct CoxeterType {
    Family family = Family::A;
    int rank = 2;
    bool affine = true;

    std::string str() const {
        static const char letters[] = "ABCDEFG";
        std::string s(1, letters[static_cast<int>(family)]);
        if (affine) s += '~';
        return s + std::to_string(rank);
    }

    friend bool operator==(const CoxeterType&, const CoxeterType&) = default;
};

class UnsupportedType : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void validate(const CoxeterType& t) {
    const int n = t.rank;
    bool ok = n >= 1;
    if (!t.affine) {
        ok = t.family == Family::A && n >= 1;
    } else {
        switch (t.family) {
        case Family::A: ok = n >= 2; break;
        case Family::B: ok = n >= 3; break;
        case Family::C: ok = n >= 2; break;
        case Family::D: ok = n >= 4; break;
        case Family::E: ok = n >= 6 && n <= 8; break;
        case Family::F: ok = n == 4; break;
        case Family::G: ok = n == 2; break;
        }
    }
    if (!ok) throw UnsupportedType("unsupported Coxeter type " + t.str());
}

// "A~2", "B~3", "C~3", "D~4", "G~2", "F~4", "E~6", or "A3" for finite type A.
inline CoxeterType parse_type(const std::string& text) {
    if (text.empty()) throw UnsupportedType("empty type string");
    CoxeterType t;
    const std::string letters = "ABCDEFG";
    auto pos = letters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(text[0]))));
    if (pos == std::string::npos) throw UnsupportedType("unknown family in '" + text + "'");
    t.family = static_cast<Family>(pos);
    std::size_t i = 1;
    t.affine = i < text.size() && text[i] == '~';
    if (t.affine) ++i;
    if (i >= text.size()) throw UnsupportedType("missing rank in '" + text + "'");
    int n = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw UnsupportedType("bad rank in '" + text + "'");
        n = n * 10 + (text[i] - '0');
        if (n > 64) throw UnsupportedType("rank too large in '" + text + "'");
    }
    t.rank = n;
    validate(t);
    return t;
}

}  // namespace affdual
