#ifndef PI1_ATOM_HPP
#define PI1_ATOM_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>

namespace pi1 {

// The indeterminates of every polynomial ring in the library.
//
//   UJet(k)      k-th x-derivative of u (k = 0 is u itself)
//   STime(l)     KdV time s_{2l+1}; STime(0) is s_1 = x
//   ITime(k)     irregular time t_k, k odd (t_1, t_3, ...)
//   OperQ(i)     apparent-singularity position q_i (1-based)
//   OperP(i)     conjugate momentum p_i
//   SymQ(i)      elementary-symmetric coordinate Q_i
//   SymP(i)      conjugate momentum P_i
//   Moduli(r,i)  coefficient of the genus-g matrix moduli space:
//                r = 'a' (diagonal), 'b' (upper), 'c' (lower), index i
//   Spectral(i)  formal spectral parameter for two-point identities on
//                the moduli space: 0 is the lambda slot, 1 the mu slot
//
// Variables split into three mutually incompatible coefficient rings:
// the jet ring {UJet, STime}, the deformation ring {ITime, OperQ,
// OperP, SymQ, SymP}, and the moduli ring {Moduli, Spectral}.
// Polynomials never mix rings; MultiPoly enforces this at every
// arithmetic step.
enum class Tag : std::uint8_t {
    UJet = 0,
    STime = 1,
    ITime = 2,
    OperQ = 3,
    OperP = 4,
    SymQ = 5,
    SymP = 6,
    Moduli = 7,
    Spectral = 8,
};

enum RingMask : unsigned {
    RING_NONE = 0u,
    RING_JET = 1u,
    RING_DEFORM = 2u,
    RING_MODULI = 4u,
};

struct Atom {
    Tag tag;
    std::int32_t idx;      // main index (derivative order, time index, coordinate index)
    std::int32_t sub = 0;  // Moduli only: 0 = a, 1 = b, 2 = c

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.tag == b.tag && a.idx == b.idx && a.sub == b.sub;
    }
    friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
    friend bool operator<(const Atom& a, const Atom& b) {
        return std::tuple(static_cast<int>(a.tag), a.sub, a.idx) <
               std::tuple(static_cast<int>(b.tag), b.sub, b.idx);
    }
};

inline unsigned ring_of(const Atom& a) {
    switch (a.tag) {
        case Tag::UJet:
        case Tag::STime: return RING_JET;
        case Tag::ITime:
        case Tag::OperQ:
        case Tag::OperP:
        case Tag::SymQ:
        case Tag::SymP: return RING_DEFORM;
        case Tag::Moduli:
        case Tag::Spectral: return RING_MODULI;
    }
    return RING_NONE;
}

// Rings are compatible when at most one non-constant ring is present.
inline bool rings_compatible(unsigned m) {
    return m == RING_NONE || m == RING_JET || m == RING_DEFORM || m == RING_MODULI;
}

inline Atom u_jet(int k) {
    if (k < 0) throw std::invalid_argument("u_jet: negative derivative order");
    return Atom{Tag::UJet, k, 0};
}
inline Atom s_time(int l) {
    if (l < 0) throw std::invalid_argument("s_time: negative index");
    return Atom{Tag::STime, l, 0};
}
inline Atom i_time(int k) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("i_time: index must be odd >= 1");
    return Atom{Tag::ITime, k, 0};
}
inline Atom oper_q(int i) { return Atom{Tag::OperQ, i, 0}; }
inline Atom oper_p(int i) { return Atom{Tag::OperP, i, 0}; }
inline Atom sym_q(int i) { return Atom{Tag::SymQ, i, 0}; }
inline Atom sym_p(int i) { return Atom{Tag::SymP, i, 0}; }
inline Atom moduli(char role, int i) {
    int sub = role == 'a' ? 0 : role == 'b' ? 1 : role == 'c' ? 2 : -1;
    if (sub < 0) throw std::invalid_argument("moduli: role must be 'a', 'b' or 'c'");
    return Atom{Tag::Moduli, i, sub};
}
inline Atom spectral(int i) {
    if (i != 0 && i != 1) throw std::invalid_argument("spectral: slot must be 0 or 1");
    return Atom{Tag::Spectral, i, 0};
}

inline std::string atom_name(const Atom& a) {
    switch (a.tag) {
        case Tag::UJet:
            if (a.idx == 0) return "u";
            if (a.idx <= 3) return "u_" + std::string(static_cast<std::size_t>(a.idx), 'x');
            return "u^(" + std::to_string(a.idx) + ")";
        case Tag::STime:
            if (a.idx == 0) return "x";
            return "s" + std::to_string(2 * a.idx + 1);
        case Tag::ITime: return "t" + std::to_string(a.idx);
        case Tag::OperQ: return "q" + std::to_string(a.idx);
        case Tag::OperP: return "p" + std::to_string(a.idx);
        case Tag::SymQ: return "Q" + std::to_string(a.idx);
        case Tag::SymP: return "P" + std::to_string(a.idx);
        case Tag::Moduli: {
            const char role = a.sub == 0 ? 'a' : a.sub == 1 ? 'b' : 'c';
            return std::string(1, role) + std::to_string(a.idx);
        }
        case Tag::Spectral: return a.idx == 0 ? "lam" : "mu";
    }
    return "?";
}

}  // namespace pi1

#endif
