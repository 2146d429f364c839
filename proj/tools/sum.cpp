#include "sum.hpp"

#include "qcrystal/bosonic.hpp"
#include "qcrystal/errors.hpp"
#include "qcrystal/fermionic.hpp"

namespace qcrystal::cli {

std::string to_string(SumMethod m) {
    switch (m) {
    case SumMethod::direct:
        return "direct";
    case SumMethod::bosonic:
        return "bosonic";
    case SumMethod::fermionic:
        return "fermionic";
    case SumMethod::rc:
        return "rc";
    }
    return "?";
}

SumMethod parse_sum_method(const std::string& s) {
    for (SumMethod m : {SumMethod::direct, SumMethod::bosonic, SumMethod::fermionic, SumMethod::rc})
        if (to_string(m) == s)
            return m;
    throw ParseError("unknown method '" + s + "'");
}

Restriction parse_restriction(const std::string& s, int level) {
    if (s == "none")
        return Restriction::none();
    if (s == "classical")
        return Restriction::classical();
    if (s == "level") {
        if (level < 1)
            throw ParseError("--restrict level needs --level >= 1");
        return Restriction::at_level(level);
    }
    throw ParseError("unknown restriction '" + s + "'");
}

Statistic parse_statistic(const std::string& s) {
    if (s == "energy")
        return Statistic::energy;
    if (s == "coenergy")
        return Statistic::coenergy;
    throw ParseError("unknown statistic '" + s + "'");
}

namespace {

// The bosonic and fermionic sides are graded by coenergy.
QLaurent coenergy_sum(const Tensor& B, const Weight& Lambda, Restriction restriction, SumMethod method,
                      std::size_t cap) {
    const bool typeA = B.shape().kind == CartanKind::A;
    const int n = B.cartan().rank();
    switch (method) {
    case SumMethod::direct:
        return direct_sum(B, Lambda, restriction, Statistic::coenergy, cap);
    case SumMethod::bosonic:
        switch (restriction.kind) {
        case RestrictionKind::none:
            return Supernomial(B, cap)(Lambda);
        case RestrictionKind::classical:
            return bosonic_classical(B, Lambda, cap);
        case RestrictionKind::level:
            return bosonic_level(B, Lambda, restriction.level, cap);
        }
        break;
    case SumMethod::fermionic:
    case SumMethod::rc: {
        if (restriction.kind == RestrictionKind::none)
            throw UnsupportedError("the fermionic side needs a classical or level restriction");
        const auto [L, lam] = fermionic_input(B.shape(), Lambda);
        const bool closed = method == SumMethod::fermionic;
        if (restriction.kind == RestrictionKind::classical)
            return closed ? closed_form_F(B.cartan(), L, lam)
                          : rc_generating_function(B.shape().kind, n, L, lam, cap);
        const LevelMode mode = closed ? LevelMode::closed_form : LevelMode::rc_sum;
        return typeA ? level_restricted_A(L, n, lam, restriction.level, mode, cap)
                     : level_restricted_C(L, n, lam, restriction.level, mode, HalvedIndex::doubled, cap);
    }
    }
    throw UnsupportedError("unknown method");
}

} // namespace

QLaurent compute_sum(const Tensor& B, const Weight& Lambda, Restriction restriction, Statistic stat,
                     SumMethod method, std::size_t cap) {
    if (method == SumMethod::direct)
        return direct_sum(B, Lambda, restriction, stat, cap);
    QLaurent co = coenergy_sum(B, Lambda, restriction, method, cap);
    return stat == Statistic::coenergy ? co : invert_q(co);
}

} // namespace qcrystal::cli
