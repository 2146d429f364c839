#include "qcrystal/hardhex.hpp"

#include "qcrystal/errors.hpp"
#include "qcrystal/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <functional>

namespace qcrystal {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// Paths of D_L or D'_L with exactly n particles, in lexicographic order of
// sigma.
std::vector<HHPath> paths_with_particles(int L, bool primed, int n) {
    std::vector<HHPath> out;
    HHPath p;
    p.sigma.assign(static_cast<std::size_t>(L) + 1, 0);
    p.sigma[0] = primed ? 1 : 0;
    // Next free position after a particle at i is i + 2.
    std::function<void(int, int)> rec = [&](int from, int left) {
        if (left == 0) {
            out.push_back(p);
            return;
        }
        // the last particle must sit at a position <= L - 1
        for (int i = from; i + 2 * (left - 1) <= L - 1; ++i) {
            p.sigma[static_cast<std::size_t>(i)] = 1;
            rec(i + 2, left - 1);
            p.sigma[static_cast<std::size_t>(i)] = 0;
        }
    };
    rec(primed ? 2 : 1, n);
    // lexicographic order puts the leftmost choices last; reverse it
    std::reverse(out.begin(), out.end());
    return out;
}

void check_length(int L, const char* what) {
    if (L < 0)
        throw DomainError(std::string(what) + ": L must be nonnegative");
}

QLaurent X_enumerate(int L, bool primed) {
    if (L > kMaxEnumerateLength)
        throw CapError("hh_X enumerate: L = " + std::to_string(L) + " exceeds the cap " +
                       std::to_string(kMaxEnumerateLength));
    if (primed && L == 0)
        return {};
    std::vector<int> particle_numbers;
    for (int n = 0; 2 * n <= L; ++n)
        particle_numbers.push_back(n);
    const auto parts = parallel_map(particle_numbers, [&](int n) {
        QLaurent gf;
        for (const auto& p : paths_with_particles(L, primed, n))
            gf.add_term(hh_energy(p), 1);
        return gf;
    });
    QLaurent total;
    for (const auto& g : parts)
        total += g;
    return total;
}

QLaurent X_recurrence(int L, bool primed) {
    QLaurent prev = primed ? QLaurent() : QLaurent::constant(1); // X(0)
    if (L == 0)
        return prev;
    QLaurent cur = QLaurent::constant(1); // X(1)
    for (int k = 2; k <= L; ++k) {
        QLaurent next = cur + prev.shifted(k - 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

QLaurent X_fermionic(int L, bool primed) {
    QLaurent total;
    for (long n = 0; 2 * n <= L; ++n) {
        const long shift = primed ? n * (n + 1) : n * n;
        const long width = primed ? L - 2 * n - 1 : L - 2 * n;
        total += qbinomial(width, n).shifted(shift);
    }
    return total;
}

QLaurent X_bosonic(int L, bool primed) {
    QLaurent total;
    const long reach = L + 5;
    for (long j = -reach / 5; j <= reach / 5; ++j) {
        QLaurent t = hh_bosonic_term(L, static_cast<int>(j), primed);
        // the support is |5j| <= L + 2; the rest is a guard ring
        if (5 * std::abs(j) > L + 2 && !t.is_zero())
            throw ConsistencyError("hh_X bosonic: guard term j = " + std::to_string(j) + " is nonzero");
        if (j % 2 != 0)
            t = -t;
        total += t;
    }
    return total;
}

// Greedy scan: taking the earliest admissible index at every step finds a
// witness whenever one exists.
int alternations(const std::vector<int>& h, bool up) {
    int count = 0;
    bool want_high = up;
    for (std::size_t i = 1; i < h.size(); ++i) {
        const bool hit = want_high ? h[i] > 4 : h[i] < 1;
        if (hit) {
            ++count;
            want_high = !want_high;
        }
    }
    return count;
}

} // namespace

bool HHPath::valid() const {
    if (sigma.size() < 1)
        return false;
    for (int s : sigma)
        if (s != 0 && s != 1)
            return false;
    if (sigma.back() != 0)
        return false;
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i)
        if (sigma[i] * sigma[i + 1] != 0)
            return false;
    return true;
}

int HHPath::particles() const {
    int n = 0;
    for (std::size_t j = 1; j < sigma.size(); ++j)
        n += sigma[j];
    return n;
}

long hh_energy(const HHPath& p) {
    if (!p.valid())
        throw DomainError("hh_energy: not a hard hexagon path");
    long e = 0;
    for (std::size_t j = 1; j < p.sigma.size(); ++j)
        e += static_cast<long>(j) * p.sigma[j];
    return e;
}

std::vector<HHPath> hh_paths(int L, bool primed) {
    check_length(L, "hh_paths");
    if (L > kMaxEnumerateLength)
        throw CapError("hh_paths: L = " + std::to_string(L) + " exceeds the cap " +
                       std::to_string(kMaxEnumerateLength));
    std::vector<HHPath> out;
    if (primed && L == 0)
        return out;
    for (int n = 0; 2 * n <= L; ++n) {
        auto part = paths_with_particles(L, primed, n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::string to_string(HHMethod m) {
    switch (m) {
    case HHMethod::enumerate:
        return "enumerate";
    case HHMethod::recurrence:
        return "recurrence";
    case HHMethod::fermionic:
        return "fermionic";
    case HHMethod::bosonic:
        return "bosonic";
    }
    return "?";
}

HHMethod parse_hh_method(const std::string& s) {
    for (HHMethod m : {HHMethod::enumerate, HHMethod::recurrence, HHMethod::fermionic, HHMethod::bosonic})
        if (to_string(m) == s)
            return m;
    throw ParseError("unknown hard hexagon method '" + s + "'");
}

QLaurent hh_X(int L, HHMethod method, bool primed) {
    check_length(L, "hh_X");
    switch (method) {
    case HHMethod::enumerate:
        return X_enumerate(L, primed);
    case HHMethod::recurrence:
        return X_recurrence(L, primed);
    case HHMethod::fermionic:
        return X_fermionic(L, primed);
    case HHMethod::bosonic:
        return X_bosonic(L, primed);
    }
    throw DomainError("hh_X: unknown method");
}

QLaurent hh_bosonic_term(int L, int j, bool primed) {
    check_length(L, "hh_bosonic_term");
    const long jj = j;
    const long exponent = primed ? jj * (5 * jj + 3) / 2 : jj * (5 * jj + 1) / 2;
    const long bottom = floor_div(L - 5 * jj - (primed ? 1 : 0), 2);
    return qbinomial_top(L, bottom).shifted(exponent);
}

bool StripPath::in_strip() const {
    return std::all_of(heights.begin(), heights.end(), [](int h) { return h >= 1 && h <= 4; });
}

bool StripPath::has_witness(bool up, int j) const {
    if (j <= 0)
        return true;
    return alternations(heights, up) >= j;
}

bool has_witness_bruteforce(const StripPath& p, bool up, int j) {
    if (j <= 0)
        return true;
    const int L = p.length();
    // try every increasing index sequence, depth first
    std::function<bool(int, int)> search = [&](int from, int k) {
        if (k == j)
            return true;
        const bool want_high = (k % 2 == 0) == up;
        for (int i = from; i <= L; ++i) {
            const int h = p.heights[static_cast<std::size_t>(i)];
            if ((want_high ? h > 4 : h < 1) && search(i + 1, k + 1))
                return true;
        }
        return false;
    };
    return search(1, 0);
}

long strip_energy(const StripPath& p) {
    long e = 0;
    const auto& s = p.heights;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const bool peak = s[i - 1] == s[i] - 1 && s[i + 1] == s[i] - 1 && s[i] > 3;
        const bool valley = s[i - 1] == s[i] + 1 && s[i + 1] == s[i] + 1 && s[i] < 2;
        if (peak || valley)
            e += static_cast<long>(i);
    }
    return e;
}

StripPath strip_transform(const HHPath& p) {
    if (!p.valid() || p.primed())
        throw DomainError("strip_transform: expects a path of D_L");
    // [parity of i][sigma_i]
    static constexpr std::array<std::array<int, 2>, 2> kHeight{{{3, 1}, {2, 4}}};
    StripPath out;
    out.heights.reserve(p.sigma.size());
    for (std::size_t i = 0; i < p.sigma.size(); ++i)
        out.heights.push_back(kHeight[i % 2][static_cast<std::size_t>(p.sigma[i])]);
    return out;
}

std::vector<StripPath> strip_paths(int L) {
    check_length(L, "strip_paths");
    if (L > kMaxStripLength)
        throw CapError("strip_paths: L = " + std::to_string(L) + " exceeds the cap " +
                       std::to_string(kMaxStripLength));
    std::vector<StripPath> out;
    StripPath cur;
    cur.heights.assign(static_cast<std::size_t>(L) + 1, 0);
    cur.heights[0] = 3;
    std::function<void(int, int)> rec = [&](int i, int ups_left) {
        if (i == L) {
            out.push_back(cur);
            return;
        }
        const int downs_left = (L - i) - ups_left;
        const auto k = static_cast<std::size_t>(i);
        if (ups_left > 0) {
            cur.heights[k + 1] = cur.heights[k] + 1;
            rec(i + 1, ups_left - 1);
        }
        if (downs_left > 0) {
            cur.heights[k + 1] = cur.heights[k] - 1;
            rec(i + 1, ups_left);
        }
    };
    rec(0, L / 2);
    return out;
}

QLaurent strip_inclusion_exclusion(int L, int j) {
    QLaurent gf;
    const bool up = j < 0;
    for (const auto& p : strip_paths(L))
        if (p.has_witness(up, std::abs(j)))
            gf.add_term(strip_energy(p), 1);
    return gf;
}

QLaurent strip_bounded_gf(int L) {
    QLaurent gf;
    for (const auto& p : strip_paths(L))
        if (p.in_strip())
            gf.add_term(strip_energy(p), 1);
    return gf;
}

std::string SeriesReport::to_json() const {
    nlohmann::json j;
    j["suite"] = "rr";
    j["which"] = which;
    j["N"] = N;
    j["fermionic_matches_product"] = fermionic_matches_product;
    j["alternating_matches_product"] = alternating_matches_product;
    j["path_limit_matches"] = path_limit_matches;
    j["stable_length"] = stable_length;
    j["findings"] = findings;
    j["ok"] = ok();
    return j.dump();
}

SeriesReport rr_series_check(int which, long N) {
    if (which != 1 && which != 2)
        throw DomainError("rr_series_check: which must be 1 or 2");
    if (N < 0 || N > kMaxSeriesOrder)
        throw DomainError("rr_series_check: N must lie in [0, " + std::to_string(kMaxSeriesOrder) + "]");
    const bool primed = which == 2;
    SeriesReport r;
    r.which = which;
    r.N = N;

    // sum of q^{n^2} / (q)_n, or q^{n(n+1)} / (q)_n
    r.fermionic = TruncatedSeries(N);
    for (long n = 0;; ++n) {
        const long e = primed ? n * (n + 1) : n * n;
        if (e > N)
            break;
        TruncatedSeries t(N);
        t.coeff(e) = 1;
        for (long k = 1; k <= n; ++k)
            t.div_one_minus(k);
        r.fermionic += t;
    }

    const std::array<Progression, 2> prog =
        primed ? std::array<Progression, 2>{{{2, 5}, {3, 5}}} : std::array<Progression, 2>{{{1, 5}, {4, 5}}};
    r.product = truncated_product(prog, N, true);

    TruncatedSeries theta(N);
    for (long j = -N; j <= N; ++j) {
        const long e = primed ? j * (5 * j + 3) / 2 : j * (5 * j + 1) / 2;
        if (e < 0 || e > N)
            continue;
        theta.coeff(e) += (j % 2 == 0) ? 1 : -1;
    }
    const std::array<Progression, 1> all{{{0, 1}}};
    r.alternating = truncated_product(all, N, true) * theta;

    r.fermionic_matches_product = r.fermionic == r.product;
    r.alternating_matches_product = r.alternating == r.product;
    if (!r.fermionic_matches_product)
        r.findings.push_back("sum side differs from the product side");
    if (!r.alternating_matches_product)
        r.findings.push_back("alternating side differs from the product side");

    // X(L) mod q^{N+1} by the recurrence.  X(L+1) - X(L) = q^L X(L-1), so
    // once two consecutive values agree through q^N (with X(L-1) nonzero,
    // so its constant term is 1) every later one does.
    TruncatedSeries prev(N), cur = TruncatedSeries::one(N);
    if (!primed)
        prev.coeff(0) = 1;
    for (long L = 1;; ++L) {
        TruncatedSeries next = cur;
        if (L <= N)
            for (long e = 0; e + L <= N; ++e)
                next.coeff(e + L) += prev.coeff(e);
        if (next == cur && prev.coeff(0) != 0) {
            r.stable_length = L;
            break;
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    r.path_limit = cur;
    r.path_limit_matches = r.path_limit == r.fermionic;
    if (!r.path_limit_matches)
        r.findings.push_back("limit of the configuration sums differs from the sum side");
    return r;
}

} // namespace qcrystal
