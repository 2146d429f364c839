#include <doctest.h>

#include "qcrystal/errors.hpp"
#include "qcrystal/hardhex.hpp"

#include <functional>
#include <set>

using namespace qcrystal;

namespace {

QLaurent poly(std::initializer_list<std::pair<long, long>> terms) {
    QLaurent p;
    for (auto [e, c] : terms)
        p.add_term(e, c);
    return p;
}

// Every 0/1 word of length L+1, filtered by the path rules.
QLaurent brute_X(int L, bool primed) {
    QLaurent gf;
    for (long bits = 0; bits < (1L << (L + 1)); ++bits) {
        std::vector<int> s(static_cast<std::size_t>(L) + 1);
        for (int i = 0; i <= L; ++i)
            s[static_cast<std::size_t>(i)] = (bits >> i) & 1;
        if (s[0] != (primed ? 1 : 0) || s[static_cast<std::size_t>(L)] != 0)
            continue;
        bool ok = true;
        long e = 0;
        for (int i = 0; i < L; ++i)
            ok = ok && s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i) + 1] == 0;
        for (int i = 1; i <= L; ++i)
            e += i * s[static_cast<std::size_t>(i)];
        if (ok)
            gf.add_term(e, 1);
    }
    return gf;
}

// Partitions of m with parts in [1, max_part] and pairwise gaps >= gap.
long count_partitions(long m, long max_part, const std::function<bool(long)>& allowed, long gap) {
    std::function<long(long, long)> rec = [&](long left, long bound) -> long {
        if (left == 0)
            return 1;
        long c = 0;
        for (long p = std::min(left, bound); p >= 1; --p)
            if (allowed(p))
                c += rec(left - p, p - gap);
        return c;
    };
    return rec(m, max_part);
}

// Number of partitions with at most n parts, each at most m.
long box_count(long n, long m) {
    if (n < 0 || m < 0)
        return 0;
    // C(n+m, n)
    long r = 1;
    for (long k = 1; k <= n; ++k)
        r = r * (m + k) / k;
    return r;
}

} // namespace

TEST_CASE("hard hexagon path energies") {
    HHPath fig{{0, 1, 0, 0, 0, 1, 0, 0, 1, 0}};
    CHECK(fig.valid());
    CHECK(hh_energy(fig) == 14);
    for (int n = 0; n <= 5; ++n) {
        HHPath ground;
        ground.sigma.assign(static_cast<std::size_t>(2 * n + 1), 0);
        for (int k = 0; k < n; ++k)
            ground.sigma[static_cast<std::size_t>(2 * k + 1)] = 1;
        CHECK(hh_energy(ground) == n * n);
    }
    CHECK(hh_energy(HHPath{{0}}) == 0);
    CHECK_THROWS_AS(hh_energy(HHPath{{0, 1, 1, 0}}), DomainError);
    CHECK_THROWS_AS(hh_energy(HHPath{{0, 1}}), DomainError);
}

TEST_CASE("configuration sum examples") {
    for (auto m : {HHMethod::enumerate, HHMethod::recurrence, HHMethod::fermionic, HHMethod::bosonic}) {
        CAPTURE(to_string(m));
        CHECK(hh_X(0, m) == QLaurent::constant(1));
        CHECK(hh_X(1, m) == QLaurent::constant(1));
        CHECK(hh_X(3, m) == poly({{0, 1}, {1, 1}, {2, 1}}));
        CHECK(hh_X(0, m, true).is_zero());
        CHECK(hh_X(2, m, true) == QLaurent::constant(1));
        CHECK(hh_X(3, m, true) == poly({{0, 1}, {2, 1}}));
    }
    CHECK(hh_X(2, HHMethod::enumerate, true) == brute_X(2, true));
    CHECK_THROWS_AS(hh_X(kMaxEnumerateLength + 1, HHMethod::enumerate), CapError);
    CHECK_THROWS_AS(hh_X(-1, HHMethod::recurrence), DomainError);
    CHECK(parse_hh_method("bosonic") == HHMethod::bosonic);
    CHECK_THROWS_AS(parse_hh_method("nope"), ParseError);
}

TEST_CASE("the four configuration sum methods agree") {
    for (bool primed : {false, true})
        for (int L = 0; L <= 20; ++L) {
            CAPTURE(L);
            CAPTURE(primed);
            const auto ref = brute_X(L, primed);
            for (auto m : {HHMethod::enumerate, HHMethod::recurrence, HHMethod::fermionic, HHMethod::bosonic})
                CHECK(hh_X(L, m, primed) == ref);
        }
    for (int L = 21; L <= 60; ++L)
        CHECK(hh_X(L, HHMethod::fermionic) == hh_X(L, HHMethod::bosonic));
}

TEST_CASE("paths with n particles are counted by a box") {
    for (int L = 0; L <= 16; ++L) {
        std::map<int, long> by_n;
        for (const auto& p : hh_paths(L)) {
            CHECK(p.valid());
            ++by_n[p.particles()];
        }
        for (int n = 0; 2 * n <= L; ++n) {
            CAPTURE(L);
            CAPTURE(n);
            // at most n parts, each at most L - 2n
            CHECK(by_n[n] == box_count(n, L - 2 * n));
        }
    }
}

TEST_CASE("the strip transform") {
    HHPath fig{{0, 1, 0, 0, 0, 1, 0, 0, 1, 0}};
    const auto s = strip_transform(fig);
    CHECK(s.heights == std::vector<int>{3, 4, 3, 2, 3, 4, 3, 2, 1, 2});
    CHECK(strip_energy(s) == 14);
    CHECK(s.in_strip());

    HHPath flat{std::vector<int>(7, 0)};
    const auto z = strip_transform(flat);
    CHECK(z.heights == std::vector<int>{3, 2, 3, 2, 3, 2, 3});
    CHECK(strip_energy(z) == 0);
    CHECK_THROWS_AS(strip_transform(HHPath{{1, 0, 0}}), DomainError);

    for (int L = 0; L <= 12; ++L) {
        std::set<std::vector<int>> images;
        const auto paths = hh_paths(L);
        for (const auto& p : paths) {
            const auto t = strip_transform(p);
            CHECK(t.in_strip());
            CHECK(t.length() == L);
            CHECK(strip_energy(t) == hh_energy(p));
            // content floor(L/2) up steps
            int ups = 0;
            for (int i = 1; i <= L; ++i)
                ups += t.heights[static_cast<std::size_t>(i)] > t.heights[static_cast<std::size_t>(i) - 1];
            CHECK(ups == L / 2);
            images.insert(t.heights);
        }
        CHECK(images.size() == paths.size());
        // and every strip path of that content is hit
        long bounded = 0;
        for (const auto& p : strip_paths(L))
            bounded += p.in_strip();
        CHECK(bounded == static_cast<long>(paths.size()));
    }
}

TEST_CASE("greedy witness search equals exhaustive search") {
    for (int L = 0; L <= 12; ++L)
        for (const auto& p : strip_paths(L))
            for (int j = 0; j <= 3; ++j) {
                CHECK(p.has_witness(true, j) == has_witness_bruteforce(p, true, j));
                CHECK(p.has_witness(false, j) == has_witness_bruteforce(p, false, j));
            }
}

TEST_CASE("strip witness sets give the single alternating terms") {
    for (int L = 0; L <= 14; ++L) {
        CAPTURE(L);
        CHECK(strip_inclusion_exclusion(L, 0) == qbinomial_top(L, L / 2));
        for (int j = -(L + 5) / 5; j <= (L + 5) / 5; ++j) {
            CAPTURE(j);
            const auto gf = strip_inclusion_exclusion(L, j);
            CHECK(gf == hh_bosonic_term(L, j));
            if (5 * std::abs(j) > L + 4)
                CHECK(gf.is_zero());
        }
    }
}

TEST_CASE("inclusion-exclusion recovers the bounded strip paths") {
    for (int L = 0; L <= 16; ++L) {
        CAPTURE(L);
        QLaurent alt;
        for (int j = -(L + 5) / 5; j <= (L + 5) / 5; ++j) {
            auto t = strip_inclusion_exclusion(L, j);
            if (j % 2 != 0)
                t = -t;
            alt += t;
        }
        const auto bounded = strip_bounded_gf(L);
        CHECK(alt == bounded);
        CHECK(bounded == hh_X(L, HHMethod::recurrence));
    }
}

TEST_CASE("Rogers-Ramanujan series") {
    for (int which : {1, 2}) {
        CAPTURE(which);
        const auto r = rr_series_check(which, 120);
        CHECK(r.ok());
        CHECK(r.findings.empty());
        CHECK(r.stable_length > 0);
        CHECK(r.fermionic.coeff(0) == 1);
        // partitions with gaps >= 2 (and parts >= 2 for the second identity)
        for (long m = 0; m <= 40; ++m) {
            auto any = [&](long p) { return which == 1 || p >= 2; };
            auto mod5 = [&](long p) {
                return which == 1 ? (p % 5 == 1 || p % 5 == 4) : (p % 5 == 2 || p % 5 == 3);
            };
            CAPTURE(m);
            CHECK(r.fermionic.coeff(m) == count_partitions(m, m, any, 2));
            CHECK(r.product.coeff(m) == count_partitions(m, m, mod5, 0));
        }
    }
    CHECK(rr_series_check(1, 10).fermionic.coeff(4) == 2);
    CHECK(rr_series_check(1, 0).ok());
    CHECK(rr_series_check(2, kMaxSeriesOrder).ok());
    CHECK_THROWS_AS(rr_series_check(3, 5), DomainError);
    CHECK_THROWS_AS(rr_series_check(1, kMaxSeriesOrder + 1), DomainError);
}
