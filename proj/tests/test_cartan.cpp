#include <doctest.h>

#include "qcrystal/cartan.hpp"
#include "qcrystal/errors.hpp"

#include <set>

using namespace qcrystal;

namespace {

Weight W(std::vector<int> v) { return Weight(std::move(v)); }

} // namespace

TEST_CASE("weyl group sizes and signs") {
    CHECK(weyl_enumerate(CartanData(CartanKind::A, 2)).size() == 6);
    CHECK(weyl_enumerate(CartanData(CartanKind::C, 2)).size() == 8);
    CHECK(weyl_enumerate(CartanData(CartanKind::A, 3)).size() == 24);
    CHECK(weyl_enumerate(CartanData(CartanKind::C, 3)).size() == 48);
    CartanData a2(CartanKind::A, 2);
    CHECK(weyl_generator(a2, 1).parity() == -1);
    CHECK(weyl_generator(a2, 1).determinant() == -1);
    CHECK_THROWS_AS(weyl_enumerate(CartanData(CartanKind::A, 7)), CapError);
}

TEST_CASE("weyl elements are distinct and sign is well defined") {
    for (auto kind : {CartanKind::A, CartanKind::C})
        for (int n = 1; n <= 3; ++n) {
            CartanData d(kind, n);
            auto all = weyl_enumerate(d);
            std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
            for (const auto& w : all) {
                CHECK(seen.insert({w.perm, w.sign}).second);
                CHECK(w.parity() == w.determinant());
                // rebuild from the word
                WeylElement r = weyl_identity(d);
                for (int i : w.word)
                    r = r.compose(weyl_generator(d, i));
                CHECK(r == w);
            }
        }
}

TEST_CASE("simple reflections") {
    CartanData a2(CartanKind::A, 2), c2(CartanKind::C, 2), a1(CartanKind::A, 1);
    CHECK(apply_simple_reflection(a2, 1, W({3, 1, 0})) == W({1, 3, 0}));
    CHECK(apply_simple_reflection(c2, 2, W({3, 1})) == W({3, -1}));
    CHECK(apply_simple_reflection(a1, 0, W({1, 0}), 1) == W({3, -2}));
    CHECK(apply_simple_reflection(c2, 0, W({1, 2}), 1) == W({-1 + 8, 2}));
    CHECK_THROWS_AS(apply_simple_reflection(a2, 3, W({0, 0, 0})), DomainError);
    CHECK_THROWS_AS(apply_simple_reflection(a2, 0, W({0, 0, 0})), DomainError);
}

TEST_CASE("reflections square to identity") {
    for (auto kind : {CartanKind::A, CartanKind::C})
        for (int n = 1; n <= 3; ++n) {
            CartanData d(kind, n);
            Weight v = d.zero_weight();
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] = static_cast<int>(3 * k + 1) * (k % 2 ? -1 : 1);
            for (int i = 0; i <= n; ++i) {
                auto once = apply_simple_reflection(d, i, v, 2);
                CHECK(apply_simple_reflection(d, i, once, 2) == v);
                CHECK(!(once == v));
            }
        }
}

TEST_CASE("pairing reproduces the Cartan matrix") {
    for (int n = 1; n <= 5; ++n) {
        CartanData a(CartanKind::A, n), c(CartanKind::C, n);
        for (int i = 1; i <= n; ++i) {
            CHECK(a.t(i) == 1);
            CHECK(c.t(i) == (i < n ? 2 : 1));
            for (int j = 1; j <= n; ++j) {
                int expect_a = i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
                CHECK(a.cartan_matrix(i, j) == expect_a);
                CHECK(a.cartan_matrix(i, j) == a.coroot_pairing(i, a.simple_root(j)));
                int expect_c = expect_a;
                // <h_{n-1}, alpha_n> = -2 since alpha_n = 2e_n
                if (n > 1 && i == n - 1 && j == n)
                    expect_c = -2;
                CHECK(c.cartan_matrix(i, j) == expect_c);
                CHECK(c.cartan_matrix(i, j) == c.coroot_pairing(i, c.simple_root(j)));
            }
            CHECK(a.coroot_pairing(i, a.rho()) == 1);
            CHECK(c.coroot_pairing(i, c.rho()) == 1);
        }
        CHECK(a.h_dual() == n + 1);
        CHECK(c.h_dual() == n + 1);
        CHECK(a.a0() == 1);
        // long roots have squared length 2
        CHECK(a.doubled_pairing(1, 1) == 4);
        CHECK(c.doubled_pairing(n, n) == 4);
    }
    CHECK(CartanData(CartanKind::C, 3).rho() == W({3, 2, 1}));
    CHECK(CartanData(CartanKind::A, 3).rho() == W({3, 2, 1, 0}));
}

TEST_CASE("partition and Dynkin label round trip") {
    CartanData a(CartanKind::A, 2), c(CartanKind::C, 2);
    for (int x = 0; x <= 4; ++x)
        for (int y = 0; y <= 4; ++y) {
            std::vector<int> labels{x, y};
            auto wa = a.from_dynkin_labels(labels);
            CHECK(a.is_dominant(wa));
            CHECK(a.dynkin_labels(wa) == labels);
            CHECK(wa[2] == 0);
            auto wc = c.from_dynkin_labels(labels);
            CHECK(c.is_dominant(wc));
            CHECK(c.dynkin_labels(wc) == labels);
        }
    CHECK(a.dynkin_labels(W({3, 1, 0})) == std::vector<int>{2, 1});
    CHECK(!a.is_dominant(W({1, 3, 0})));
    CHECK(!c.is_dominant(W({1, -1})));
}

TEST_CASE("root coordinates") {
    CartanData a(CartanKind::A, 2), c(CartanKind::C, 2);
    auto s = a.root_coordinates(W({1, 0, -1}));
    REQUIRE(s);
    CHECK(*s == std::vector<long>{1, 1});
    CHECK(!a.root_coordinates(W({1, 0, 0})));
    auto t = c.root_coordinates(W({2, 0}));
    REQUIRE(t);
    CHECK(*t == std::vector<long>{2, 1});
    CHECK(!c.root_coordinates(W({1, 0})));
}

TEST_CASE("translation lattice box") {
    CartanData a1(CartanKind::A, 1), a2(CartanKind::A, 2), c2(CartanKind::C, 2);
    auto box = translation_lattice_box(a1, 3, 0);
    CHECK(std::find(box.begin(), box.end(), W({0, 0})) != box.end());
    for (const auto& b : translation_lattice_box(c2, 1, 3))
        for (int x : b.coords)
            CHECK(x % 2 == 0);
    for (const auto& b : translation_lattice_box(a2, 1, 3))
        CHECK(b[0] + b[1] + b[2] == 0);
}

TEST_CASE("affine composition matches successive reflections") {
    for (auto kind : {CartanKind::A, CartanKind::C}) {
        CartanData d(kind, 2);
        const int level = 2;
        Weight x = d.zero_weight();
        for (std::size_t k = 0; k < x.size(); ++k)
            x[k] = static_cast<int>(5 - 2 * k);
        std::vector<int> word{0, 1, 0, 2, 1, 0};
        AffineWeylElement w = affine_identity(d);
        for (int i : word)
            w = w.compose_generator(d, i, level);
        // w = r_{word[0]} ... r_{word[last]}, so the last letter acts first
        Weight y = x;
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            y = apply_simple_reflection(d, *it, y, level);
        CHECK(w.act(x) == y);
        CHECK(w.sign() == 1);
        Weight tau = w.translation;
        int c = level + d.h_dual();
        for (int v : tau.coords)
            CHECK(v % c == 0);
        Weight beta = tau;
        for (auto& v : beta.coords)
            v /= c;
        CHECK(in_translation_lattice(d, beta));
    }
}
