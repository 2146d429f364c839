#include <doctest.h>

#include "qcrystal/crystal.hpp"
#include "qcrystal/errors.hpp"

#include <map>
#include <random>
#include <set>

using namespace qcrystal;

namespace {

Weight W(std::vector<int> v) { return Weight(std::move(v)); }

// Word of single-letter factors, given as written (leftmost first).
TensorWord letters_word(const Tensor& B, std::vector<Letter> written) {
    TensorWord w;
    for (std::size_t k = written.size(); k-- > 0;)
        w.elems.push_back(*B.factor(w.elems.size()).find({written[k]}));
    return w;
}

long binom(int n, int k) {
    long r = 1;
    for (int j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

// alpha_i in the ambient lattice; alpha_0 = e_{n+1} - e_1 for type A.
Weight simple_root_any(const CartanData& d, int i) {
    if (i > 0)
        return d.simple_root(i);
    Weight a = d.zero_weight();
    a[0] = -1;
    a[a.size() - 1] = 1;
    return a;
}

int coroot_any(const CartanData& d, int i, const Weight& w) {
    if (i > 0)
        return d.coroot_pairing(i, w);
    return w[w.size() - 1] - w[0];
}

using Partition = std::vector<int>;

// Pieri oracle: GL_{n+1} decomposition of a product of columns and rows.
std::map<Partition, long> pieri_decompose(int n, const std::vector<FactorDescriptor>& factors) {
    const std::size_t rows = static_cast<std::size_t>(n + 1);
    std::map<Partition, long> cur{{Partition(rows, 0), 1}};
    for (const auto& f : factors) {
        std::map<Partition, long> next;
        for (const auto& [lam, mult] : cur) {
            // add boxes: vertical strip of size r (s == 1) or horizontal strip of size s
            const int size = f.s == 1 ? f.r : f.s;
            Partition mu = lam;
            auto rec = [&](auto&& self, std::size_t row, int left) -> void {
                if (row == rows) {
                    if (left == 0)
                        next[mu] += mult;
                    return;
                }
                const int maxadd = f.s == 1 ? 1 : left;
                for (int a = 0; a <= std::min(maxadd, left); ++a) {
                    mu[row] = lam[row] + a;
                    if (row > 0 && mu[row] > mu[row - 1])
                        break;
                    // horizontal strip: new row may not exceed old previous row
                    if (f.s != 1 && row > 0 && mu[row] > lam[row - 1])
                        break;
                    self(self, row + 1, left - a);
                }
                mu[row] = lam[row];
            };
            rec(rec, 0, size);
        }
        cur = std::move(next);
    }
    return cur;
}

// Sp(2n) decomposition of V(Lambda_1)^{x L}: add or remove one box.
std::map<Partition, long> symplectic_decompose(int n, int L) {
    std::map<Partition, long> cur{{Partition(static_cast<std::size_t>(n), 0), 1}};
    for (int step = 0; step < L; ++step) {
        std::map<Partition, long> next;
        for (const auto& [lam, mult] : cur)
            for (std::size_t k = 0; k < lam.size(); ++k)
                for (int delta : {1, -1}) {
                    Partition mu = lam;
                    mu[k] += delta;
                    bool ok = mu[k] >= 0;
                    for (std::size_t j = 0; j + 1 < mu.size(); ++j)
                        ok = ok && mu[j] >= mu[j + 1];
                    if (ok)
                        next[mu] += mult;
                }
        cur = std::move(next);
    }
    return cur;
}

std::vector<TensorShape> desk_shapes() {
    std::vector<TensorShape> out;
    for (const char* s : {"A:1;1,1*3", "A:2;1,1*3", "A:2;2,1,1,1,1,2", "A:1;1,2,1,3", "A:3;1,1,3,1",
                          "A:2;3,1,1,1", "C:2;1,1*3", "C:3;1,1*2", "A:1;2,1,1,1"})
        out.push_back(parse_shape(s));
    return out;
}

} // namespace

TEST_CASE("letter arrows follow the letter tables") {
    CHECK(letter_arrow(CartanKind::A, 2, 1, 1, Dir::f) == 2);
    CHECK(!letter_arrow(CartanKind::A, 2, 2, 1, Dir::f));
    CHECK(letter_arrow(CartanKind::C, 3, 3, 3, Dir::f) == -3);
    CHECK(letter_arrow(CartanKind::C, 3, 1, -2, Dir::f) == -1);
    CHECK(letter_arrow(CartanKind::C, 3, 1, -1, Dir::e) == -2);
    CHECK(!letter_arrow(CartanKind::C, 3, 3, -3, Dir::f));
}

TEST_CASE("tensor rule examples") {
    Tensor B(parse_shape("A:1;1,1*2"));
    auto w11 = letters_word(B, {1, 1});
    auto f = tensor_arrow(B, w11, 1, Dir::f);
    REQUIRE(f);
    CHECK(*f == letters_word(B, {1, 2}));
    CHECK(!tensor_arrow(B, w11, 1, Dir::e));
    CHECK(!tensor_arrow(B, letters_word(B, {2, 1}), 1, Dir::e));
    // 2 x 1 is the highest weight element of weight (1,1)
    CHECK(string_stats(B, letters_word(B, {2, 1}), 1) == std::pair{0, 0});
    CHECK(string_stats(B, letters_word(B, {1, 2}), 1) == std::pair{1, 1});
    CHECK(reflection_s(B, w11, 1) == letters_word(B, {2, 2}));

    Tensor one(parse_shape("A:1;1,1"));
    CHECK(string_stats(one, letters_word(one, {1}), 1) == std::pair{0, 1});
}

TEST_CASE("build_component sizes") {
    auto g = build_component(CartanKind::A, 2, {1, 2});
    CHECK(g.size() == 3);
    std::set<std::vector<Letter>> expect{{1, 2}, {1, 3}, {2, 3}};
    CHECK(std::set<std::vector<Letter>>(g.vertices.begin(), g.vertices.end()) == expect);
    for (int n = 1; n <= 4; ++n)
        for (int k = 1; k <= n + 1; ++k) {
            std::vector<Letter> seed;
            for (int j = 1; j <= k; ++j)
                seed.push_back(j);
            CHECK(build_component(CartanKind::A, n, seed).size() == static_cast<std::size_t>(binom(n + 1, k)));
        }
    CHECK(build_component(CartanKind::A, 3, {1}).size() == 4);
    CHECK(build_component(CartanKind::C, 3, {1}).size() == 6);
    // rows: multisets
    CHECK(build_component(CartanKind::A, 2, {1, 1, 1}).size() == 10);
    CHECK_THROWS_AS(build_component(CartanKind::A, 3, {1, 1, 1, 1, 1, 1}, 20), CapError);
}

TEST_CASE("components are closed under arrows") {
    for (auto seed : std::vector<std::vector<Letter>>{{1, 2}, {1, 1}, {2, 1, 1}, {1, 2, 3}}) {
        auto g = build_component(CartanKind::A, 3, seed);
        for (std::size_t v = 0; v < g.size(); ++v)
            for (int i = 0; i < 3; ++i) {
                int y = g.f[static_cast<std::size_t>(i)][v];
                if (y >= 0)
                    CHECK(g.e[static_cast<std::size_t>(i)][static_cast<std::size_t>(y)] == static_cast<int>(v));
            }
    }
}

TEST_CASE("affine arrows on single boxes") {
    Tensor a1(parse_shape("A:1;1,1"));
    auto e0 = affine_arrow_A(a1, letters_word(a1, {1}), Dir::e);
    REQUIRE(e0);
    CHECK(*e0 == letters_word(a1, {2}));
    Tensor a2(parse_shape("A:2;1,1"));
    auto f0 = affine_arrow_A(a2, letters_word(a2, {3}), Dir::f);
    REQUIRE(f0);
    CHECK(*f0 == letters_word(a2, {1}));
    Tensor c2(parse_shape("C:2;1,1"));
    CHECK_THROWS_AS(affine_arrow_A(c2, c2.highest(), Dir::e), UnsupportedError);
}

TEST_CASE("crystal axioms on random words") {
    std::mt19937 rng(11);
    for (const auto& shape : desk_shapes()) {
        Tensor B(shape);
        const auto& d = B.cartan();
        std::vector<TensorWord> words;
        if (B.cardinality() <= 400) {
            words = all_words(B);
        } else {
            for (int t = 0; t < 400; ++t) {
                TensorWord w;
                for (std::size_t k = 0; k < B.length(); ++k)
                    w.elems.push_back(std::uniform_int_distribution<int>(0, B.factor(k).size() - 1)(rng));
                words.push_back(w);
            }
        }
        for (const auto& w : words)
            for (int i = B.min_color(); i <= d.rank(); ++i) {
                auto [eps, phi] = string_stats(B, w, i);
                CHECK(coroot_any(d, i, B.weight(w)) == phi - eps);
                auto f = tensor_arrow(B, w, i, Dir::f);
                CHECK(f.has_value() == (phi > 0));
                if (f) {
                    CHECK(tensor_arrow(B, *f, i, Dir::e) == w);
                    CHECK(B.weight(*f) == B.weight(w) - simple_root_any(d, i));
                }
                auto e = tensor_arrow(B, w, i, Dir::e);
                CHECK(e.has_value() == (eps > 0));
                if (e)
                    CHECK(tensor_arrow(B, *e, i, Dir::f) == w);
                auto s = reflection_s(B, w, i);
                CHECK(reflection_s(B, s, i) == w);
            }
    }
}

TEST_CASE("factor levels") {
    CHECK(FactorCrystal::get(CartanKind::A, 1, {1, 1})->level() == 1);
    CHECK(FactorCrystal::get(CartanKind::A, 2, {1, 1})->level() == 1);
    CHECK(FactorCrystal::get(CartanKind::A, 2, {1, 3})->level() == 3);
    CHECK(FactorCrystal::get(CartanKind::A, 3, {2, 1})->level() == 1);
    CHECK(crystal_level(Tensor(parse_shape("A:1;1,1"))) == 1);
    CHECK(crystal_level(Tensor(parse_shape("A:1;1,1*2"))) >= 1);
    CHECK_THROWS_AS(FactorCrystal::get(CartanKind::A, 2, {2, 2}), UnsupportedError);
    CHECK_THROWS_AS(FactorCrystal::get(CartanKind::C, 2, {2, 1}), UnsupportedError);
}

TEST_CASE("shape grammar") {
    auto s = parse_shape("A:2;1,1*4");
    CHECK(s.kind == CartanKind::A);
    CHECK(s.rank == 2);
    CHECK(s.length() == 4);
    auto m = parse_shape("A:2;2,1,1,3");
    // written B_2 x B_1 with B_2 = B^{2,1}
    CHECK(m.factors[0] == FactorDescriptor{1, 3});
    CHECK(m.factors[1] == FactorDescriptor{2, 1});
    CHECK(m.to_string() == "A:2;2,1,1,3");
    CHECK(parse_shape(s.to_string()) == s);
    CHECK(parse_shape("C:3").length() == 0);
    CHECK_THROWS_AS(parse_shape("B:2;1,1"), ParseError);
    CHECK_THROWS_AS(parse_shape("A:2;1"), ParseError);
    CHECK_THROWS_AS(parse_shape("A:x;1,1"), ParseError);
    CHECK_THROWS_AS(parse_shape("A:2;1,1*0"), ParseError);
    CHECK_THROWS_AS(parse_weight("1,2", s), ParseError);
    CHECK(parse_weight("2,1,1", s) == W({2, 1, 1}));
}

TEST_CASE("path sets on small instances") {
    Tensor B(parse_shape("A:1;1,1*2"));
    auto p = enumerate_paths(B, W({1, 1}), Restriction::classical());
    REQUIRE(p.size() == 1);
    CHECK(p[0] == letters_word(B, {2, 1}));
    auto u = enumerate_paths(B, W({2, 0}), Restriction::none());
    REQUIRE(u.size() == 1);
    CHECK(u[0] == letters_word(B, {1, 1}));
    Tensor B4(parse_shape("A:1;1,1*4"));
    CHECK(enumerate_paths(B4, W({2, 2}), Restriction::at_level(1)).size() == 1);
    CHECK(enumerate_paths(B4, W({2, 2}), Restriction::classical()).size() == 2);
    CHECK_THROWS_AS(enumerate_paths(Tensor(parse_shape("C:2;1,1")), W({1, 0}), Restriction::at_level(1)),
                    UnsupportedError);
    CHECK_THROWS_AS(enumerate_paths(B4, W({2, 2}), Restriction::none(), 3), CapError);
    Tensor empty(parse_shape("A:2"));
    CHECK(enumerate_paths(empty, W({0, 0, 0}), Restriction::classical()).size() == 1);
}

TEST_CASE("enumerated paths match brute force filters") {
    for (const auto& shape : desk_shapes()) {
        Tensor B(shape);
        std::map<Weight, std::vector<TensorWord>> by_weight, hw_by_weight;
        for (const auto& w : all_words(B)) {
            by_weight[B.weight(w)].push_back(w);
            if (is_classical_highest(B, w))
                hw_by_weight[B.weight(w)].push_back(w);
        }
        for (auto& [wt, ws] : by_weight)
            std::sort(ws.begin(), ws.end());
        for (auto& [wt, ws] : hw_by_weight)
            std::sort(ws.begin(), ws.end());
        std::uint64_t total = 0;
        for (const auto& [wt, ws] : by_weight) {
            auto p = enumerate_paths(B, wt, Restriction::none());
            CHECK(p == ws);
            total += p.size();
            auto hw = enumerate_paths(B, wt, Restriction::classical());
            CHECK(hw == hw_by_weight[wt]);
            if (B.affine())
                for (int level = 0; level <= 3; ++level) {
                    std::vector<TensorWord> expect;
                    for (const auto& w : hw_by_weight[wt])
                        if (string_stats(B, w, 0).first <= level)
                            expect.push_back(w);
                    CHECK(enumerate_paths(B, wt, Restriction::at_level(level)) == expect);
                }
        }
        CHECK(total == B.cardinality());
    }
}

TEST_CASE("highest weight multiplicities match Pieri and branching oracles") {
    for (int n = 1; n <= 2; ++n)
        for (int L = 0; L <= 5; ++L) {
            std::vector<std::string> shapes{"1,1*" + std::to_string(L)};
            if (L >= 2)
                shapes.push_back("2,1,1,1*" + std::to_string(L - 2));
            if (L >= 1 && L <= 4)
                shapes.push_back("1,2,1,1*" + std::to_string(L));
            for (const auto& tail : shapes) {
                std::string text = "A:" + std::to_string(n) + ";" + tail;
                if (tail.ends_with("*0"))
                    text = text.substr(0, text.size() - 6);
                TensorShape shape = parse_shape(text);
                bool ok = true;
                for (const auto& f : shape.factors)
                    ok = ok && f.r <= n + 1;
                if (!ok)
                    continue;
                Tensor B(shape);
                auto oracle = pieri_decompose(n, shape.factors);
                long hw_total = 0;
                for (const auto& [lam, mult] : oracle) {
                    CAPTURE(text);
                    CHECK(static_cast<long>(enumerate_paths(B, W(lam), Restriction::classical()).size()) == mult);
                    hw_total += mult;
                }
                long all_hw = 0;
                for (const auto& w : all_words(B))
                    all_hw += is_classical_highest(B, w) ? 1 : 0;
                CHECK(all_hw == hw_total);
            }
        }
    for (int n = 1; n <= 2; ++n)
        for (int L = 0; L <= 5; ++L) {
            Tensor B(parse_shape("C:" + std::to_string(n) + (L ? ";1,1*" + std::to_string(L) : "")));
            auto oracle = symplectic_decompose(n, L);
            for (const auto& [lam, mult] : oracle)
                CHECK(static_cast<long>(enumerate_paths(B, W(lam), Restriction::classical()).size()) == mult);
            long all_hw = 0, total = 0;
            for (const auto& w : all_words(B))
                all_hw += is_classical_highest(B, w) ? 1 : 0;
            for (const auto& [lam, mult] : oracle)
                total += mult;
            CHECK(all_hw == total);
        }
}
