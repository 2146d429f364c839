#include <doctest.h>

#include "qcrystal/energy.hpp"
#include "qcrystal/errors.hpp"

#include <map>

using namespace qcrystal;

namespace {

Weight W(std::vector<int> v) { return Weight(std::move(v)); }

TensorWord letters_word(const Tensor& B, std::vector<Letter> written) {
    TensorWord w;
    for (std::size_t k = written.size(); k-- > 0;)
        w.elems.push_back(*B.factor(w.elems.size()).find({written[k]}));
    return w;
}

// Length of the longest weakly increasing subsequence: the first row of the
// insertion tableau.
int first_row_length(const std::vector<Letter>& word) {
    std::vector<Letter> tails;
    for (Letter x : word) {
        auto it = std::upper_bound(tails.begin(), tails.end(), x);
        if (it == tails.end())
            tails.push_back(x);
        else
            *it = x;
    }
    return static_cast<int>(tails.size());
}

std::vector<Letter> written_letters(const FactorCrystal& F, int x) {
    auto l = F.letters(x);
    return {l.rbegin(), l.rend()};
}

const std::vector<FactorDescriptor> kDescs{{1, 1}, {2, 1}, {1, 2}, {1, 3}, {3, 1}};

} // namespace

TEST_CASE("R-matrix of two single boxes in A_1") {
    auto t = combinatorial_r(1, {1, 1}, {1, 1});
    auto F = FactorCrystal::get(CartanKind::A, 1, {1, 1});
    const int one = *F->find({1}), two = *F->find({2});
    for (int a : {one, two})
        for (int b : {one, two})
            CHECK(t->apply(a, b) == std::pair{a, b}); // identity: b1' = b2, b2' = b1
    CHECK(t->energy(one, one) == 0);
    CHECK(t->energy(one, two) == 0);
    CHECK(t->energy(two, two) == 0);
    CHECK(t->energy(two, one) == -1);
}

TEST_CASE("R-matrix axioms") {
    for (int n = 1; n <= 3; ++n)
        for (auto B2 : kDescs)
            for (auto B1 : kDescs) {
                if (B2.r > n + 1 || B1.r > n + 1)
                    continue;
                CAPTURE(n);
                CAPTURE(B2.r * 10 + B2.s);
                CAPTURE(B1.r * 10 + B1.s);
                auto t = combinatorial_r(n, B2, B1);
                auto back = combinatorial_r(n, B1, B2);
                Tensor dom(TensorShape{CartanKind::A, n, {B1, B2}});
                Tensor cod(TensorShape{CartanKind::A, n, {B2, B1}});
                CHECK(t->energy(dom.factor(1).highest(), dom.factor(0).highest()) == 0);
                for (const auto& w : all_words(dom)) {
                    const int b2 = w.elems[1], b1 = w.elems[0];
                    auto [c1, c2] = t->apply(b2, b1);
                    TensorWord image{{c2, c1}};
                    CHECK(cod.weight(image) == dom.weight(w));
                    // sigma^{-1} = sigma in the other order
                    CHECK(back->apply(c1, c2) == std::pair{b2, b1});
                    // HR = H
                    CHECK(back->energy(c1, c2) == t->energy(b2, b1));
                    for (int i = 0; i <= n; ++i)
                        for (Dir d : {Dir::e, Dir::f}) {
                            auto y = tensor_arrow(dom, w, i, d);
                            auto z = tensor_arrow(cod, image, i, d);
                            REQUIRE(y.has_value() == z.has_value());
                            if (!y)
                                continue;
                            CHECK(t->apply(y->elems[1], y->elems[0]) == std::pair{z->elems[1], z->elems[0]});
                            const int dh = t->energy(y->elems[1], y->elems[0]) - t->energy(b2, b1);
                            if (i != 0) {
                                CHECK(dh == 0);
                            } else if (d == Dir::e) {
                                const bool lb = dom.factor(1).eps(0, b2) > dom.factor(0).phi(0, b1);
                                const bool la = cod.factor(1).eps(0, c1) > cod.factor(0).phi(0, c2);
                                CHECK(dh == (lb && la ? -1 : (!lb && !la ? 1 : 0)));
                            }
                        }
                }
            }
}

TEST_CASE("local energy on rows agrees with the insertion tableau") {
    for (int n = 1; n <= 3; ++n)
        for (int s2 = 1; s2 <= 3; ++s2)
            for (int s1 = 1; s1 <= 3; ++s1) {
                auto t = combinatorial_r(n, {1, s2}, {1, s1});
                auto F2 = FactorCrystal::get(CartanKind::A, n, {1, s2});
                auto F1 = FactorCrystal::get(CartanKind::A, n, {1, s1});
                for (int b2 = 0; b2 < F2->size(); ++b2)
                    for (int b1 = 0; b1 < F1->size(); ++b1) {
                        auto word = written_letters(*F2, b2);
                        auto tail = written_letters(*F1, b1);
                        word.insert(word.end(), tail.begin(), tail.end());
                        CHECK(t->energy(b2, b1) == first_row_length(word) - s1 - s2);
                    }
            }
}

TEST_CASE("energy function examples") {
    Tensor B(parse_shape("A:1;1,1*2"));
    CHECK(energy_EB(B, B.highest()) == 0);
    CHECK(energy_EB(B, letters_word(B, {2, 1})) == -1);
    CHECK(intrinsic_D(B, letters_word(B, {2, 1})) == -1);
    CHECK(coenergy_D(B, letters_word(B, {2, 1})) == 1);
    Tensor one(parse_shape("A:2;1,1"));
    for (const auto& w : all_words(one))
        CHECK(energy_EB(one, w) == 0);
    CHECK_THROWS_AS(EnergyFunction(Tensor(parse_shape("C:2;1,1*2"))), UnsupportedError);
}

TEST_CASE("energy is constant on classical components") {
    for (const char* s : {"A:1;1,1*4", "A:2;1,1*3", "A:2;2,1,1,1,1,2", "A:2;1,2,1,1,2,1"}) {
        Tensor B(parse_shape(s));
        EnergyFunction E(B);
        CHECK(E.energy_EB(B.highest()) == 0);
        for (const auto& w : all_words(B))
            for (int i = 1; i <= B.cartan().rank(); ++i) {
                auto y = tensor_arrow(B, w, i, Dir::f);
                if (y)
                    CHECK(E.energy_EB(*y) == E.energy_EB(w));
            }
    }
}

TEST_CASE("direct sums") {
    Tensor B(parse_shape("A:1;1,1*2"));
    CHECK(direct_sum(B, W({1, 1}), Restriction::classical(), Statistic::coenergy) == QLaurent::monomial(1));
    CHECK(direct_sum(B, W({1, 1}), Restriction::none(), Statistic::coenergy) ==
          QLaurent::constant(1) + QLaurent::monomial(1));
    CHECK(direct_sum(B, W({1, 1}), Restriction::none(), Statistic::energy) ==
          QLaurent::constant(1) + QLaurent::monomial(-1));
    Tensor B4(parse_shape("A:1;1,1*4"));
    for (auto lam : {W({2, 2}), W({3, 1}), W({4, 0})})
        for (auto r : {Restriction::none(), Restriction::classical(), Restriction::at_level(1)})
            CHECK(direct_sum(B4, lam, r, Statistic::coenergy) ==
                  invert_q(direct_sum(B4, lam, r, Statistic::energy)));
}

TEST_CASE("unrestricted sums over single boxes are q-multinomials") {
    for (int n = 1; n <= 2; ++n)
        for (int L = 0; L <= 6; ++L) {
            Tensor B(parse_shape("A:" + std::to_string(n) + (L ? ";1,1*" + std::to_string(L) : "")));
            std::vector<long> lam(static_cast<std::size_t>(n + 1), 0);
            auto rec = [&](auto&& self, std::size_t k, long left) -> void {
                if (k + 1 == lam.size()) {
                    lam[k] = left;
                    std::vector<int> coords(lam.begin(), lam.end());
                    CHECK(direct_sum(B, W(coords), Restriction::none(), Statistic::coenergy) ==
                          qmultinomial(L, lam));
                    return;
                }
                for (long x = 0; x <= left; ++x) {
                    lam[k] = x;
                    self(self, k + 1, left - x);
                }
            };
            rec(rec, 0, L);
        }
}
