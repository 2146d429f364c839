#pragma once

// Crystals of types A_n and C_n built from the letter crystal B(Lambda_1).
//
// Tensor products are written B_L x ... x B_1 and the factor B_1 is the
// RIGHTMOST one.  All sequences in this library are stored with index 0
// holding b_1, so the storage order is the reverse of the written order.
// The tensor rule acts on the left factor b of b x Y when
// eps_i(b) >= phi_i(Y) (for f) or eps_i(b) > phi_i(Y) (for e).

#include "qcrystal/cartan.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcrystal {

// Type A: 1..n+1.  Type C: k or -k (the barred letter), 1 <= k <= n.
using Letter = int;

enum class Dir { e, f };

constexpr std::size_t kDefaultVertexCap = 2'000'000;

std::vector<Letter> alphabet(CartanKind kind, int n);
// Table 1 arrows on B(Lambda_1), i in 1..n.
std::optional<Letter> letter_arrow(CartanKind kind, int n, int i, Letter b, Dir dir);
void add_letter_weight(CartanKind kind, Letter b, Weight& w);
std::string letter_to_string(CartanKind kind, Letter b);

// Kirillov-Reshetikhin label B^{r,s}.
struct FactorDescriptor {
    int r = 1;
    int s = 1;
    friend bool operator==(const FactorDescriptor&, const FactorDescriptor&) = default;
    friend auto operator<=>(const FactorDescriptor&, const FactorDescriptor&) = default;
};

// A finite crystal realized inside B(Lambda_1)^{x k}: B^{1,1}, B^{r,1}
// (columns) and B^{1,s} (rows) for type A, B^{1,1} for type C.  Elements are
// small integers; index highest() is the classical highest weight element u.
// Type A factors also carry 0-arrows defined by promotion.
class FactorCrystal {
  public:
    // Cached; throws UnsupportedError for other (kind, r, s).
    static std::shared_ptr<const FactorCrystal> get(CartanKind kind, int n, FactorDescriptor d);

    CartanKind kind() const { return kind_; }
    int rank() const { return rank_; }
    FactorDescriptor descriptor() const { return desc_; }
    bool affine() const { return kind_ == CartanKind::A; }
    int min_color() const { return affine() ? 0 : 1; }

    int size() const { return static_cast<int>(words_.size()); }
    int highest() const { return 0; }
    // Letters of the reading word, index 0 rightmost.
    const std::vector<Letter>& letters(int x) const { return words_[static_cast<std::size_t>(x)]; }
    const Weight& weight(int x) const { return weights_[static_cast<std::size_t>(x)]; }

    // -1 when the arrow is undefined.
    int arrow(int i, int x, Dir d) const {
        const auto& t = d == Dir::f ? f_ : e_;
        return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
    }
    int eps(int i, int x) const { return eps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]; }
    int phi(int i, int x) const { return phi_[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]; }

    std::optional<int> find(const std::vector<Letter>& letters) const;
    // Cyclic shift of letters i -> i+1 (n+1 -> 1), re-sorted; type A only.
    int promotion(int x) const;
    int promotion_inverse(int x) const;
    // min over elements of sum_{i in I} eps_i; type A only.
    int level() const;

    std::string to_string(int x) const;

    FactorCrystal(CartanKind kind, int n, FactorDescriptor d);

  private:
    std::vector<Letter> canonical(std::vector<Letter> w) const;
    void fill_stats();

    CartanKind kind_;
    int rank_;
    FactorDescriptor desc_;
    std::vector<std::vector<Letter>> words_;
    std::map<std::vector<Letter>, int> index_;
    std::vector<Weight> weights_;
    // indexed [color][element]; color 0 is empty for type C
    std::vector<std::vector<int>> f_, e_, eps_, phi_;
};

struct TensorShape {
    CartanKind kind = CartanKind::A;
    int rank = 1;
    std::vector<FactorDescriptor> factors; // factors[0] is B_1

    std::size_t length() const { return factors.size(); }
    // Total number of boxes sum r*s.
    int boxes() const;
    // Back to grammar form, e.g. "A:2;1,1*4".
    std::string to_string() const;
    friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

// Grammar: `A:<n>` or `C:<n>`, then `;` and comma-separated factors
// `r,s[*mult]`, listed left to right as written in B_L x ... x B_1.
// An empty factor list gives L = 0.
TensorShape parse_shape(const std::string& text);
// Comma-separated integers; dimension is checked against the shape.
Weight parse_weight(const std::string& text, const TensorShape& shape);

// b_L x ... x b_1, elems[0] = b_1 as an index into factor 1's crystal.
struct TensorWord {
    std::vector<int> elems;
    friend bool operator==(const TensorWord&, const TensorWord&) = default;
    friend auto operator<=>(const TensorWord&, const TensorWord&) = default;
};

class Tensor {
  public:
    explicit Tensor(TensorShape shape);

    const TensorShape& shape() const { return shape_; }
    const CartanData& cartan() const { return cartan_; }
    std::size_t length() const { return factors_.size(); }
    const FactorCrystal& factor(std::size_t j) const { return *factors_[j]; }
    bool affine() const { return shape_.kind == CartanKind::A; }
    int min_color() const { return affine() ? 0 : 1; }

    // u(B) = u_L x ... x u_1
    TensorWord highest() const;
    Weight weight(const TensorWord& w) const;
    std::string to_string(const TensorWord& w) const;
    // The image in B(Lambda_1)^{x M}; index 0 is the rightmost letter.
    std::vector<Letter> flatten(const TensorWord& w) const;
    // Number of elements, saturating at UINT64_MAX.
    std::uint64_t cardinality() const;

  private:
    TensorShape shape_;
    CartanData cartan_;
    std::vector<std::shared_ptr<const FactorCrystal>> factors_;
};

std::optional<TensorWord> tensor_arrow(const Tensor& B, const TensorWord& w, int i, Dir dir);
// (eps_i, phi_i)
std::pair<int, int> string_stats(const Tensor& B, const TensorWord& w, int i);
TensorWord reflection_s(const Tensor& B, const TensorWord& w, int i);
// The 0-arrows; throws UnsupportedError for type C.
std::optional<TensorWord> affine_arrow_A(const Tensor& B, const TensorWord& w, Dir dir);
bool is_classical_highest(const Tensor& B, const TensorWord& w);

// Position (storage index) where color i acts in a tensor product of
// crystals with per-position statistics eps(k), phi(k); -1 if the result is
// empty.  Shared by tensor words and letter words.
template <class Eps, class Phi>
int acting_position(std::size_t len, Dir dir, Eps eps, Phi phi);

// A connected component of B(Lambda_1)^{x k} under the classical arrows.
struct CrystalGraph {
    CartanKind kind = CartanKind::A;
    int rank = 1;
    std::vector<std::vector<Letter>> vertices; // letter words, index 0 rightmost
    std::map<std::vector<Letter>, int> index;
    std::vector<std::vector<int>> f; // [i-1][vertex] -> vertex or -1
    std::vector<std::vector<int>> e;
    int seed = 0;

    std::size_t size() const { return vertices.size(); }
};

// Breadth-first closure under e_i, f_i, i in J; seed given in storage order.
CrystalGraph build_component(CartanKind kind, int n, const std::vector<Letter>& seed,
                             std::size_t cap = kDefaultVertexCap);

enum class RestrictionKind { none, classical, level };

struct Restriction {
    RestrictionKind kind = RestrictionKind::none;
    int level = 0;

    static Restriction none() { return {}; }
    static Restriction classical() { return {RestrictionKind::classical, 0}; }
    static Restriction at_level(int l) { return {RestrictionKind::level, l}; }
};

// P(B,Lambda), P'(B,Lambda) or P^l(B,Lambda) in lexicographic order of
// the storage vectors.  Throws CapError when the search visits more than
// `cap` partial words, UnsupportedError for level mode in type C.
std::vector<TensorWord> enumerate_paths(const Tensor& B, const Weight& Lambda, Restriction restriction,
                                        std::size_t cap = kDefaultVertexCap);

// Every element of B (guarded by cap).
std::vector<TensorWord> all_words(const Tensor& B, std::size_t cap = kDefaultVertexCap);

// min over b of sum_{i in I} eps_i(b); type A only.
int crystal_level(const Tensor& B, std::size_t cap = kDefaultVertexCap);

template <class Eps, class Phi>
int acting_position(std::size_t len, Dir dir, Eps eps, Phi phi) {
    // phi of the suffix Y_k = b_k x ... x b_1 (storage 0..k-1)
    thread_local std::vector<int> suffix_phi;
    suffix_phi.assign(len + 1, 0);
    for (std::size_t k = 0; k < len; ++k) {
        const int e = eps(k), p = phi(k);
        suffix_phi[k + 1] = std::max(p, suffix_phi[k] + p - e);
    }
    for (std::size_t k = len; k-- > 0;) {
        const int e = eps(k);
        if (dir == Dir::f) {
            if (e >= suffix_phi[k])
                return phi(k) > 0 ? static_cast<int>(k) : -1;
        } else if (e > suffix_phi[k]) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

} // namespace qcrystal
