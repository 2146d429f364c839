#pragma once

// Root data and Weyl group actions for the classical types A_n and C_n.
//
// Type A weights live in the ambient lattice Z^{n+1}; the shift by multiples
// of e = (1,...,1) that makes them orthogonal to e is dropped, so rho is
// stored as (n, n-1, ..., 1, 0).  Every quantity used downstream only sees
// differences or pairings with vectors summing to zero, where the shift
// cancels.  Type C weights live in Z^n.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qcrystal {

enum class CartanKind { A, C };

std::string to_string(CartanKind kind);

struct Weight {
    std::vector<int> coords;

    Weight() = default;
    explicit Weight(std::vector<int> c) : coords(std::move(c)) {}

    std::size_t size() const { return coords.size(); }
    int operator[](std::size_t i) const { return coords[i]; }
    int& operator[](std::size_t i) { return coords[i]; }

    Weight& operator+=(const Weight& r);
    Weight& operator-=(const Weight& r);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(int k, Weight a);
    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight&, const Weight&) = default;

    std::string to_string() const;
};

long dot(const Weight& a, const Weight& b);

class CartanData {
  public:
    CartanData(CartanKind kind, int rank);

    CartanKind kind() const { return kind_; }
    int rank() const { return rank_; }
    // Length of weight vectors: n+1 for A, n for C.
    int dim() const { return kind_ == CartanKind::A ? rank_ + 1 : rank_; }

    // a in 1..n
    const Weight& simple_root(int a) const { return roots_.at(static_cast<std::size_t>(a - 1)); }
    const Weight& fundamental_weight(int a) const {
        return fundamentals_.at(static_cast<std::size_t>(a - 1));
    }
    const Weight& rho() const { return rho_; }

    // 2 (alpha_a | alpha_b); the form is normalized so long roots have
    // (alpha|alpha) = 2, hence doubling keeps everything integral.
    int doubled_pairing(int a, int b) const;
    // 2 (x | y) for arbitrary weights.
    long doubled_pairing(const Weight& x, const Weight& y) const;
    // t_a = 2 / (alpha_a | alpha_a)
    int t(int a) const;
    // <h_a, alpha_b> = t_a (alpha_a | alpha_b)
    int cartan_matrix(int a, int b) const;
    // <h_a, x> for a weight x
    int coroot_pairing(int a, const Weight& x) const;

    int h_dual() const { return rank_ + 1; }
    int a0() const { return 1; }

    Weight zero_weight() const { return Weight(std::vector<int>(static_cast<std::size_t>(dim()), 0)); }

    // Dominant weights <-> partitions.  A partition has n+1 parts for type A
    // (the last one fixes the overall shift) and n parts for type C.
    bool is_dominant(const Weight& w) const;
    std::vector<int> dynkin_labels(const Weight& w) const;
    // Partition with lambda_{n+1} = 0 (type A) from Dynkin labels.
    Weight from_dynkin_labels(std::span<const int> labels) const;

    // Solve sum_a s_a alpha_a = v; nullopt if v is not in the root lattice.
    std::optional<std::vector<long>> root_coordinates(const Weight& v) const;

  private:
    CartanKind kind_;
    int rank_;
    std::vector<Weight> roots_;
    std::vector<Weight> fundamentals_;
    Weight rho_;
};

// A finite Weyl group element, acting by signed permutations:
// (w x)_k = sign[k] * x[perm[k]].
struct WeylElement {
    std::vector<int> perm;
    std::vector<int> sign;
    std::vector<int> word; // generators r_{word[0]} r_{word[1]} ...

    int parity() const { return (word.size() % 2 == 0) ? 1 : -1; }
    Weight act(const Weight& x) const;
    int determinant() const;
    WeylElement compose(const WeylElement& right) const; // (this o right)
    bool is_identity() const;
    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.perm == b.perm && a.sign == b.sign;
    }
};

WeylElement weyl_identity(const CartanData& data);
WeylElement weyl_generator(const CartanData& data, int i);

// All elements of the finite Weyl group, each once, with a reduced word.
// Throws CapError if rank exceeds max_rank.
std::vector<WeylElement> weyl_enumerate(const CartanData& data, int max_rank = 6);

// Simple reflection r_i, i in 0..n.  r_0 is the affine reflection at the
// given level, acting on rho-shifted weights.
Weight apply_simple_reflection(const CartanData& data, int i, const Weight& v,
                               std::optional<int> level = std::nullopt);

// Affine Weyl group element x -> linear(x) + translation, with the
// translation a multiple of (level + h_dual) times an element of M.
struct AffineWeylElement {
    WeylElement linear;
    Weight translation;
    std::vector<int> word;

    int sign() const { return linear.determinant(); }
    Weight act(const Weight& x) const;
    AffineWeylElement compose_generator(const CartanData& data, int i, int level) const; // this o r_i
};

AffineWeylElement affine_identity(const CartanData& data);

// Translation lattice M: type A {beta in Z^{n+1} : |beta| = 0}, type C 2Z^n.
//
// translation_radius bounds max_k |beta_k| for any beta whose bosonic summand
// can be nonzero when every achievable weight, and the target weight itself,
// has coordinates bounded by weight_bound in absolute value.  It includes one
// guard ring (1 for type A, 2 for type C) that callers assert contributes 0.
int translation_radius(const CartanData& data, int level, int weight_bound);
int translation_guard(const CartanData& data);
bool in_translation_lattice(const CartanData& data, const Weight& beta);

std::vector<Weight> translation_lattice_box(const CartanData& data, int level, int weight_bound);

} // namespace qcrystal
