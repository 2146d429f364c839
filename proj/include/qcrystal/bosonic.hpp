#pragma once

// Supernomials and the alternating (Weyl and affine Weyl) sums for
// classically and level-restricted configuration sums.  All outputs are
// graded by coenergy.

#include "qcrystal/cartan.hpp"
#include "qcrystal/crystal.hpp"
#include "qcrystal/qpoly.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace qcrystal {

// Columns B^{mu_L,1} x ... x B^{mu_1,1} of type A_n with n = lambda.size()-1.
QLaurent supernomial_A_columns(std::span<const int> mu, std::span<const int> lambda);
// Rows B^{1,mu_L} x ... x B^{1,mu_1}.
QLaurent supernomial_A_rows(std::span<const int> mu, std::span<const int> lambda);
// (B^{1,1})^{x L} of type C_n.
QLaurent supernomial_C_boxes(int L, int n, std::span<const int> lambda);

enum class SupernomialSource { multinomial, columns, rows, c_boxes, direct };
std::string to_string(SupernomialSource s);

// S(B, mu) for one tensor product, memoized per weight.  Picks a closed
// formula when the shape allows one and falls back to path enumeration for
// mixed type A shapes.
class Supernomial {
  public:
    explicit Supernomial(const Tensor& B, std::size_t cap = kDefaultVertexCap);
    // Force a source (e.g. direct, to cross-check a formula).
    Supernomial(const Tensor& B, SupernomialSource source, std::size_t cap = kDefaultVertexCap);

    SupernomialSource source() const { return source_; }
    const QLaurent& operator()(const Weight& mu);
    // Unmemoized; safe to call concurrently.
    QLaurent evaluate(const Weight& mu) const;

  private:

    const Tensor& B_;
    SupernomialSource source_;
    std::size_t cap_;
    std::vector<int> mu_;
    std::map<Weight, QLaurent> memo_;
};

SupernomialSource default_source(const Tensor& B);

QLaurent bosonic_classical(const Tensor& B, const Weight& Lambda, std::size_t cap = kDefaultVertexCap);
// Throws ConsistencyError if an exponent is non-integral or the guard ring
// of the translation box contributes.
QLaurent bosonic_level(const Tensor& B, const Weight& Lambda, int level, std::size_t cap = kDefaultVertexCap);

struct InvolutionReport {
    std::size_t set_size = 0;    // |S|
    std::size_t fixed_points = 0;
    std::size_t expected_fixed = 0; // |P'| or |P^l|
    bool fixed_points_match = true;
    bool involution = true;
    bool sign_reversing = true;
    bool stays_in_set = true;
    bool v_property = true;
    // D(b) plus the translation exponent agrees on paired elements; only
    // checked where an energy function exists (type A).
    bool weight_preserving = true;
    bool weight_checked = false;
    std::vector<std::string> findings;

    bool ok() const {
        return fixed_points_match && involution && sign_reversing && stays_in_set && v_property &&
               weight_preserving;
    }
};

// Builds S, applies Phi through the function v and reports.  Restriction
// must be classical or level (type A).
InvolutionReport involution_phi(const Tensor& B, const Weight& Lambda, Restriction mode,
                                std::size_t cap = kDefaultVertexCap);

} // namespace qcrystal
