#pragma once

// Fermionic side: rigged configurations for types A_n and C_n, vacancy
// numbers, the cc statistic, the complementation theta, and the closed
// q-binomial forms (classical and level-restricted).
//
// Type C configurations keep nu^{(n)} unhalved: its parts are even and
// P_i^{(n)} is read at the actual part sizes.  The closed forms use the
// halved index m_i^{(n)} = m_{2i}(nu^{(n)}).

#include "qcrystal/cartan.hpp"
#include "qcrystal/crystal.hpp"
#include "qcrystal/qpoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcrystal {

// L_i^{(a)}: number of factors B^{a,i}, keyed (a, i).
using Multiplicities = std::map<std::pair<int, int>, int>;

// Drops the trivial type A factors B^{n+1,s} (their weight is s*(1,...,1))
// and returns the remaining multiplicities with Lambda shifted accordingly.
std::pair<Multiplicities, Weight> fermionic_input(const TensorShape& shape, const Weight& Lambda);

using Partition = std::vector<int>; // weakly decreasing, no zero parts

// Q_i(mu): boxes in the first i columns.
long Q(int i, const Partition& mu);

struct RiggedConfiguration {
    CartanKind kind = CartanKind::A;
    int rank = 1;
    std::vector<Partition> nu;                           // nu[a-1]
    std::map<std::pair<int, int>, std::vector<int>> riggings; // (a,i) -> m labels, weakly decreasing
    std::map<std::pair<int, int>, long> vacancy;               // P_i^{(a)} where m_i^{(a)} > 0

    int multiplicity(int a, int i) const;
    std::string to_json() const;
    static RiggedConfiguration from_json(const std::string& text, CartanKind kind);
    friend bool operator==(const RiggedConfiguration& x, const RiggedConfiguration& y) {
        return x.kind == y.kind && x.nu == y.nu && x.riggings == y.riggings;
    }
};

// P_i^{(a)}(nu) for types A and C.  Type C at a = n requires i even or an
// even L_1^{(n)}; otherwise the half-integral value is rejected.
long vacancy_number(CartanKind kind, int n, const Multiplicities& L, const std::vector<Partition>& nu, int a,
                    int i);

// Target sizes |nu^{(a)}|; nullopt if some size is negative (or, for type
// C, |nu^{(n)}| is odd) or the weight is not in the right coset.
std::optional<std::vector<long>> configuration_sizes(CartanKind kind, int n, const Multiplicities& L,
                                                     const Weight& lambda);

// All rigged configurations.  max_part bounds the parts of every nu^{(a)}
// (used by the level restriction).  Throws CapError past `cap` objects.
std::vector<RiggedConfiguration> enumerate_rc(CartanKind kind, int n, const Multiplicities& L,
                                              const Weight& lambda, std::optional<int> max_part = std::nullopt,
                                              std::size_t cap = kDefaultVertexCap);

RiggedConfiguration theta(const RiggedConfiguration& rc);
// cc(nu) + sum |J|, type dependent.
long cc_stat(const RiggedConfiguration& rc);
long cc_of_nu(CartanKind kind, const std::vector<Partition>& nu);

// Sum over RC of q^{cc(theta(rc))}.
QLaurent rc_generating_function(CartanKind kind, int n, const Multiplicities& L, const Weight& lambda,
                                std::size_t cap = kDefaultVertexCap);

// The generic q-binomial sum over {m_i^{(a)}} with vacancy p and the
// quadratic form cc, from the Cartan data alone.
QLaurent closed_form_F(const CartanData& data, const Multiplicities& L, const Weight& Lambda);
// Level version at Lambda = 0: the sum runs over H^l and requires every
// p_i^{(a)} on H^l to be nonnegative.
QLaurent closed_form_F_level(const CartanData& data, const Multiplicities& L, int level);

// Column-strict tableaux given by column lengths (weakly decreasing) over
// {1..alphabet}.  Entry t_{j,a} is columns[a-1][j-1].
struct CSTTableau {
    std::vector<std::vector<int>> columns;
    int entry(int j, int a) const { return columns[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(j - 1)]; }
};
std::vector<CSTTableau> cst_enumerate(const std::vector<int>& column_lengths, int alphabet,
                                      std::size_t cap = 5000);

enum class LevelMode { rc_sum, closed_form };

// Largest |CST| handled by inclusion-exclusion.
constexpr std::size_t kMaxInclusionExclusion = 20;

QLaurent level_restricted_A(const Multiplicities& L, int n, const Weight& lambda, int level, LevelMode mode,
                            std::size_t cap = kDefaultVertexCap);

// How the closed type C form reads f^{(n)} at the halved index i: at the
// actual part size 2i (matches the configuration sum) or literally at i.
enum class HalvedIndex { doubled, literal };

QLaurent level_restricted_C(const Multiplicities& L, int n, const Weight& lambda, int level, LevelMode mode,
                            HalvedIndex index = HalvedIndex::doubled, std::size_t cap = kDefaultVertexCap);

} // namespace qcrystal
