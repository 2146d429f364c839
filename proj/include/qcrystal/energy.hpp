#pragma once

// Combinatorial R-matrices, local and intrinsic energies, and configuration
// sums by direct path enumeration.  Type A only: the construction needs the
// 0-arrows of the factors.

#include "qcrystal/crystal.hpp"
#include "qcrystal/qpoly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace qcrystal {

// sigma : B2 x B1 -> B1 x B2 and H : B2 x B1 -> Z, normalized by
// H(u(B2) x u(B1)) = 0.  Pairs are indexed b2 * |B1| + b1 with b2, b1 the
// element indices of the factor crystals.
struct RMatrixTable {
    int rank = 1;
    FactorDescriptor left;  // B2
    FactorDescriptor right; // B1
    int left_size = 0;
    int right_size = 0;
    std::vector<std::pair<int, int>> sigma; // (b1', b2') with b1' in B1, b2' in B2
    std::vector<int> H;

    std::size_t index(int b2, int b1) const {
        return static_cast<std::size_t>(b2) * static_cast<std::size_t>(right_size) + static_cast<std::size_t>(b1);
    }
    std::pair<int, int> apply(int b2, int b1) const { return sigma[index(b2, b1)]; }
    int energy(int b2, int b1) const { return H[index(b2, b1)]; }
};

// Builds the table (uncached).  Throws ConsistencyError when the affine
// graphs fail to match or H propagation meets a conflict, UnsupportedError
// for type C.
RMatrixTable build_r_matrix(CartanKind kind, int n, FactorDescriptor B2, FactorDescriptor B1);

// Write-once table store keyed by (n, B2, B1); safe to share across threads.
class RMatrixCache {
  public:
    std::shared_ptr<const RMatrixTable> get(int n, FactorDescriptor B2, FactorDescriptor B1);
    static RMatrixCache& global();

  private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int, int, int>, std::shared_ptr<const RMatrixTable>> tables_;
};

std::shared_ptr<const RMatrixTable> combinatorial_r(int n, FactorDescriptor B2, FactorDescriptor B1,
                                                    RMatrixCache& cache = RMatrixCache::global());

// E_B, D_B and the coenergy -D_B for words of one tensor product.  Each
// supported factor is a single classical component, so D_j = 0 and D_B = E_B.
class EnergyFunction {
  public:
    explicit EnergyFunction(const Tensor& B, RMatrixCache& cache = RMatrixCache::global());

    int energy_EB(const TensorWord& w) const;
    int intrinsic_D(const TensorWord& w) const { return energy_EB(w); }
    int coenergy_D(const TensorWord& w) const { return -intrinsic_D(w); }

  private:
    const RMatrixTable& table(FactorDescriptor left, FactorDescriptor right) const;

    const Tensor& B_;
    std::map<std::pair<FactorDescriptor, FactorDescriptor>, std::shared_ptr<const RMatrixTable>> tables_;
};

int energy_EB(const Tensor& B, const TensorWord& w, RMatrixCache& cache = RMatrixCache::global());
int intrinsic_D(const Tensor& B, const TensorWord& w, RMatrixCache& cache = RMatrixCache::global());
int coenergy_D(const Tensor& B, const TensorWord& w, RMatrixCache& cache = RMatrixCache::global());

enum class Statistic { energy, coenergy };

// sum over the path set of q^{D} or q^{-D}.
QLaurent direct_sum(const Tensor& B, const Weight& Lambda, Restriction restriction, Statistic stat,
                    std::size_t cap = kDefaultVertexCap);

} // namespace qcrystal
