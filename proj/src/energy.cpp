#include "qcrystal/energy.hpp"

#include "qcrystal/errors.hpp"

#include <deque>
#include <limits>
#include <optional>

namespace qcrystal {

namespace {

constexpr int kUnset = std::numeric_limits<int>::min();

// +-1 or 0 from the local energy rule for e_0 applied to b2 x b1.
int e0_step(const FactorCrystal& F2, const FactorCrystal& F1, int b2, int b1, int c1, int c2) {
    // sigma(b2 x b1) = c1 x c2 with c1 in B1, c2 in B2
    const bool left_before = F2.eps(0, b2) > F1.phi(0, b1);
    const bool left_after = F1.eps(0, c1) > F2.phi(0, c2);
    if (left_before && left_after)
        return -1;
    if (!left_before && !left_after)
        return 1;
    return 0;
}

} // namespace

RMatrixTable build_r_matrix(CartanKind kind, int n, FactorDescriptor B2, FactorDescriptor B1) {
    if (kind != CartanKind::A)
        throw UnsupportedError("combinatorial R-matrix needs 0-arrows, available for type A only");
    // storage index 0 is the right factor
    Tensor domain(TensorShape{kind, n, {B1, B2}});
    Tensor codomain(TensorShape{kind, n, {B2, B1}});
    const auto& F2 = domain.factor(1);
    const auto& F1 = domain.factor(0);

    RMatrixTable t;
    t.rank = n;
    t.left = B2;
    t.right = B1;
    t.left_size = F2.size();
    t.right_size = F1.size();
    const std::size_t total = static_cast<std::size_t>(t.left_size) * static_cast<std::size_t>(t.right_size);
    t.sigma.assign(total, {-1, -1});
    t.H.assign(total, kUnset);

    auto key = [&](const TensorWord& w) { return t.index(w.elems[1], w.elems[0]); };
    auto as_pair = [](const TensorWord& w) { return std::pair{w.elems[1], w.elems[0]}; };

    // parallel breadth-first search for sigma
    TensorWord start = domain.highest();
    t.sigma[key(start)] = as_pair(codomain.highest());
    std::deque<TensorWord> queue{start};
    std::size_t mapped = 1;
    while (!queue.empty()) {
        TensorWord x = queue.front();
        queue.pop_front();
        auto [c1, c2] = t.sigma[key(x)];
        TensorWord image{{c2, c1}};
        for (int i = 0; i <= n; ++i)
            for (Dir d : {Dir::e, Dir::f}) {
                auto y = tensor_arrow(domain, x, i, d);
                auto z = tensor_arrow(codomain, image, i, d);
                if (y.has_value() != z.has_value())
                    throw ConsistencyError("R-matrix search: arrow " + std::to_string(i) +
                                           " defined on one side only at " + domain.to_string(x));
                if (!y)
                    continue;
                auto& slot = t.sigma[key(*y)];
                if (slot.first < 0) {
                    slot = as_pair(*z);
                    ++mapped;
                    queue.push_back(*y);
                } else if (slot != as_pair(*z)) {
                    throw ConsistencyError("R-matrix search: frontier disagreement at " + domain.to_string(*y));
                }
            }
    }
    if (mapped != total)
        throw ConsistencyError("R-matrix search: affine crystal is not connected");
    {
        std::vector<char> hit(total, 0);
        for (const auto& [c1, c2] : t.sigma) {
            const std::size_t k = static_cast<std::size_t>(c2) * static_cast<std::size_t>(t.right_size) +
                                  static_cast<std::size_t>(c1);
            if (hit[k]++)
                throw ConsistencyError("R-matrix search: sigma is not injective");
        }
    }

    // propagate H along every arrow from the normalized root
    auto step_at = [&](const TensorWord& x) {
        auto [c1, c2] = t.sigma[key(x)];
        return e0_step(F2, F1, x.elems[1], x.elems[0], c1, c2);
    };
    t.H[key(start)] = 0;
    queue.assign(1, start);
    while (!queue.empty()) {
        TensorWord x = queue.front();
        queue.pop_front();
        const int hx = t.H[key(x)];
        for (int i = 0; i <= n; ++i)
            for (Dir d : {Dir::e, Dir::f}) {
                auto y = tensor_arrow(domain, x, i, d);
                if (!y)
                    continue;
                int hy;
                if (d == Dir::e)
                    hy = hx + (i == 0 ? step_at(x) : 0);
                else
                    hy = hx - (i == 0 ? step_at(*y) : 0);
                int& slot = t.H[key(*y)];
                if (slot == kUnset) {
                    slot = hy;
                    queue.push_back(*y);
                } else if (slot != hy) {
                    throw ConsistencyError("local energy conflict at " + domain.to_string(*y));
                }
            }
    }
    // every 0-arrow satisfies the rule
    for (int b2 = 0; b2 < t.left_size; ++b2)
        for (int b1 = 0; b1 < t.right_size; ++b1) {
            TensorWord x{{b1, b2}};
            auto y = tensor_arrow(domain, x, 0, Dir::e);
            if (y && t.H[key(*y)] != t.H[key(x)] + step_at(x))
                throw ConsistencyError("local energy rule violated after propagation");
        }
    return t;
}

RMatrixCache& RMatrixCache::global() {
    static RMatrixCache cache;
    return cache;
}

std::shared_ptr<const RMatrixTable> RMatrixCache::get(int n, FactorDescriptor B2, FactorDescriptor B1) {
    const auto k = std::make_tuple(n, B2.r, B2.s, B1.r, B1.s);
    {
        std::lock_guard lock(mu_);
        auto it = tables_.find(k);
        if (it != tables_.end())
            return it->second;
    }
    auto made = std::make_shared<const RMatrixTable>(build_r_matrix(CartanKind::A, n, B2, B1));
    std::lock_guard lock(mu_);
    // a concurrent builder may have won; keep the first table
    auto [it, fresh] = tables_.emplace(k, made);
    return it->second;
}

std::shared_ptr<const RMatrixTable> combinatorial_r(int n, FactorDescriptor B2, FactorDescriptor B1,
                                                    RMatrixCache& cache) {
    return cache.get(n, B2, B1);
}

EnergyFunction::EnergyFunction(const Tensor& B, RMatrixCache& cache) : B_(B) {
    if (!B.affine())
        throw UnsupportedError("energy needs 0-arrows, available for type A only");
    std::vector<FactorDescriptor> kinds;
    for (const auto& f : B.shape().factors)
        if (std::find(kinds.begin(), kinds.end(), f) == kinds.end())
            kinds.push_back(f);
    for (const auto& a : kinds)
        for (const auto& b : kinds)
            tables_[{a, b}] = cache.get(B.cartan().rank(), a, b);
}

const RMatrixTable& EnergyFunction::table(FactorDescriptor left, FactorDescriptor right) const {
    return *tables_.at({left, right});
}

int EnergyFunction::energy_EB(const TensorWord& w) const {
    const std::size_t L = B_.length();
    const auto& desc = B_.shape().factors;
    int total = 0;
    std::vector<int> cur;
    std::vector<FactorDescriptor> cur_desc;
    // positions are 1-based in the formula; storage index p-1
    for (std::size_t j = 2; j <= L; ++j) {
        cur = w.elems;
        cur_desc = desc;
        for (std::size_t i = j - 1; i >= 1; --i) {
            const std::size_t right = i - 1, left = i;
            const auto& t = table(cur_desc[left], cur_desc[right]);
            total += t.energy(cur[left], cur[right]);
            if (i == 1)
                break;
            // sigma_i moves the factor that started at position j one step right
            auto [c1, c2] = t.apply(cur[left], cur[right]);
            cur[left] = c1;
            cur[right] = c2;
            std::swap(cur_desc[left], cur_desc[right]);
        }
    }
    return total;
}

int energy_EB(const Tensor& B, const TensorWord& w, RMatrixCache& cache) {
    return EnergyFunction(B, cache).energy_EB(w);
}

int intrinsic_D(const Tensor& B, const TensorWord& w, RMatrixCache& cache) {
    return EnergyFunction(B, cache).intrinsic_D(w);
}

int coenergy_D(const Tensor& B, const TensorWord& w, RMatrixCache& cache) {
    return EnergyFunction(B, cache).coenergy_D(w);
}

QLaurent direct_sum(const Tensor& B, const Weight& Lambda, Restriction restriction, Statistic stat,
                    std::size_t cap) {
    EnergyFunction E(B);
    const auto paths = enumerate_paths(B, Lambda, restriction, cap);
    std::map<long, long> counts;
    for (const auto& w : paths) {
        const int d = E.intrinsic_D(w);
        counts[stat == Statistic::energy ? d : -d] += 1;
    }
    QLaurent out;
    for (auto [e, c] : counts)
        out.add_term(e, c);
    return out;
}

} // namespace qcrystal
