#include "qcrystal/fermionic.hpp"

#include "qcrystal/errors.hpp"
#include "qcrystal/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>

namespace qcrystal {

namespace {

using Key = std::pair<int, int>;

// Partitions of `total` with parts <= max_part (largest first).
std::vector<Partition> partitions_of(long total, int max_part) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(long, int)> rec = [&](long left, int bound) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = static_cast<int>(std::min<long>(bound, left)); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    if (total >= 0)
        rec(total, max_part);
    return out;
}

int column(const Partition& mu, int i) {
    int c = 0;
    for (int p : mu)
        c += p >= i;
    return c;
}

std::map<int, int> multiplicities_of(const Partition& mu) {
    std::map<int, int> m;
    for (int p : mu)
        ++m[p];
    return m;
}

int max_part(const std::vector<Partition>& nu) {
    int m = 0;
    for (const auto& p : nu)
        if (!p.empty())
            m = std::max(m, p.front());
    return m;
}

const Partition kEmpty{};

const Partition& at(const std::vector<Partition>& nu, int a) {
    if (a < 1 || a > static_cast<int>(nu.size()))
        return kEmpty;
    return nu[static_cast<std::size_t>(a - 1)];
}

void check_type_c_input(const Multiplicities& L, int n) {
    for (const auto& [k, v] : L) {
        if (k.first < 1 || k.first > n || k.second < 1 || v < 0)
            throw DomainError("bad multiplicity key");
        if (k.second != 1)
            throw UnsupportedError("type C configurations are available for B^{a,1} only");
    }
}

void check_input(CartanKind kind, const Multiplicities& L, int n) {
    if (kind == CartanKind::C) {
        check_type_c_input(L, n);
        return;
    }
    for (const auto& [k, v] : L)
        if (k.first < 1 || k.first > n || k.second < 1 || v < 0)
            throw DomainError("bad multiplicity key (" + std::to_string(k.first) + "," +
                              std::to_string(k.second) + ")");
}

// Every multiset of m labels in [0, P], weakly decreasing.
void for_each_rigging(int m, long P, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> cur(static_cast<std::size_t>(m), 0);
    std::function<void(int, long)> rec = [&](int k, long bound) {
        if (k == m) {
            f(cur);
            return;
        }
        for (long x = bound; x >= 0; --x) {
            cur[static_cast<std::size_t>(k)] = static_cast<int>(x);
            rec(k + 1, x);
        }
    };
    rec(0, P);
}

} // namespace

long Q(int i, const Partition& mu) {
    long s = 0;
    for (int p : mu)
        s += std::min(i, p);
    return s;
}

std::pair<Multiplicities, Weight> fermionic_input(const TensorShape& shape, const Weight& Lambda) {
    Multiplicities L;
    Weight lam = Lambda;
    for (const auto& f : shape.factors) {
        if (shape.kind == CartanKind::A && f.r == shape.rank + 1) {
            for (auto& x : lam.coords)
                x -= f.s;
            continue;
        }
        ++L[{f.r, f.s}];
    }
    return {L, lam};
}

int RiggedConfiguration::multiplicity(int a, int i) const {
    int c = 0;
    for (int p : at(nu, a))
        c += p == i;
    return c;
}

std::string RiggedConfiguration::to_json() const {
    nlohmann::ordered_json j;
    j["nu"] = nlohmann::json::array();
    for (const auto& p : nu)
        j["nu"].push_back(p);
    j["riggings"] = nlohmann::ordered_json::object();
    for (const auto& [k, labels] : riggings)
        j["riggings"][std::to_string(k.first) + "," + std::to_string(k.second)] = labels;
    return j.dump();
}

RiggedConfiguration RiggedConfiguration::from_json(const std::string& text, CartanKind kind) {
    RiggedConfiguration rc;
    rc.kind = kind;
    try {
        auto j = nlohmann::json::parse(text);
        for (const auto& p : j.at("nu"))
            rc.nu.push_back(p.get<Partition>());
        rc.rank = static_cast<int>(rc.nu.size());
        for (const auto& [k, v] : j.at("riggings").items()) {
            const auto comma = k.find(',');
            if (comma == std::string::npos)
                throw ParseError("rigging key must be \"a,i\"");
            rc.riggings[{std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))}] =
                v.get<std::vector<int>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("rigged configuration JSON: ") + e.what());
    }
    return rc;
}

long vacancy_number(CartanKind kind, int n, const Multiplicities& L, const std::vector<Partition>& nu, int a,
                    int i) {
    if (kind == CartanKind::A || a < n) {
        long p = Q(i, at(nu, a - 1)) - 2 * Q(i, at(nu, a)) + Q(i, at(nu, a + 1));
        for (const auto& [k, v] : L)
            if (k.first == a)
                p += static_cast<long>(v) * std::min(i, k.second);
        return p;
    }
    long twice = 2 * (Q(i, at(nu, n - 1)) - Q(i, at(nu, n)));
    for (const auto& [k, v] : L)
        if (k.first == n)
            twice += static_cast<long>(v) * std::min(i, 2 * k.second);
    if (twice % 2 != 0)
        throw DomainError("half-integral type C vacancy number at odd i");
    return twice / 2;
}

std::optional<std::vector<long>> configuration_sizes(CartanKind kind, int n, const Multiplicities& L,
                                                     const Weight& lambda) {
    const int dim = kind == CartanKind::A ? n + 1 : n;
    if (static_cast<int>(lambda.size()) != dim)
        throw DomainError("weight has the wrong dimension");
    check_input(kind, L, n);
    if (kind == CartanKind::A) {
        long boxes = 0;
        for (const auto& [k, v] : L)
            boxes += static_cast<long>(k.first) * k.second * v;
        if (std::accumulate(lambda.coords.begin(), lambda.coords.end(), 0L) != boxes)
            return std::nullopt;
    }
    std::vector<long> s(static_cast<std::size_t>(n), 0);
    long prefix = 0;
    for (int a = 1; a <= n; ++a) {
        prefix += lambda[static_cast<std::size_t>(a - 1)];
        long size = -prefix;
        for (const auto& [k, v] : L)
            size += static_cast<long>(k.second) * v * std::min(a, k.first);
        if (size < 0)
            return std::nullopt;
        s[static_cast<std::size_t>(a - 1)] = size;
    }
    if (kind == CartanKind::C && s.back() % 2 != 0)
        return std::nullopt;
    return s;
}

std::vector<RiggedConfiguration> enumerate_rc(CartanKind kind, int n, const Multiplicities& L,
                                              const Weight& lambda, std::optional<int> max_part_bound,
                                              std::size_t cap) {
    std::vector<RiggedConfiguration> out;
    auto sizes = configuration_sizes(kind, n, L, lambda);
    if (!sizes)
        return out;
    std::vector<std::vector<Partition>> choices;
    for (int a = 1; a <= n; ++a) {
        const long s = (*sizes)[static_cast<std::size_t>(a - 1)];
        const int bound = max_part_bound.value_or(static_cast<int>(std::max<long>(s, 1)));
        if (kind == CartanKind::C && a == n) {
            auto halves = partitions_of(s / 2, bound / 2);
            for (auto& p : halves)
                for (int& x : p)
                    x *= 2;
            choices.push_back(std::move(halves));
        } else {
            choices.push_back(partitions_of(s, bound));
        }
    }
    // Shape classes first, then the riggings of each class independently.
    struct ShapeClass {
        RiggedConfiguration rc; // riggings empty
        std::vector<std::pair<Key, int>> slots;
    };
    std::vector<ShapeClass> classes;
    std::vector<Partition> nu(static_cast<std::size_t>(n));
    std::function<void(int)> pick = [&](int a) {
        if (a > n) {
            ShapeClass sc;
            sc.rc.kind = kind;
            sc.rc.rank = n;
            sc.rc.nu = nu;
            for (int b = 1; b <= n; ++b)
                for (auto [i, m] : multiplicities_of(nu[static_cast<std::size_t>(b - 1)])) {
                    const long P = vacancy_number(kind, n, L, nu, b, i);
                    if (P < 0)
                        return;
                    sc.rc.vacancy[{b, i}] = P;
                    sc.slots.push_back({{b, i}, m});
                }
            classes.push_back(std::move(sc));
            return;
        }
        for (const auto& p : choices[static_cast<std::size_t>(a - 1)]) {
            nu[static_cast<std::size_t>(a - 1)] = p;
            pick(a + 1);
        }
    };
    pick(1);

    const auto per_class = parallel_map(classes, [cap](const ShapeClass& sc) {
        std::vector<RiggedConfiguration> found;
        RiggedConfiguration rc = sc.rc;
        std::function<void(std::size_t)> fill = [&](std::size_t k) {
            if (k == sc.slots.size()) {
                if (found.size() >= cap)
                    throw CapError("rigged configuration enumeration exceeded cap " + std::to_string(cap));
                found.push_back(rc);
                return;
            }
            const auto [key, m] = sc.slots[k];
            for_each_rigging(m, rc.vacancy.at(key), [&](const std::vector<int>& labels) {
                rc.riggings[key] = labels;
                fill(k + 1);
            });
        };
        fill(0);
        return found;
    });
    for (const auto& part : per_class) {
        if (out.size() + part.size() > cap)
            throw CapError("rigged configuration enumeration exceeded cap " + std::to_string(cap));
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

RiggedConfiguration theta(const RiggedConfiguration& rc) {
    RiggedConfiguration out = rc;
    for (auto& [key, labels] : out.riggings) {
        const long P = rc.vacancy.at(key);
        std::vector<int> comp(labels.size());
        for (std::size_t k = 0; k < labels.size(); ++k)
            comp[k] = static_cast<int>(P - labels[labels.size() - 1 - k]);
        labels = std::move(comp);
    }
    return out;
}

long cc_of_nu(CartanKind kind, const std::vector<Partition>& nu) {
    const int n = static_cast<int>(nu.size());
    const int top = max_part(nu);
    long twice = 0;
    for (int i = 1; i <= top; ++i)
        for (int a = 1; a <= n; ++a) {
            const long al = column(at(nu, a), i);
            if (kind == CartanKind::C && a == n)
                twice += al * al;
            else
                twice += 2 * al * (al - column(at(nu, a + 1), i));
        }
    if (twice % 2 != 0)
        throw ConsistencyError("non-integral type C charge; nu^{(n)} must have even parts");
    return twice / 2;
}

long cc_stat(const RiggedConfiguration& rc) {
    long c = cc_of_nu(rc.kind, rc.nu);
    for (const auto& [k, labels] : rc.riggings)
        for (int x : labels)
            c += x;
    return c;
}

QLaurent rc_generating_function(CartanKind kind, int n, const Multiplicities& L, const Weight& lambda,
                                std::size_t cap) {
    std::map<long, long> counts;
    for (const auto& rc : enumerate_rc(kind, n, L, lambda, std::nullopt, cap))
        ++counts[cc_stat(theta(rc))];
    QLaurent out;
    for (auto [e, c] : counts)
        out.add_term(e, c);
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

// One choice of {m_i^{(a)}} with its vacancies p_i^{(a)} and charge.
struct Config {
    std::vector<std::vector<int>> m;  // m[a-1][i], i >= 1
    std::vector<std::vector<long>> p; // p[a-1][i]
    long cc = 0;
};

// Walks every {m} with sum_i i m_i^{(a)} = s_a.  With a level the parts are
// bounded by t_a * level and p is computed on all of H^level; otherwise p is
// computed up to the largest part in use.
void for_each_config(const CartanData& data, const Multiplicities& L, const std::vector<long>& s,
                     std::optional<int> level, const std::function<void(const Config&)>& f) {
    const int n = data.rank();
    std::vector<int> t(static_cast<std::size_t>(n + 1), 1);
    for (int a = 1; a <= n; ++a)
        t[static_cast<std::size_t>(a)] = data.t(a);
    std::vector<std::vector<int>> D(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(n + 1), 0));
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            D[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = data.doubled_pairing(a, b);

    std::vector<std::vector<Partition>> choices;
    for (int a = 1; a <= n; ++a) {
        const long sa = s[static_cast<std::size_t>(a - 1)];
        const int bound = level ? t[static_cast<std::size_t>(a)] * *level : static_cast<int>(std::max<long>(sa, 1));
        choices.push_back(partitions_of(sa, bound));
    }
    std::vector<const Partition*> pick(static_cast<std::size_t>(n), nullptr);
    Config cfg;
    cfg.m.assign(static_cast<std::size_t>(n), {});
    cfg.p.assign(static_cast<std::size_t>(n), {});

    std::function<void(int)> rec = [&](int a) {
        if (a <= n) {
            for (const auto& p : choices[static_cast<std::size_t>(a - 1)]) {
                pick[static_cast<std::size_t>(a - 1)] = &p;
                rec(a + 1);
            }
            return;
        }
        for (int b = 1; b <= n; ++b) {
            const auto& part = *pick[static_cast<std::size_t>(b - 1)];
            const int top = level ? t[static_cast<std::size_t>(b)] * *level : (part.empty() ? 0 : part.front());
            auto& mb = cfg.m[static_cast<std::size_t>(b - 1)];
            mb.assign(static_cast<std::size_t>(top + 1), 0);
            for (int x : part)
                ++mb[static_cast<std::size_t>(x)];
        }
        // 4 cc = sum D(a,b) min(t_b j, t_a k) m_j^a m_k^b
        long cc4 = 0;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                const int d = D[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (d == 0)
                    continue;
                const auto& ma = cfg.m[static_cast<std::size_t>(a - 1)];
                const auto& mb = cfg.m[static_cast<std::size_t>(b - 1)];
                const int ta = t[static_cast<std::size_t>(a)], tb = t[static_cast<std::size_t>(b)];
                for (std::size_t j = 1; j < ma.size(); ++j)
                    for (std::size_t k = 1; k < mb.size(); ++k)
                        if (ma[j] && mb[k])
                            cc4 += static_cast<long>(d) * std::min<long>(tb * static_cast<long>(j), ta * static_cast<long>(k)) *
                                   ma[j] * mb[k];
            }
        if (cc4 % 4 != 0)
            throw ConsistencyError("non-integral charge in the closed form");
        cfg.cc = cc4 / 4;
        for (int a = 1; a <= n; ++a) {
            const auto& ma = cfg.m[static_cast<std::size_t>(a - 1)];
            auto& pa = cfg.p[static_cast<std::size_t>(a - 1)];
            pa.assign(ma.size(), 0);
            const int ta = t[static_cast<std::size_t>(a)];
            for (std::size_t i = 1; i < ma.size(); ++i) {
                if (!level && ma[i] == 0)
                    continue;
                long twice = 0;
                for (const auto& [k, v] : L)
                    if (k.first == a)
                        twice += 2L * v * std::min<long>(static_cast<long>(i), k.second);
                for (int b = 1; b <= n; ++b) {
                    const int d = D[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                    if (d == 0)
                        continue;
                    const auto& mb = cfg.m[static_cast<std::size_t>(b - 1)];
                    const int tb = t[static_cast<std::size_t>(b)];
                    for (std::size_t k = 1; k < mb.size(); ++k)
                        if (mb[k])
                            twice -= static_cast<long>(d) *
                                     std::min<long>(tb * static_cast<long>(i), ta * static_cast<long>(k)) * mb[k];
                }
                if (twice % 2 != 0)
                    throw ConsistencyError("non-integral vacancy in the closed form");
                pa[i] = twice / 2;
            }
        }
        f(cfg);
    };
    rec(1);
}

std::optional<std::vector<long>> closed_form_sizes(const CartanData& data, const Multiplicities& L,
                                                   const Weight& Lambda) {
    if (static_cast<int>(Lambda.size()) != data.dim())
        throw DomainError("weight has the wrong dimension");
    Weight target = data.zero_weight() - Lambda;
    for (const auto& [k, v] : L) {
        if (k.first < 1 || k.first > data.rank() || k.second < 1 || v < 0)
            throw DomainError("bad multiplicity key");
        target += (k.second * v) * data.fundamental_weight(k.first);
    }
    auto s = data.root_coordinates(target);
    if (!s)
        return std::nullopt;
    for (long x : *s)
        if (x < 0)
            return std::nullopt;
    return s;
}

// [m+p; m] with q -> 1/q, and zero whenever p < 0.
QLaurent inverse_binomial(long p, int m) {
    if (p < 0)
        return {};
    return qbinomial(p, m).shifted(-static_cast<long>(m) * p);
}

} // namespace

QLaurent closed_form_F(const CartanData& data, const Multiplicities& L, const Weight& Lambda) {
    auto s = closed_form_sizes(data, L, Lambda);
    QLaurent total;
    if (!s)
        return total;
    for_each_config(data, L, *s, std::nullopt, [&](const Config& c) {
        QLaurent term = QLaurent::monomial(c.cc);
        for (std::size_t a = 0; a < c.m.size() && !term.is_zero(); ++a)
            for (std::size_t i = 1; i < c.m[a].size(); ++i)
                if (c.m[a][i] > 0)
                    term *= qbinomial(c.p[a][i], c.m[a][i]);
        total += term;
    });
    return total;
}

namespace {

void check_level_support(const CartanData& data, const Multiplicities& L, int level) {
    if (level < 0)
        throw DomainError("level must be nonnegative");
    for (const auto& [k, v] : L)
        if (v > 0 && k.second > data.t(k.first) * level)
            throw DomainError("factor B^{" + std::to_string(k.first) + "," + std::to_string(k.second) +
                              "} is outside H^" + std::to_string(level));
}

Weight zero_weight_for(const CartanData& data, const Multiplicities& L, bool& feasible) {
    feasible = true;
    Weight w = data.zero_weight();
    if (data.kind() != CartanKind::A)
        return w;
    long boxes = 0;
    for (const auto& [k, v] : L)
        boxes += static_cast<long>(k.first) * k.second * v;
    const long parts = data.rank() + 1;
    if (boxes % parts != 0) {
        feasible = false;
        return w;
    }
    for (auto& x : w.coords)
        x = static_cast<int>(boxes / parts);
    return w;
}

// The level sum with modified vacancies: sum over {m} on H^l of
// q^{cc + sum p m} sum_vec coef(vec) prod [m + p + vec; m]_{1/q}.  The
// vectors are indexed like Config::p and carry the inclusion-exclusion
// weights of the distinct minima.
QLaurent level_closed_form(const CartanData& data, const Multiplicities& L, const std::vector<long>& s,
                           int level, const std::map<std::vector<std::vector<long>>, long>& corrections) {
    QLaurent total;
    for_each_config(data, L, s, level, [&](const Config& c) {
        QLaurent inner;
        for (const auto& [vec, coef] : corrections) {
            if (coef == 0)
                continue;
            QLaurent prod = QLaurent::constant(coef);
            for (std::size_t a = 0; a < c.m.size() && !prod.is_zero(); ++a)
                for (std::size_t i = 1; i < c.m[a].size() && !prod.is_zero(); ++i)
                    prod *= inverse_binomial(c.p[a][i] + vec[a][i], c.m[a][i]);
            inner += prod;
        }
        if (inner.is_zero())
            return;
        long shift = c.cc;
        for (std::size_t a = 0; a < c.m.size(); ++a)
            for (std::size_t i = 1; i < c.m[a].size(); ++i)
                shift += c.p[a][i] * c.m[a][i];
        total += inner.shifted(shift);
    });
    return total;
}

} // namespace

QLaurent closed_form_F_level(const CartanData& data, const Multiplicities& L, int level) {
    check_level_support(data, L, level);
    bool feasible = true;
    const Weight zero = zero_weight_for(data, L, feasible);
    if (!feasible)
        return {};
    auto s = closed_form_sizes(data, L, zero);
    if (!s)
        return {};
    std::vector<std::vector<long>> none;
    for (int a = 1; a <= data.rank(); ++a)
        none.emplace_back(static_cast<std::size_t>(data.t(a) * level + 1), 0);
    return level_closed_form(data, L, *s, level, {{none, 1}});
}

std::vector<CSTTableau> cst_enumerate(const std::vector<int>& column_lengths, int alphabet, std::size_t cap) {
    for (std::size_t a = 1; a < column_lengths.size(); ++a)
        if (column_lengths[a] > column_lengths[a - 1])
            throw DomainError("column lengths must be weakly decreasing");
    std::vector<CSTTableau> out;
    CSTTableau cur;
    cur.columns.resize(column_lengths.size());
    for (std::size_t a = 0; a < column_lengths.size(); ++a)
        cur.columns[a].assign(static_cast<std::size_t>(std::max(column_lengths[a], 0)), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t a, std::size_t j) {
        if (a == cur.columns.size()) {
            if (out.size() >= cap)
                throw CapError("more than " + std::to_string(cap) + " column-strict tableaux");
            out.push_back(cur);
            return;
        }
        auto& col = cur.columns[a];
        if (j == col.size()) {
            rec(a + 1, 0);
            return;
        }
        int lo = j > 0 ? col[j - 1] + 1 : 1;
        if (a > 0)
            lo = std::max(lo, cur.columns[a - 1][j]);
        // leave room for the strictly larger entries below
        const int hi = alphabet - static_cast<int>(col.size() - 1 - j);
        for (int x = lo; x <= hi; ++x) {
            col[j] = x;
            rec(a, j + 1);
        }
        col[j] = 0;
    };
    rec(0, 0);
    return out;
}

namespace {

// Modification tables mod[a-1][i] per tableau, over the i-range used by the
// level restriction; combined by inclusion-exclusion into
// minimum-vector -> signed multiplicity.
using ModTable = std::vector<std::vector<long>>;

std::map<ModTable, long> inclusion_exclusion(const std::vector<ModTable>& mods) {
    const std::size_t k = mods.size();
    if (k == 0)
        return {};
    if (k > kMaxInclusionExclusion)
        throw CapError("inclusion-exclusion over " + std::to_string(k) + " tableaux exceeds the limit of " +
                       std::to_string(kMaxInclusionExclusion));
    std::map<ModTable, long> out;
    std::vector<ModTable> mins(std::size_t{1} << k);
    for (std::size_t mask = 1; mask < mins.size(); ++mask) {
        const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
        const std::size_t rest = mask & (mask - 1);
        if (rest == 0) {
            mins[mask] = mods[low];
        } else {
            mins[mask] = mins[rest];
            for (std::size_t a = 0; a < mins[mask].size(); ++a)
                for (std::size_t i = 0; i < mins[mask][a].size(); ++i)
                    mins[mask][a][i] = std::min(mins[mask][a][i], mods[low][a][i]);
        }
        out[mins[mask]] += (__builtin_popcountll(mask) % 2 == 1) ? 1 : -1;
    }
    return out;
}

long chi_count(const CSTTableau& t, int col, int length, int i, int threshold) {
    long c = 0;
    for (int j = 1; j <= length; ++j)
        c += i >= threshold + t.entry(j, col);
    return c;
}

void check_partition(const Weight& lambda) {
    for (std::size_t k = 1; k < lambda.size(); ++k)
        if (lambda[k] > lambda[k - 1])
            throw DomainError("weight " + lambda.to_string() + " is not a partition");
}

// Level rc sum: every (nu, J) in RC with parts <= max_part for which some
// tableau bounds all riggings and keeps the modified vacancies nonnegative.
QLaurent level_rc_sum(CartanKind kind, int n, const Multiplicities& L, const Weight& lambda, int max_part_bound,
                      const std::vector<ModTable>& mods, const std::function<bool(int, int)>& checked,
                      std::size_t cap) {
    std::map<long, long> counts;
    for (const auto& rc : enumerate_rc(kind, n, L, lambda, max_part_bound, cap)) {
        bool any = false;
        for (const auto& mod : mods) {
            bool ok = true;
            for (int a = 1; a <= n && ok; ++a)
                for (int i = 1; i <= max_part_bound && ok; ++i) {
                    if (!checked(a, i))
                        continue;
                    const long bound =
                        vacancy_number(kind, n, L, rc.nu, a, i) + mod[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i)];
                    if (bound < 0) {
                        ok = false;
                        break;
                    }
                    auto it = rc.riggings.find({a, i});
                    if (it != rc.riggings.end() && !it->second.empty() && it->second.front() > bound)
                        ok = false;
                }
            if (ok) {
                any = true;
                break;
            }
        }
        if (any)
            ++counts[cc_stat(theta(rc))];
    }
    QLaurent out;
    for (auto [e, c] : counts)
        out.add_term(e, c);
    return out;
}

long floor_half(long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

} // namespace

QLaurent level_restricted_A(const Multiplicities& L, int n, const Weight& lambda, int level, LevelMode mode,
                            std::size_t cap) {
    CartanData data(CartanKind::A, n);
    if (static_cast<int>(lambda.size()) != n + 1)
        throw DomainError("weight has the wrong dimension");
    check_partition(lambda);
    check_input(CartanKind::A, L, n);
    check_level_support(data, L, level);
    const int spread = lambda[0] - lambda[static_cast<std::size_t>(n)];
    const int slack = level - spread; // tilde l
    if (slack < 0)
        throw DomainError("weight " + lambda.to_string() + " is not of level " + std::to_string(level));

    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int a = 1; a <= n; ++a)
        cols[static_cast<std::size_t>(a - 1)] = lambda[static_cast<std::size_t>(a - 1)] - lambda[static_cast<std::size_t>(n)];
    auto col_len = [&](int a) { return a <= n ? cols[static_cast<std::size_t>(a - 1)] : 0; };
    std::vector<ModTable> mods;
    for (const auto& t : cst_enumerate(cols, spread)) {
        ModTable mod(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(level + 1), 0));
        for (int a = 1; a <= n; ++a)
            for (int i = 1; i <= level; ++i)
                mod[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i)] =
                    -chi_count(t, a, col_len(a), i, slack) + (a < n ? chi_count(t, a + 1, col_len(a + 1), i, slack) : 0);
        mods.push_back(std::move(mod));
    }

    if (mode == LevelMode::rc_sum)
        return level_rc_sum(CartanKind::A, n, L, lambda, level, mods, [](int, int) { return true; }, cap);
    auto s = configuration_sizes(CartanKind::A, n, L, lambda);
    if (!s)
        return {};
    return level_closed_form(data, L, *s, level, inclusion_exclusion(mods));
}

QLaurent level_restricted_C(const Multiplicities& L, int n, const Weight& lambda, int level, LevelMode mode,
                            HalvedIndex index, std::size_t cap) {
    CartanData data(CartanKind::C, n);
    if (static_cast<int>(lambda.size()) != n)
        throw DomainError("weight has the wrong dimension");
    check_partition(lambda);
    if (n > 0 && lambda[static_cast<std::size_t>(n - 1)] < 0)
        throw DomainError("weight " + lambda.to_string() + " is not dominant");
    check_type_c_input(L, n);
    check_level_support(data, L, level);
    const int l1 = n > 0 ? lambda[0] : 0;
    if (l1 > level)
        throw DomainError("weight " + lambda.to_string() + " is not of level " + std::to_string(level));
    const int threshold = 2 * level - 2 * l1;

    // columns of (lambda^C)', a = 1..2n
    std::vector<int> cols(static_cast<std::size_t>(2 * n));
    for (int a = 1; a <= 2 * n; ++a)
        cols[static_cast<std::size_t>(a - 1)] = a <= n ? l1 + lambda[static_cast<std::size_t>(a - 1)]
                                                       : l1 - lambda[static_cast<std::size_t>(2 * n - a)];
    auto col_len = [&](int a) { return a <= 2 * n ? cols[static_cast<std::size_t>(a - 1)] : 0; };
    const int top = 2 * level; // largest part of any nu^{(a)}
    auto f = [&](const CSTTableau& t, int a, int i) {
        return -chi_count(t, a, col_len(a), i, threshold) +
               (a < 2 * n ? chi_count(t, a + 1, col_len(a + 1), i, threshold) : 0);
    };
    const auto tableaux = cst_enumerate(cols, 2 * l1);

    if (mode == LevelMode::rc_sum) {
        std::vector<ModTable> mods;
        for (const auto& t : tableaux) {
            ModTable mod(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(top + 1), 0));
            for (int a = 1; a <= n; ++a)
                for (int i = 1; i <= top; ++i)
                    mod[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i)] =
                        a < n ? std::min(f(t, a, i), f(t, 2 * n - a, i)) : floor_half(f(t, n, i));
            mods.push_back(std::move(mod));
        }
        // nu^{(n)} has even parts only; odd i there carries no riggings
        auto checked = [n](int a, int i) { return a < n || i % 2 == 0; };
        return level_rc_sum(CartanKind::C, n, L, lambda, top, mods, checked, cap);
    }

    std::vector<ModTable> mods;
    for (const auto& t : tableaux) {
        ModTable mod;
        for (int a = 1; a <= n; ++a) {
            const int range = data.t(a) * level;
            std::vector<long> row(static_cast<std::size_t>(range + 1), 0);
            for (int i = 1; i <= range; ++i)
                row[static_cast<std::size_t>(i)] =
                    a < n ? std::min(f(t, a, i), f(t, 2 * n - a, i))
                          : floor_half(f(t, n, index == HalvedIndex::doubled ? 2 * i : i));
            mod.push_back(std::move(row));
        }
        mods.push_back(std::move(mod));
    }
    auto s = closed_form_sizes(data, L, lambda);
    if (!s)
        return {};
    return level_closed_form(data, L, *s, level, inclusion_exclusion(mods));
}

} // namespace qcrystal
