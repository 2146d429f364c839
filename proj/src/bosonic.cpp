#include "qcrystal/bosonic.hpp"

#include "qcrystal/energy.hpp"
#include "qcrystal/errors.hpp"
#include "qcrystal/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qcrystal {

namespace {

std::vector<int> transpose(std::vector<int> mu) {
    std::sort(mu.begin(), mu.end(), std::greater<>());
    std::vector<int> t(mu.empty() ? 0 : static_cast<std::size_t>(std::max(mu.front(), 0)), 0);
    for (int part : mu)
        for (int i = 0; i < part; ++i)
            ++t[static_cast<std::size_t>(i)];
    return t;
}

bool valid_content(std::span<const int> mu, std::span<const int> lambda) {
    if (lambda.empty())
        return false;
    for (int x : lambda)
        if (x < 0)
            return false;
    for (int x : mu)
        if (x < 0)
            return false;
    return std::accumulate(mu.begin(), mu.end(), 0L) == std::accumulate(lambda.begin(), lambda.end(), 0L);
}

// Walks the chains nu^{(n)}, ..., nu^{(1)} below nu^{(n+1)} = mu^t.  Each
// partition is stored with a trailing zero so nu[i+1] is always defined.
class StripWalker {
  public:
    StripWalker(std::vector<int> top, std::span<const int> lambda, bool columns)
        : lambda_(lambda.begin(), lambda.end()), columns_(columns) {
        top.push_back(0);
        chain_.assign(lambda_.size(), {});
        chain_.back() = std::move(top);
        partial_.assign(lambda_.size() + 1, 0);
        for (std::size_t a = 0; a < lambda_.size(); ++a)
            partial_[a + 1] = partial_[a] + lambda_[a];
    }

    QLaurent run() {
        const std::size_t n = lambda_.size() - 1;
        if (n == 0)
            return QLaurent::constant(1);
        descend(n - 1, QLaurent::constant(1));
        return total_;
    }

  private:
    // Choose chain_[a] (that is nu^{(a+1)}) below chain_[a+1].
    void descend(std::size_t a, QLaurent weight) {
        const auto& above = chain_[a + 1];
        auto& cur = chain_[a];
        cur.assign(above.size(), 0);
        fill_row(a, 0, static_cast<int>(partial_[a + 1]), weight);
    }

    void fill_row(std::size_t a, std::size_t i, int remaining, const QLaurent& weight) {
        const auto& above = chain_[a + 1];
        auto& cur = chain_[a];
        const std::size_t rows = above.size() - 1;
        if (i == rows) {
            if (remaining != 0)
                return;
            finish_level(a, weight);
            return;
        }
        int lo = 0, hi = above[i];
        if (columns_) {
            lo = above[i + 1];
        } else if (i > 0) {
            hi = std::min(hi, cur[i - 1]);
        }
        // the rest of the rows can absorb at most this many boxes
        long room = 0;
        for (std::size_t k = i + 1; k < rows; ++k)
            room += above[k];
        for (int x = std::max(lo, static_cast<int>(remaining - room)); x <= std::min(hi, remaining); ++x) {
            cur[i] = x;
            fill_row(a, i + 1, remaining - x, weight);
        }
        cur[i] = 0;
    }

    void finish_level(std::size_t a, const QLaurent& weight) {
        const auto& above = chain_[a + 1];
        const auto& cur = chain_[a];
        const std::size_t rows = above.size() - 1;
        QLaurent w = weight;
        long phi = 0;
        for (std::size_t i = 0; i < rows && !w.is_zero(); ++i) {
            if (columns_) {
                w *= qbinomial_top(above[i] - above[i + 1], cur[i] - above[i + 1]);
            } else {
                w *= qbinomial_top(above[i] - cur[i + 1], cur[i] - cur[i + 1]);
                phi += static_cast<long>(cur[i + 1]) * (above[i] - cur[i]);
            }
        }
        if (w.is_zero())
            return;
        if (phi)
            w = w.shifted(phi);
        if (a == 0) {
            // nu^{(1)} / nu^{(0)} with nu^{(0)} empty
            if (columns_ && rows > 1 && cur[1] != 0)
                return;
            total_ += w;
            return;
        }
        descend(a - 1, w);
    }

    std::vector<long> lambda_;
    bool columns_;
    std::vector<std::vector<int>> chain_; // chain_[a] holds nu^{(a+1)}
    std::vector<long> partial_;
    QLaurent total_;
};

QLaurent strip_sum(std::span<const int> mu, std::span<const int> lambda, bool columns) {
    if (!valid_content(mu, lambda))
        return {};
    std::vector<int> m(mu.begin(), mu.end());
    if (columns)
        for (int r : m)
            if (r > static_cast<int>(lambda.size()))
                return {};
    return StripWalker(transpose(m), lambda, columns).run();
}

struct Summand {
    int sign;
    long exponent;
    Weight mu;
};

QLaurent reduce(const Tensor& B, std::vector<Summand> terms, std::size_t cap,
                std::vector<QLaurent>* per_term = nullptr) {
    std::vector<Weight> distinct;
    {
        std::set<Weight> seen;
        for (const auto& t : terms)
            if (seen.insert(t.mu).second)
                distinct.push_back(t.mu);
    }
    Supernomial S(B, cap);
    const auto values = parallel_map(distinct, [&](const Weight& mu) { return S.evaluate(mu); });
    std::map<Weight, const QLaurent*> lookup;
    for (std::size_t k = 0; k < distinct.size(); ++k)
        lookup[distinct[k]] = &values[k];
    QLaurent total;
    for (const auto& t : terms) {
        QLaurent v = lookup.at(t.mu)->shifted(t.exponent);
        if (t.sign < 0)
            v = -v;
        if (per_term)
            per_term->push_back(v);
        total += v;
    }
    return total;
}

void check_dominant(const CartanData& data, const Weight& Lambda) {
    if (static_cast<int>(Lambda.size()) != data.dim())
        throw DomainError("weight has the wrong dimension");
    if (!data.is_dominant(Lambda))
        throw DomainError("weight " + Lambda.to_string() + " is not dominant");
}

} // namespace

QLaurent supernomial_A_columns(std::span<const int> mu, std::span<const int> lambda) {
    return strip_sum(mu, lambda, true);
}

QLaurent supernomial_A_rows(std::span<const int> mu, std::span<const int> lambda) {
    return strip_sum(mu, lambda, false);
}

QLaurent supernomial_C_boxes(int L, int n, std::span<const int> lambda) {
    if (L < 0 || static_cast<int>(lambda.size()) != n)
        return {};
    long norm = 0;
    for (int x : lambda)
        norm += std::abs(x);
    const long spare = L - norm;
    if (spare < 0 || spare % 2 != 0)
        return {};
    const long pairs = spare / 2;
    QLaurent total;
    std::vector<long> m(static_cast<std::size_t>(n), 0);
    std::vector<long> parts(static_cast<std::size_t>(2 * n), 0);
    auto rec = [&](auto&& self, std::size_t k, long left) -> void {
        if (k + 1 == m.size() || m.empty()) {
            if (!m.empty())
                m[k] = left;
            for (std::size_t a = 0; a < m.size(); ++a) {
                parts[a] = std::abs(lambda[a]) + m[a];
                parts[a + m.size()] = m[a];
            }
            total += qmultinomial(L, parts);
            return;
        }
        for (long x = 0; x <= left; ++x) {
            m[k] = x;
            self(self, k + 1, left - x);
        }
    };
    rec(rec, 0, pairs);
    return total;
}

std::string to_string(SupernomialSource s) {
    switch (s) {
    case SupernomialSource::multinomial:
        return "multinomial";
    case SupernomialSource::columns:
        return "columns";
    case SupernomialSource::rows:
        return "rows";
    case SupernomialSource::c_boxes:
        return "c_boxes";
    case SupernomialSource::direct:
        return "direct";
    }
    return "?";
}

SupernomialSource default_source(const Tensor& B) {
    const auto& fs = B.shape().factors;
    const bool boxes = std::all_of(fs.begin(), fs.end(), [](auto d) { return d.r == 1 && d.s == 1; });
    if (B.shape().kind == CartanKind::C) {
        if (!boxes)
            throw UnsupportedError("type C supernomials are available for single boxes only");
        return SupernomialSource::c_boxes;
    }
    if (boxes)
        return SupernomialSource::multinomial;
    if (std::all_of(fs.begin(), fs.end(), [](auto d) { return d.s == 1; }))
        return SupernomialSource::columns;
    if (std::all_of(fs.begin(), fs.end(), [](auto d) { return d.r == 1; }))
        return SupernomialSource::rows;
    return SupernomialSource::direct;
}

Supernomial::Supernomial(const Tensor& B, std::size_t cap) : Supernomial(B, default_source(B), cap) {}

Supernomial::Supernomial(const Tensor& B, SupernomialSource source, std::size_t cap)
    : B_(B), source_(source), cap_(cap) {
    for (const auto& f : B.shape().factors)
        mu_.push_back(source == SupernomialSource::rows ? f.s : f.r);
    std::sort(mu_.begin(), mu_.end(), std::greater<>());
    if (source == SupernomialSource::c_boxes && B.shape().kind != CartanKind::C)
        throw UnsupportedError("c_boxes source needs a type C shape");
    if (source != SupernomialSource::c_boxes && B.shape().kind == CartanKind::C)
        throw UnsupportedError("type C supernomials are available for single boxes only");
}

const QLaurent& Supernomial::operator()(const Weight& mu) {
    auto it = memo_.find(mu);
    if (it != memo_.end())
        return it->second;
    return memo_.emplace(mu, evaluate(mu)).first->second;
}

QLaurent Supernomial::evaluate(const Weight& mu) const {
    const auto& lam = mu.coords;
    switch (source_) {
    case SupernomialSource::multinomial: {
        if (!valid_content(std::vector<int>(B_.length(), 1), lam))
            return {};
        std::vector<long> parts(lam.begin(), lam.end());
        return qmultinomial(static_cast<long>(B_.length()), parts);
    }
    case SupernomialSource::columns:
        return supernomial_A_columns(mu_, lam);
    case SupernomialSource::rows:
        return supernomial_A_rows(mu_, lam);
    case SupernomialSource::c_boxes:
        return supernomial_C_boxes(static_cast<int>(B_.length()), B_.cartan().rank(), lam);
    case SupernomialSource::direct: {
        if (B_.shape().kind == CartanKind::A) {
            std::vector<int> content;
            for (const auto& f : B_.shape().factors)
                content.push_back(f.r * f.s);
            if (!valid_content(content, lam))
                return {};
        }
        return direct_sum(B_, mu, Restriction::none(), Statistic::coenergy, cap_);
    }
    }
    return {};
}

QLaurent bosonic_classical(const Tensor& B, const Weight& Lambda, std::size_t cap) {
    const auto& data = B.cartan();
    check_dominant(data, Lambda);
    const Weight top = Lambda + data.rho();
    std::vector<Summand> terms;
    for (const auto& w : weyl_enumerate(data))
        terms.push_back({w.determinant(), 0, w.act(top) - data.rho()});
    return reduce(B, std::move(terms), cap);
}

namespace {

// 4 * exponent of the translation prefactor; the caller checks divisibility.
long quadruple_exponent(const CartanData& data, const Weight& beta, const Weight& top, int c) {
    return data.doubled_pairing(beta, beta) * c - 2 * data.doubled_pairing(top, beta);
}

long translation_exponent(const CartanData& data, const Weight& beta, const Weight& top, int c) {
    const long q4 = quadruple_exponent(data, beta, top, c);
    if (q4 % 4 != 0)
        throw ConsistencyError("non-integral translation exponent for beta = " + beta.to_string());
    return q4 / 4;
}

int chebyshev(const Weight& w) {
    int m = 0;
    for (int x : w.coords)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

QLaurent bosonic_level(const Tensor& B, const Weight& Lambda, int level, std::size_t cap) {
    const auto& data = B.cartan();
    check_dominant(data, Lambda);
    if (level < 0)
        throw DomainError("level must be nonnegative");
    const int c = level + data.h_dual();
    const Weight top = Lambda + data.rho();
    int bound = B.shape().boxes();
    for (int x : Lambda.coords)
        bound = std::max(bound, std::abs(x));
    const int radius = translation_radius(data, level, bound);
    const int inner = radius - translation_guard(data);

    const auto weyl = weyl_enumerate(data);
    std::vector<Summand> terms;
    std::vector<bool> outer;
    for (const auto& beta : translation_lattice_box(data, level, bound)) {
        const long ex = translation_exponent(data, beta, top, c);
        const Weight shifted = top - c * beta;
        const bool in_guard = chebyshev(beta) > inner;
        for (const auto& w : weyl) {
            terms.push_back({w.determinant(), ex, w.act(shifted) - data.rho()});
            outer.push_back(in_guard);
        }
    }
    std::vector<QLaurent> values;
    QLaurent total = reduce(B, std::move(terms), cap, &values);
    for (std::size_t k = 0; k < values.size(); ++k)
        if (outer[k] && !values[k].is_zero())
            throw ConsistencyError("translation guard ring contributes; the lattice box is too small");
    return total;
}

// ---------------------------------------------------------------------------
// The involution Phi

namespace {

// <h_0, x> on rho-shifted weights at the given level, through the highest
// root: c - <theta^vee, x>.
int h0_pairing(const CartanData& data, const Weight& x, int level) {
    const int c = level + data.h_dual();
    const int n = data.rank();
    if (data.kind() == CartanKind::A)
        return c - (x[0] - x[static_cast<std::size_t>(n)]);
    return c - x[0];
}

// The unique (affine) Weyl element taking x to the dominant chamber or
// fundamental alcove, or nullopt if x lies on a wall.
std::optional<AffineWeylElement> straighten(const CartanData& data, Weight x, std::optional<int> level) {
    std::vector<int> applied;
    for (bool moved = true; moved;) {
        moved = false;
        for (int i = 1; i <= data.rank(); ++i) {
            const int p = data.coroot_pairing(i, x);
            if (p == 0)
                return std::nullopt;
            if (p < 0) {
                x = apply_simple_reflection(data, i, x);
                applied.push_back(i);
                moved = true;
            }
        }
        if (level && !moved) {
            const int p = h0_pairing(data, x, *level);
            if (p == 0)
                return std::nullopt;
            if (p < 0) {
                x = apply_simple_reflection(data, 0, x, level);
                applied.push_back(0);
                moved = true;
            }
        }
    }
    AffineWeylElement w = affine_identity(data);
    for (auto it = applied.rbegin(); it != applied.rend(); ++it)
        w = w.compose_generator(data, *it, level.value_or(0));
    return w;
}

bool same_element(const AffineWeylElement& a, const AffineWeylElement& b) {
    return a.linear == b.linear && a.translation == b.translation;
}

struct VResult {
    int color = -1;
    std::size_t k = 0; // number of letters in the suffix
};

// v(omega, b): smallest suffix of the flattened letter word that is not
// highest weight (for color 0: eps_0 exceeding the level), and its color.
VResult compute_v(const Tensor& B, const TensorWord& w, std::optional<int> level,
                  std::vector<std::string>& findings) {
    const auto kind = B.shape().kind;
    const int n = B.cartan().rank();
    const auto letters = B.flatten(w);
    const int first = level ? 0 : 1;
    std::vector<int> eps(static_cast<std::size_t>(n + 1), 0), phi(eps);
    auto letter_eps = [&](int i, Letter x) {
        if (i == 0)
            return x == 1 ? 1 : 0;
        return letter_arrow(kind, n, i, x, Dir::e) ? 1 : 0;
    };
    auto letter_phi = [&](int i, Letter x) {
        if (i == 0)
            return x == n + 1 ? 1 : 0;
        return letter_arrow(kind, n, i, x, Dir::f) ? 1 : 0;
    };
    for (std::size_t k = 0; k < letters.size(); ++k) {
        VResult r;
        for (int i = first; i <= n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            const int e = letter_eps(i, letters[k]), p = letter_phi(i, letters[k]);
            const int new_eps = std::max(eps[ui], eps[ui] + e - phi[ui]);
            phi[ui] = std::max(p, phi[ui] + p - e);
            eps[ui] = new_eps;
            const int threshold = i == 0 ? *level : 0;
            if (eps[ui] > threshold) {
                if (r.color >= 0)
                    findings.push_back("v is ambiguous at " + B.to_string(w));
                else
                    r = {i, k + 1};
            }
        }
        if (r.color >= 0)
            return r;
    }
    return {};
}

} // namespace

InvolutionReport involution_phi(const Tensor& B, const Weight& Lambda, Restriction mode, std::size_t cap) {
    const auto& data = B.cartan();
    check_dominant(data, Lambda);
    std::optional<int> level;
    if (mode.kind == RestrictionKind::level) {
        if (!B.affine())
            throw UnsupportedError("the level involution is constructed for type A only");
        if (mode.level < 0)
            throw DomainError("level must be nonnegative");
        level = mode.level;
    } else if (mode.kind != RestrictionKind::classical) {
        throw DomainError("involution needs classical or level mode");
    }
    const Weight top = Lambda + data.rho();
    if (level && h0_pairing(data, top, *level) <= 0)
        throw DomainError("weight is not of level " + std::to_string(*level));
    const int c = level.value_or(0) + data.h_dual();

    InvolutionReport rep;
    std::optional<EnergyFunction> energy;
    if (B.affine()) {
        energy.emplace(B);
        rep.weight_checked = true;
    }

    using Pair = std::pair<AffineWeylElement, TensorWord>;
    auto locate = [&](const TensorWord& b) -> std::optional<AffineWeylElement> {
        auto w = straighten(data, B.weight(b) + data.rho(), level);
        if (!w || w->act(B.weight(b) + data.rho()) != top)
            return std::nullopt;
        return w;
    };
    auto contribution = [&](const Pair& p) -> long {
        long ex = energy ? energy->coenergy_D(p.second) : 0;
        if (level) {
            // omega(x) = L x + tau matches the summand with L^{-1} and beta = tau / c
            Weight beta = data.zero_weight();
            for (std::size_t k = 0; k < beta.size(); ++k)
                beta[k] = p.first.translation[k] / c;
            ex += translation_exponent(data, beta, top, c);
        }
        return ex;
    };
    auto apply_phi = [&](const Pair& p, int i) -> std::optional<Pair> {
        const int times = i == 0 ? *level + 1 : 1;
        TensorWord b = p.second;
        for (int t = 0; t < times; ++t) {
            auto nb = tensor_arrow(B, b, i, Dir::e);
            if (!nb)
                return std::nullopt;
            b = std::move(*nb);
        }
        return Pair{p.first.compose_generator(data, i, level.value_or(0)), reflection_s(B, b, i)};
    };

    const auto expected = enumerate_paths(B, Lambda, mode, cap);
    rep.expected_fixed = expected.size();
    std::set<TensorWord> expected_set(expected.begin(), expected.end());
    std::set<TensorWord> fixed;

    auto note = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (rep.findings.size() < 20)
            rep.findings.push_back(msg);
    };

    for (const auto& b : all_words(B, cap)) {
        auto w = locate(b);
        if (!w)
            continue;
        ++rep.set_size;
        const Pair p{*w, b};
        const VResult v = compute_v(B, b, level, rep.findings);
        if (v.color < 0) {
            if (!w->linear.is_identity() || w->translation != data.zero_weight())
                throw ConsistencyError("v undefined on a non-fixed point " + B.to_string(b));
            ++rep.fixed_points;
            fixed.insert(b);
            continue;
        }
        auto image = apply_phi(p, v.color);
        const std::string where = B.to_string(b) + " (v = " + std::to_string(v.color) + ")";
        if (!image) {
            note(rep.stays_in_set, "Phi undefined at " + where);
            continue;
        }
        if (image->first.act(B.weight(image->second) + data.rho()) != top)
            note(rep.stays_in_set, "Phi leaves S at " + where);
        if (image->first.sign() != -p.first.sign())
            note(rep.sign_reversing, "sign not reversed at " + where);
        if (energy && contribution(*image) != contribution(p))
            note(rep.weight_preserving, "q-weight changes at " + where);
        std::vector<std::string> scratch;
        const VResult v2 = compute_v(B, image->second, level, scratch);
        if (v2.color != v.color || v2.k != v.k)
            note(rep.v_property, "v changes under Phi at " + where);
        auto back = v2.color >= 0 ? apply_phi(*image, v2.color) : std::nullopt;
        if (!back || back->second != b || !same_element(back->first, p.first))
            note(rep.involution, "Phi is not an involution at " + where);
    }
    if (fixed != expected_set)
        note(rep.fixed_points_match, "fixed points differ from the highest weight path set");
    return rep;
}

} // namespace qcrystal
