#include "qcrystal/crystal.hpp"

#include "qcrystal/errors.hpp"

#include <charconv>
#include <deque>
#include <limits>
#include <mutex>
#include <sstream>

namespace qcrystal {

std::vector<Letter> alphabet(CartanKind kind, int n) {
    std::vector<Letter> out;
    if (kind == CartanKind::A) {
        for (int k = 1; k <= n + 1; ++k)
            out.push_back(k);
    } else {
        for (int k = 1; k <= n; ++k)
            out.push_back(k);
        for (int k = n; k >= 1; --k)
            out.push_back(-k);
    }
    return out;
}

std::optional<Letter> letter_arrow(CartanKind kind, int n, int i, Letter b, Dir dir) {
    if (i < 1 || i > n)
        return std::nullopt;
    if (kind == CartanKind::A) {
        if (dir == Dir::f && b == i)
            return i + 1;
        if (dir == Dir::e && b == i + 1)
            return i;
        return std::nullopt;
    }
    if (i == n) {
        if (dir == Dir::f && b == n)
            return -n;
        if (dir == Dir::e && b == -n)
            return n;
        return std::nullopt;
    }
    if (dir == Dir::f) {
        if (b == i)
            return i + 1;
        if (b == -(i + 1))
            return -i;
    } else {
        if (b == i + 1)
            return i;
        if (b == -i)
            return -(i + 1);
    }
    return std::nullopt;
}

void add_letter_weight(CartanKind kind, Letter b, Weight& w) {
    if (kind == CartanKind::A || b > 0)
        w[static_cast<std::size_t>(b - 1)] += 1;
    else
        w[static_cast<std::size_t>(-b - 1)] -= 1;
}

std::string letter_to_string(CartanKind kind, Letter b) {
    if (kind == CartanKind::C && b < 0)
        return "-" + std::to_string(-b);
    return std::to_string(b);
}

namespace {

int letter_eps(CartanKind kind, int n, int i, Letter b) {
    return letter_arrow(kind, n, i, b, Dir::e) ? 1 : 0;
}

int letter_phi(CartanKind kind, int n, int i, Letter b) {
    return letter_arrow(kind, n, i, b, Dir::f) ? 1 : 0;
}

std::optional<std::vector<Letter>> letter_word_arrow(CartanKind kind, int n, int i,
                                                     const std::vector<Letter>& w, Dir dir) {
    const int pos = acting_position(
        w.size(), dir, [&](std::size_t k) { return letter_eps(kind, n, i, w[k]); },
        [&](std::size_t k) { return letter_phi(kind, n, i, w[k]); });
    if (pos < 0)
        return std::nullopt;
    auto r = w;
    r[static_cast<std::size_t>(pos)] = *letter_arrow(kind, n, i, w[static_cast<std::size_t>(pos)], dir);
    return r;
}

} // namespace

CrystalGraph build_component(CartanKind kind, int n, const std::vector<Letter>& seed, std::size_t cap) {
    const auto letters = alphabet(kind, n);
    for (Letter b : seed)
        if (std::find(letters.begin(), letters.end(), b) == letters.end())
            throw DomainError("seed letter " + std::to_string(b) + " outside the alphabet");
    CrystalGraph g;
    g.kind = kind;
    g.rank = n;
    g.f.assign(static_cast<std::size_t>(n), {});
    g.e.assign(static_cast<std::size_t>(n), {});
    g.vertices.push_back(seed);
    g.index[seed] = 0;
    for (std::size_t head = 0; head < g.vertices.size(); ++head) {
        for (int i = 1; i <= n; ++i)
            for (Dir d : {Dir::f, Dir::e}) {
                auto next = letter_word_arrow(kind, n, i, g.vertices[head], d);
                auto& table = (d == Dir::f ? g.f : g.e)[static_cast<std::size_t>(i - 1)];
                int target = -1;
                if (next) {
                    auto [it, fresh] = g.index.emplace(*next, static_cast<int>(g.vertices.size()));
                    if (fresh) {
                        if (g.vertices.size() >= cap)
                            throw CapError("component exceeds vertex cap " + std::to_string(cap));
                        g.vertices.push_back(*next);
                    }
                    target = it->second;
                }
                if (table.size() <= head)
                    table.resize(head + 1, -1);
                table[head] = target;
            }
    }
    for (auto& t : g.f)
        t.resize(g.vertices.size(), -1);
    for (auto& t : g.e)
        t.resize(g.vertices.size(), -1);
    return g;
}

FactorCrystal::FactorCrystal(CartanKind kind, int n, FactorDescriptor d)
    : kind_(kind), rank_(n), desc_(d) {
    const bool ok_a = d.r >= 1 && d.s >= 1 && (d.s == 1 ? d.r <= n + 1 : d.r == 1);
    const bool ok = kind == CartanKind::A ? ok_a : (d.r == 1 && d.s == 1);
    if (!ok)
        throw UnsupportedError("no crystal model for B^{" + std::to_string(d.r) + "," +
                               std::to_string(d.s) + "} of type " + qcrystal::to_string(kind) +
                               std::to_string(n));
    std::vector<Letter> seed;
    if (d.s == 1)
        for (int k = 1; k <= d.r; ++k)
            seed.push_back(k);
    else
        seed.assign(static_cast<std::size_t>(d.s), 1);

    CrystalGraph g = build_component(kind, n, seed);
    words_ = std::move(g.vertices);
    index_ = std::move(g.index);
    const std::size_t colors = static_cast<std::size_t>(n + 1);
    f_.assign(colors, {});
    e_.assign(colors, {});
    for (int i = 1; i <= n; ++i) {
        f_[static_cast<std::size_t>(i)] = std::move(g.f[static_cast<std::size_t>(i - 1)]);
        e_[static_cast<std::size_t>(i)] = std::move(g.e[static_cast<std::size_t>(i - 1)]);
    }
    const std::size_t dim = static_cast<std::size_t>(kind == CartanKind::A ? n + 1 : n);
    for (const auto& w : words_) {
        Weight wt(std::vector<int>(dim, 0));
        for (Letter b : w)
            add_letter_weight(kind, b, wt);
        weights_.push_back(wt);
    }
    if (affine()) {
        // e_0 = pr^{-1} e_1 pr and likewise for f_0
        f_[0].assign(words_.size(), -1);
        e_[0].assign(words_.size(), -1);
        for (int x = 0; x < size(); ++x) {
            const int px = promotion(x);
            for (Dir dir : {Dir::f, Dir::e}) {
                const int y = arrow(1, px, dir);
                if (y >= 0)
                    (dir == Dir::f ? f_ : e_)[0][static_cast<std::size_t>(x)] = promotion_inverse(y);
            }
        }
    }
    fill_stats();
}

void FactorCrystal::fill_stats() {
    eps_.assign(f_.size(), std::vector<int>(words_.size(), 0));
    phi_.assign(f_.size(), std::vector<int>(words_.size(), 0));
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (f_[i].empty())
            continue;
        for (int x = 0; x < size(); ++x) {
            int k = 0;
            for (int y = e_[i][static_cast<std::size_t>(x)]; y >= 0; y = e_[i][static_cast<std::size_t>(y)])
                ++k;
            eps_[i][static_cast<std::size_t>(x)] = k;
            k = 0;
            for (int y = f_[i][static_cast<std::size_t>(x)]; y >= 0; y = f_[i][static_cast<std::size_t>(y)])
                ++k;
            phi_[i][static_cast<std::size_t>(x)] = k;
        }
    }
}

std::shared_ptr<const FactorCrystal> FactorCrystal::get(CartanKind kind, int n, FactorDescriptor d) {
    static std::mutex mu;
    static std::map<std::tuple<CartanKind, int, int, int>, std::shared_ptr<const FactorCrystal>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(kind, n, d.r, d.s);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto made = std::make_shared<const FactorCrystal>(kind, n, d);
    cache.emplace(key, made);
    return made;
}

std::optional<int> FactorCrystal::find(const std::vector<Letter>& letters) const {
    auto it = index_.find(letters);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<Letter> FactorCrystal::canonical(std::vector<Letter> w) const {
    // columns read decreasingly from the left, rows increasingly
    if (desc_.s == 1)
        std::sort(w.begin(), w.end());
    else
        std::sort(w.begin(), w.end(), std::greater<>());
    return w;
}

int FactorCrystal::promotion(int x) const {
    if (!affine())
        throw UnsupportedError("promotion is only defined for type A");
    auto w = letters(x);
    for (auto& b : w)
        b = b % (rank_ + 1) + 1;
    auto found = find(canonical(std::move(w)));
    if (!found)
        throw ConsistencyError("promotion left the factor crystal");
    return *found;
}

int FactorCrystal::promotion_inverse(int x) const {
    if (!affine())
        throw UnsupportedError("promotion is only defined for type A");
    auto w = letters(x);
    for (auto& b : w)
        b = b == 1 ? rank_ + 1 : b - 1;
    auto found = find(canonical(std::move(w)));
    if (!found)
        throw ConsistencyError("promotion left the factor crystal");
    return *found;
}

int FactorCrystal::level() const {
    if (!affine())
        throw UnsupportedError("level needs 0-arrows, available for type A only");
    int best = std::numeric_limits<int>::max();
    for (int x = 0; x < size(); ++x) {
        int s = 0;
        for (int i = 0; i <= rank_; ++i)
            s += eps(i, x);
        best = std::min(best, s);
    }
    return best;
}

std::string FactorCrystal::to_string(int x) const {
    const auto& w = letters(x);
    if (w.size() == 1)
        return letter_to_string(kind_, w[0]);
    std::string out = "(";
    for (std::size_t k = w.size(); k-- > 0;) {
        out += letter_to_string(kind_, w[k]);
        if (k)
            out += ",";
    }
    return out + ")";
}

int TensorShape::boxes() const {
    int s = 0;
    for (const auto& f : factors)
        s += f.r * f.s;
    return s;
}

std::string TensorShape::to_string() const {
    std::string out = qcrystal::to_string(kind) + ":" + std::to_string(rank);
    if (factors.empty())
        return out;
    out += ";";
    bool first = true;
    for (std::size_t k = factors.size(); k > 0;) {
        const auto f = factors[k - 1];
        std::size_t run = 0;
        while (k > 0 && factors[k - 1] == f) {
            --k;
            ++run;
        }
        if (!first)
            out += ",";
        first = false;
        out += std::to_string(f.r) + "," + std::to_string(f.s);
        if (run > 1)
            out += "*" + std::to_string(run);
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad " + what + ": '" + raw + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

TensorShape parse_shape(const std::string& text) {
    TensorShape shape;
    const auto semi = text.find(';');
    const std::string head = trim(text.substr(0, semi));
    if (head.size() < 3 || head[1] != ':')
        throw ParseError("shape must start with A:<n> or C:<n>: '" + text + "'");
    if (head[0] == 'A')
        shape.kind = CartanKind::A;
    else if (head[0] == 'C')
        shape.kind = CartanKind::C;
    else
        throw ParseError("unknown Cartan type '" + head.substr(0, 1) + "'");
    shape.rank = parse_int(head.substr(2), "rank");
    if (shape.rank < 1)
        throw ParseError("rank must be at least 1");
    if (semi == std::string::npos || trim(text.substr(semi + 1)).empty())
        return shape;
    const auto tokens = split(text.substr(semi + 1), ',');
    if (tokens.size() % 2 != 0)
        throw ParseError("factors must be listed as r,s pairs: '" + text + "'");
    std::vector<FactorDescriptor> written;
    for (std::size_t k = 0; k < tokens.size(); k += 2) {
        FactorDescriptor d;
        d.r = parse_int(tokens[k], "factor r");
        const auto star = tokens[k + 1].find('*');
        d.s = parse_int(tokens[k + 1].substr(0, star), "factor s");
        int mult = 1;
        if (star != std::string::npos)
            mult = parse_int(tokens[k + 1].substr(star + 1), "multiplicity");
        if (d.r < 1 || d.s < 1 || mult < 1)
            throw ParseError("factor labels and multiplicities must be positive");
        for (int m = 0; m < mult; ++m)
            written.push_back(d);
    }
    shape.factors.assign(written.rbegin(), written.rend());
    return shape;
}

Weight parse_weight(const std::string& text, const TensorShape& shape) {
    const int dim = shape.kind == CartanKind::A ? shape.rank + 1 : shape.rank;
    std::vector<int> coords;
    if (!trim(text).empty())
        for (const auto& tok : split(text, ','))
            coords.push_back(parse_int(tok, "weight entry"));
    if (static_cast<int>(coords.size()) != dim)
        throw ParseError("weight needs " + std::to_string(dim) + " entries, got " +
                         std::to_string(coords.size()));
    return Weight(coords);
}

Tensor::Tensor(TensorShape shape) : shape_(std::move(shape)), cartan_(shape_.kind, shape_.rank) {
    for (const auto& d : shape_.factors)
        factors_.push_back(FactorCrystal::get(shape_.kind, shape_.rank, d));
}

TensorWord Tensor::highest() const {
    TensorWord w;
    for (const auto& f : factors_)
        w.elems.push_back(f->highest());
    return w;
}

Weight Tensor::weight(const TensorWord& w) const {
    Weight wt = cartan_.zero_weight();
    for (std::size_t k = 0; k < factors_.size(); ++k)
        wt += factors_[k]->weight(w.elems[k]);
    return wt;
}

std::string Tensor::to_string(const TensorWord& w) const {
    if (w.elems.empty())
        return "()";
    std::string out;
    for (std::size_t k = w.elems.size(); k-- > 0;) {
        out += factors_[k]->to_string(w.elems[k]);
        if (k)
            out += " x ";
    }
    return out;
}

std::vector<Letter> Tensor::flatten(const TensorWord& w) const {
    std::vector<Letter> out;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        const auto& ls = factors_[k]->letters(w.elems[k]);
        out.insert(out.end(), ls.begin(), ls.end());
    }
    return out;
}

std::uint64_t Tensor::cardinality() const {
    std::uint64_t n = 1;
    for (const auto& f : factors_) {
        const auto s = static_cast<std::uint64_t>(f->size());
        if (n > std::numeric_limits<std::uint64_t>::max() / s)
            return std::numeric_limits<std::uint64_t>::max();
        n *= s;
    }
    return n;
}

namespace {

void check_color(const Tensor& B, int i) {
    if (i == 0 && !B.affine())
        throw UnsupportedError("0-arrows are only available for type A");
    if (i < 0 || i > B.cartan().rank())
        throw DomainError("color " + std::to_string(i) + " out of range");
}

} // namespace

std::optional<TensorWord> tensor_arrow(const Tensor& B, const TensorWord& w, int i, Dir dir) {
    check_color(B, i);
    const int pos = acting_position(
        w.elems.size(), dir, [&](std::size_t k) { return B.factor(k).eps(i, w.elems[k]); },
        [&](std::size_t k) { return B.factor(k).phi(i, w.elems[k]); });
    if (pos < 0)
        return std::nullopt;
    const auto p = static_cast<std::size_t>(pos);
    const int y = B.factor(p).arrow(i, w.elems[p], dir);
    if (y < 0)
        return std::nullopt;
    TensorWord r = w;
    r.elems[p] = y;
    return r;
}

std::pair<int, int> string_stats(const Tensor& B, const TensorWord& w, int i) {
    check_color(B, i);
    int eps = 0, phi = 0;
    for (std::size_t k = 0; k < w.elems.size(); ++k) {
        const int e = B.factor(k).eps(i, w.elems[k]);
        const int p = B.factor(k).phi(i, w.elems[k]);
        const int new_eps = std::max(eps, eps + e - phi);
        phi = std::max(p, phi + p - e);
        eps = new_eps;
    }
    return {eps, phi};
}

TensorWord reflection_s(const Tensor& B, const TensorWord& w, int i) {
    auto [eps, phi] = string_stats(B, w, i);
    TensorWord r = w;
    const Dir dir = phi > eps ? Dir::f : Dir::e;
    for (int k = std::abs(phi - eps); k > 0; --k) {
        auto next = tensor_arrow(B, r, i, dir);
        if (!next)
            throw ConsistencyError("string shorter than its statistics");
        r = std::move(*next);
    }
    return r;
}

std::optional<TensorWord> affine_arrow_A(const Tensor& B, const TensorWord& w, Dir dir) {
    if (!B.affine())
        throw UnsupportedError("0-arrows are only available for type A");
    return tensor_arrow(B, w, 0, dir);
}

bool is_classical_highest(const Tensor& B, const TensorWord& w) {
    for (int i = 1; i <= B.cartan().rank(); ++i)
        if (string_stats(B, w, i).first != 0)
            return false;
    return true;
}

std::vector<TensorWord> enumerate_paths(const Tensor& B, const Weight& Lambda, Restriction restriction,
                                        std::size_t cap) {
    const auto& data = B.cartan();
    if (static_cast<int>(Lambda.size()) != data.dim())
        throw DomainError("weight has the wrong dimension");
    if (restriction.kind == RestrictionKind::level) {
        if (!B.affine())
            throw UnsupportedError("level restriction needs 0-arrows, available for type A only");
        if (restriction.level < 0)
            throw DomainError("level must be nonnegative");
    }
    const bool restricted = restriction.kind != RestrictionKind::none;
    const bool level = restriction.kind == RestrictionKind::level;
    const int n = data.rank();
    const std::size_t L = B.length();
    const std::size_t dim = Lambda.size();

    // Per coordinate, the most any factor from position k on can still add.
    std::vector<std::vector<int>> reach(L + 1, std::vector<int>(dim, 0));
    std::vector<int> reach_abs(L + 1, 0);
    for (std::size_t k = L; k-- > 0;) {
        const auto& F = B.factor(k);
        reach[k] = reach[k + 1];
        int maxabs = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            int m = 0;
            for (int x = 0; x < F.size(); ++x)
                m = std::max(m, std::abs(F.weight(x)[c]));
            reach[k][c] += m;
        }
        for (int x = 0; x < F.size(); ++x) {
            int a = 0;
            for (std::size_t c = 0; c < dim; ++c)
                a += std::abs(F.weight(x)[c]);
            maxabs = std::max(maxabs, a);
        }
        reach_abs[k] = reach_abs[k + 1] + maxabs;
    }

    std::vector<TensorWord> out;
    TensorWord cur;
    cur.elems.assign(L, 0);
    Weight partial = data.zero_weight();
    std::size_t visited = 0;
    const int lo = B.min_color();
    // suffix statistics per color, per depth
    std::vector<std::vector<int>> seps(L + 1, std::vector<int>(static_cast<std::size_t>(n + 1), 0));
    std::vector<std::vector<int>> sphi = seps;

    auto feasible = [&](std::size_t k) {
        long dist = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            const int gap = Lambda[c] - partial[c];
            if (B.shape().kind == CartanKind::A && (gap < 0 || gap > reach[k][c]))
                return false;
            dist += std::abs(gap);
        }
        // type C letters all have |wt| = 1, so the remaining distance has fixed parity
        return dist <= reach_abs[k] && (B.shape().kind == CartanKind::A || (reach_abs[k] - dist) % 2 == 0);
    };

    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (++visited > cap)
            throw CapError("path enumeration exceeds cap " + std::to_string(cap));
        if (k == L) {
            if (partial == Lambda)
                out.push_back(cur);
            return;
        }
        const auto& F = B.factor(k);
        for (int x = 0; x < F.size(); ++x) {
            bool ok = true;
            for (int i = lo; i <= n; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                const int e = F.eps(i, x), p = F.phi(i, x);
                seps[k + 1][ui] = std::max(seps[k][ui], seps[k][ui] + e - sphi[k][ui]);
                sphi[k + 1][ui] = std::max(p, sphi[k][ui] + p - e);
                if (restricted && i >= 1 && seps[k + 1][ui] != 0)
                    ok = false;
                if (level && i == 0 && seps[k + 1][ui] > restriction.level)
                    ok = false;
            }
            if (!ok)
                continue;
            partial += F.weight(x);
            if (feasible(k + 1)) {
                cur.elems[k] = x;
                self(self, k + 1);
            }
            partial -= F.weight(x);
        }
    };
    if (feasible(0))
        rec(rec, 0);
    return out;
}

std::vector<TensorWord> all_words(const Tensor& B, std::size_t cap) {
    if (B.cardinality() > cap)
        throw CapError("crystal has more than " + std::to_string(cap) + " elements");
    std::vector<TensorWord> out;
    TensorWord cur;
    cur.elems.assign(B.length(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t k = 0;
        for (; k < B.length(); ++k) {
            if (++cur.elems[k] < B.factor(k).size())
                break;
            cur.elems[k] = 0;
        }
        if (k == B.length())
            break;
    }
    return out;
}

int crystal_level(const Tensor& B, std::size_t cap) {
    if (!B.affine())
        throw UnsupportedError("level needs 0-arrows, available for type A only");
    int best = std::numeric_limits<int>::max();
    for (const auto& w : all_words(B, cap)) {
        int s = 0;
        for (int i = 0; i <= B.cartan().rank(); ++i)
            s += string_stats(B, w, i).first;
        best = std::min(best, s);
    }
    return best;
}

} // namespace qcrystal
