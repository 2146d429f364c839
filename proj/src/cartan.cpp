#include "qcrystal/cartan.hpp"

#include "qcrystal/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace qcrystal {

std::string to_string(CartanKind kind) { return kind == CartanKind::A ? "A" : "C"; }

Weight& Weight::operator+=(const Weight& r) {
    if (r.size() != size())
        throw DomainError("weight dimension mismatch");
    for (std::size_t k = 0; k < size(); ++k)
        coords[k] += r.coords[k];
    return *this;
}

Weight& Weight::operator-=(const Weight& r) {
    if (r.size() != size())
        throw DomainError("weight dimension mismatch");
    for (std::size_t k = 0; k < size(); ++k)
        coords[k] -= r.coords[k];
    return *this;
}

Weight operator*(int k, Weight a) {
    for (auto& x : a.coords)
        x *= k;
    return a;
}

std::string Weight::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < size(); ++k)
        os << (k ? "," : "") << coords[k];
    os << ")";
    return os.str();
}

long dot(const Weight& a, const Weight& b) {
    if (a.size() != b.size())
        throw DomainError("weight dimension mismatch");
    long s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += static_cast<long>(a[k]) * b[k];
    return s;
}

CartanData::CartanData(CartanKind kind, int rank) : kind_(kind), rank_(rank) {
    if (rank < 1)
        throw DomainError("rank must be at least 1");
    const auto d = static_cast<std::size_t>(dim());
    for (int a = 1; a <= rank; ++a) {
        Weight alpha(std::vector<int>(d, 0));
        if (kind == CartanKind::C && a == rank) {
            alpha[static_cast<std::size_t>(a - 1)] = 2;
        } else {
            alpha[static_cast<std::size_t>(a - 1)] = 1;
            alpha[static_cast<std::size_t>(a)] = -1;
        }
        roots_.push_back(alpha);

        Weight fw(std::vector<int>(d, 0));
        for (int k = 0; k < a; ++k)
            fw[static_cast<std::size_t>(k)] = 1;
        fundamentals_.push_back(fw);
    }
    rho_ = Weight(std::vector<int>(d, 0));
    for (std::size_t k = 0; k < d; ++k)
        rho_[k] = static_cast<int>(d - 1 - k) + (kind == CartanKind::C ? 1 : 0);
}

long CartanData::doubled_pairing(const Weight& x, const Weight& y) const {
    return kind_ == CartanKind::A ? 2 * dot(x, y) : dot(x, y);
}

int CartanData::doubled_pairing(int a, int b) const {
    return static_cast<int>(doubled_pairing(simple_root(a), simple_root(b)));
}

int CartanData::t(int a) const { return 4 / doubled_pairing(a, a); }

int CartanData::cartan_matrix(int a, int b) const { return t(a) * doubled_pairing(a, b) / 2; }

int CartanData::coroot_pairing(int a, const Weight& x) const {
    const long v = t(a) * doubled_pairing(simple_root(a), x);
    if (v % 2 != 0)
        throw ConsistencyError("non-integral coroot pairing");
    return static_cast<int>(v / 2);
}

bool CartanData::is_dominant(const Weight& w) const {
    for (int a = 1; a <= rank_; ++a)
        if (coroot_pairing(a, w) < 0)
            return false;
    return true;
}

std::vector<int> CartanData::dynkin_labels(const Weight& w) const {
    std::vector<int> out;
    for (int a = 1; a <= rank_; ++a)
        out.push_back(coroot_pairing(a, w));
    return out;
}

Weight CartanData::from_dynkin_labels(std::span<const int> labels) const {
    if (static_cast<int>(labels.size()) != rank_)
        throw DomainError("expected one Dynkin label per node");
    Weight w = zero_weight();
    for (int a = 1; a <= rank_; ++a)
        w += labels[static_cast<std::size_t>(a - 1)] * fundamental_weight(a);
    return w;
}

std::optional<std::vector<long>> CartanData::root_coordinates(const Weight& v) const {
    if (static_cast<int>(v.size()) != dim())
        throw DomainError("weight dimension mismatch");
    std::vector<long> s(static_cast<std::size_t>(rank_), 0);
    for (int k = 1; k <= rank_; ++k) {
        long rest = v[static_cast<std::size_t>(k - 1)];
        if (k > 1)
            rest -= s[static_cast<std::size_t>(k - 2)] *
                    simple_root(k - 1)[static_cast<std::size_t>(k - 1)];
        const long diag = simple_root(k)[static_cast<std::size_t>(k - 1)];
        if (rest % diag != 0)
            return std::nullopt;
        s[static_cast<std::size_t>(k - 1)] = rest / diag;
    }
    Weight check = zero_weight();
    for (int a = 1; a <= rank_; ++a)
        check += static_cast<int>(s[static_cast<std::size_t>(a - 1)]) * simple_root(a);
    if (!(check == v))
        return std::nullopt;
    return s;
}

Weight WeylElement::act(const Weight& x) const {
    Weight r = x;
    for (std::size_t k = 0; k < perm.size(); ++k)
        r[k] = sign[k] * x[static_cast<std::size_t>(perm[k])];
    return r;
}

int WeylElement::determinant() const {
    int d = 1;
    for (int s : sign)
        d *= s;
    std::vector<int> seen(perm.size(), 0);
    for (std::size_t k = 0; k < perm.size(); ++k) {
        if (seen[k])
            continue;
        std::size_t len = 0;
        for (std::size_t j = k; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0)
            d = -d;
    }
    return d;
}

WeylElement WeylElement::compose(const WeylElement& right) const {
    WeylElement r;
    r.perm.resize(perm.size());
    r.sign.resize(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        const auto p = static_cast<std::size_t>(perm[k]);
        r.perm[k] = right.perm[p];
        r.sign[k] = sign[k] * right.sign[p];
    }
    r.word = word;
    r.word.insert(r.word.end(), right.word.begin(), right.word.end());
    return r;
}

bool WeylElement::is_identity() const {
    for (std::size_t k = 0; k < perm.size(); ++k)
        if (perm[k] != static_cast<int>(k) || sign[k] != 1)
            return false;
    return true;
}

WeylElement weyl_identity(const CartanData& data) {
    WeylElement e;
    e.perm.resize(static_cast<std::size_t>(data.dim()));
    std::iota(e.perm.begin(), e.perm.end(), 0);
    e.sign.assign(e.perm.size(), 1);
    return e;
}

WeylElement weyl_generator(const CartanData& data, int i) {
    if (i < 1 || i > data.rank())
        throw DomainError("Weyl generator index out of range");
    WeylElement g = weyl_identity(data);
    if (data.kind() == CartanKind::C && i == data.rank()) {
        g.sign[static_cast<std::size_t>(i - 1)] = -1;
    } else {
        std::swap(g.perm[static_cast<std::size_t>(i - 1)], g.perm[static_cast<std::size_t>(i)]);
    }
    g.word = {i};
    return g;
}

std::vector<WeylElement> weyl_enumerate(const CartanData& data, int max_rank) {
    if (data.rank() > max_rank)
        throw CapError("Weyl group enumeration: rank " + std::to_string(data.rank()) +
                       " exceeds bound " + std::to_string(max_rank));
    std::vector<WeylElement> out;
    std::map<std::pair<std::vector<int>, std::vector<int>>, bool> seen;
    std::deque<WeylElement> queue{weyl_identity(data)};
    seen[{queue.front().perm, queue.front().sign}] = true;
    while (!queue.empty()) {
        WeylElement g = std::move(queue.front());
        queue.pop_front();
        for (int i = 1; i <= data.rank(); ++i) {
            WeylElement h = g.compose(weyl_generator(data, i));
            if (seen.emplace(std::make_pair(h.perm, h.sign), true).second)
                queue.push_back(std::move(h));
        }
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

// r_0 = (linear part, translation) at the given level.
std::pair<WeylElement, Weight> affine_generator(const CartanData& data, int level) {
    const int c = level + data.h_dual();
    WeylElement lin = weyl_identity(data);
    Weight tau = data.zero_weight();
    if (data.kind() == CartanKind::A) {
        std::swap(lin.perm.front(), lin.perm.back());
        tau[0] = c;
        tau[tau.size() - 1] = -c;
    } else {
        lin.sign[0] = -1;
        tau[0] = 2 * c;
    }
    lin.word = {0};
    return {lin, tau};
}

} // namespace

Weight apply_simple_reflection(const CartanData& data, int i, const Weight& v,
                               std::optional<int> level) {
    if (static_cast<int>(v.size()) != data.dim())
        throw DomainError("weight dimension mismatch");
    if (i < 0 || i > data.rank())
        throw DomainError("reflection index out of range");
    if (i > 0)
        return weyl_generator(data, i).act(v);
    if (!level)
        throw DomainError("r_0 requires a level");
    auto [lin, tau] = affine_generator(data, *level);
    return lin.act(v) + tau;
}

Weight AffineWeylElement::act(const Weight& x) const { return linear.act(x) + translation; }

AffineWeylElement AffineWeylElement::compose_generator(const CartanData& data, int i,
                                                       int level) const {
    AffineWeylElement r;
    r.word = word;
    r.word.push_back(i);
    if (i != 0) {
        r.linear = linear.compose(weyl_generator(data, i));
        r.translation = translation;
        return r;
    }
    auto [lin, tau] = affine_generator(data, level);
    r.linear = linear.compose(lin);
    r.translation = linear.act(tau) + translation;
    return r;
}

AffineWeylElement affine_identity(const CartanData& data) {
    return AffineWeylElement{weyl_identity(data), data.zero_weight(), {}};
}

int translation_guard(const CartanData& data) { return data.kind() == CartanKind::A ? 1 : 2; }

int translation_radius(const CartanData& data, int level, int weight_bound) {
    if (weight_bound < 0)
        throw DomainError("weight bound must be nonnegative");
    const int c = level + data.h_dual();
    const int reach = 2 * weight_bound + 2 * data.rank();
    int core = (reach + c - 1) / c;
    if (data.kind() == CartanKind::C && core % 2 != 0)
        ++core;
    return core + translation_guard(data);
}

bool in_translation_lattice(const CartanData& data, const Weight& beta) {
    if (data.kind() == CartanKind::A)
        return std::accumulate(beta.coords.begin(), beta.coords.end(), 0) == 0;
    return std::all_of(beta.coords.begin(), beta.coords.end(), [](int x) { return x % 2 == 0; });
}

std::vector<Weight> translation_lattice_box(const CartanData& data, int level, int weight_bound) {
    const int radius = translation_radius(data, level, weight_bound);
    const int step = data.kind() == CartanKind::A ? 1 : 2;
    std::vector<Weight> out;
    Weight cur = data.zero_weight();
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == cur.size()) {
            if (in_translation_lattice(data, cur))
                out.push_back(cur);
            return;
        }
        for (int x = -radius; x <= radius; x += step) {
            cur[k] = x;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace qcrystal
