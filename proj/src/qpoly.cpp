#include "qcrystal/qpoly.hpp"

#include "qcrystal/errors.hpp"

#include <json.hpp>

#include <mutex>
#include <sstream>
#include <unordered_map>

namespace qcrystal {

QLaurent QLaurent::constant(const BigInt& c) { return monomial(0, c); }

QLaurent QLaurent::monomial(long exponent, const BigInt& c) {
    QLaurent p;
    p.add_term(exponent, c);
    return p;
}

BigInt QLaurent::coeff(long exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
}

long QLaurent::min_exponent() const {
    if (terms_.empty())
        throw DomainError("min_exponent of zero polynomial");
    return terms_.begin()->first;
}

long QLaurent::max_exponent() const {
    if (terms_.empty())
        throw DomainError("max_exponent of zero polynomial");
    return terms_.rbegin()->first;
}

BigInt QLaurent::at_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : terms_)
        s += c;
    return s;
}

bool QLaurent::nonnegative() const {
    for (const auto& [e, c] : terms_)
        if (sgn(c) < 0)
            return false;
    return true;
}

bool QLaurent::palindromic() const {
    if (terms_.empty())
        return true;
    const long lo = min_exponent(), hi = max_exponent();
    for (const auto& [e, c] : terms_)
        if (coeff(lo + hi - e) != c)
            return false;
    return true;
}

void QLaurent::add_term(long exponent, const BigInt& c) {
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

QLaurent QLaurent::shifted(long k) const {
    QLaurent r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), e + k, c);
    return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& r) {
    for (const auto& [e, c] : r.terms_)
        add_term(e, c);
    return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& r) {
    for (const auto& [e, c] : r.terms_)
        add_term(e, -c);
    return *this;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    // Accumulate densely over the product's exponent window.
    const long lo = a.min_exponent() + b.min_exponent();
    const long hi = a.max_exponent() + b.max_exponent();
    std::vector<BigInt> acc(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            mpz_addmul(acc[static_cast<std::size_t>(ea + eb - lo)].get_mpz_t(), ca.get_mpz_t(),
                       cb.get_mpz_t());
    QLaurent r;
    for (std::size_t k = 0; k < acc.size(); ++k)
        if (sgn(acc[k]) != 0)
            r.terms_.emplace_hint(r.terms_.end(), lo + static_cast<long>(k), std::move(acc[k]));
    return r;
}

QLaurent& QLaurent::operator*=(const QLaurent& r) { return *this = *this * r; }

QLaurent& QLaurent::operator*=(const BigInt& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

QLaurent QLaurent::operator-() const {
    QLaurent r = *this;
    for (auto& [e, v] : r.terms_)
        v = -v;
    return r;
}

std::string QLaurent::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_)
        arr.push_back(nlohmann::json::array({e, c.get_str()}));
    return arr.dump();
}

QLaurent QLaurent::from_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("polynomial JSON: ") + ex.what());
    }
    if (!arr.is_array())
        throw ParseError("polynomial JSON must be an array");
    QLaurent p;
    for (const auto& term : arr) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
            !term[1].is_string())
            throw ParseError("polynomial JSON term must be [exponent, \"coefficient\"]");
        BigInt c;
        if (c.set_str(term[1].get<std::string>(), 10) != 0)
            throw ParseError("bad coefficient in polynomial JSON");
        p.add_term(term[0].get<long>(), c);
    }
    return p;
}

std::string QLaurent::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt mag = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        if (e == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << mag.get_str();
        os << "q";
        if (e != 1)
            os << "^" << e;
    }
    return os.str();
}

QLaurent poly_arith(const QLaurent& p, const QLaurent& r, ArithKind kind) {
    switch (kind) {
    case ArithKind::add:
        return p + r;
    case ArithKind::sub:
        return p - r;
    case ArithKind::mul:
        return p * r;
    }
    return {};
}

namespace {

// Dense in-place helpers on coefficient vectors indexed from q^0.
void dense_mul_one_minus(std::vector<BigInt>& v, long k) {
    const std::size_t old = v.size();
    v.resize(old + static_cast<std::size_t>(k));
    for (std::size_t e = v.size(); e-- > static_cast<std::size_t>(k);)
        v[e] -= v[e - static_cast<std::size_t>(k)];
}

// Exact division by (1 - q^k); throws if the remainder is nonzero.
void dense_div_one_minus(std::vector<BigInt>& v, long k) {
    const auto sk = static_cast<std::size_t>(k);
    for (std::size_t e = sk; e < v.size(); ++e)
        v[e] += v[e - sk];
    // The quotient has degree deg - k; the top k coefficients must vanish.
    for (std::size_t t = 0; t < sk && !v.empty(); ++t) {
        if (sgn(v.back()) != 0)
            throw ConsistencyError("inexact division by (1 - q^k) in q-binomial");
        v.pop_back();
    }
}

struct PairHash {
    std::size_t operator()(const std::pair<long, long>& p) const noexcept {
        return std::hash<long>()(p.first) * 1000003u ^ std::hash<long>()(p.second);
    }
};

} // namespace

QLaurent qbinomial(long width, long height) {
    if (width < 0 || height < 0)
        return {};
    if (width == 0 || height == 0)
        return QLaurent::constant(1);
    if (height > width)
        std::swap(width, height);

    static std::mutex mu;
    static std::unordered_map<std::pair<long, long>, QLaurent, PairHash> memo;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find({width, height}); it != memo.end())
            return it->second;
    }

    // [width + j over j] = [width + j - 1 over j - 1] (1 - q^{width+j}) / (1 - q^j)
    std::vector<BigInt> v{BigInt(1)};
    for (long j = 1; j <= height; ++j) {
        dense_mul_one_minus(v, width + j);
        dense_div_one_minus(v, j);
    }
    QLaurent r;
    for (std::size_t e = 0; e < v.size(); ++e)
        r.add_term(static_cast<long>(e), v[e]);

    std::lock_guard lock(mu);
    memo.emplace(std::make_pair(width, height), r);
    return r;
}

QLaurent qbinomial_top(long top, long bottom) { return qbinomial(top - bottom, bottom); }

QLaurent qmultinomial(long total, std::span<const long> parts) {
    long sum = 0;
    for (long p : parts) {
        if (p < 0)
            return {};
        sum += p;
    }
    if (sum != total)
        return {};
    // Product of successive binomials [p_1 + ... + p_k over p_k].
    QLaurent r = QLaurent::constant(1);
    long acc = 0;
    for (long p : parts) {
        r *= qbinomial(acc, p);
        acc += p;
    }
    return r;
}

QLaurent invert_q(const QLaurent& p) {
    QLaurent r;
    for (const auto& [e, c] : p.terms())
        r.add_term(-e, c);
    return r;
}

QLaurent q_pochhammer(long n) {
    std::vector<BigInt> v{BigInt(1)};
    for (long k = 1; k <= n; ++k)
        dense_mul_one_minus(v, k);
    QLaurent r;
    for (std::size_t e = 0; e < v.size(); ++e)
        r.add_term(static_cast<long>(e), v[e]);
    return r;
}

TruncatedSeries::TruncatedSeries(long cutoff) {
    if (cutoff < 0)
        throw DomainError("series cutoff must be nonnegative");
    coeffs_.assign(static_cast<std::size_t>(cutoff + 1), BigInt(0));
}

TruncatedSeries TruncatedSeries::one(long cutoff) {
    TruncatedSeries s(cutoff);
    s.coeffs_[0] = 1;
    return s;
}

TruncatedSeries TruncatedSeries::from_poly(const QLaurent& p, long cutoff) {
    TruncatedSeries s(cutoff);
    for (const auto& [e, c] : p.terms()) {
        if (e < 0)
            throw DomainError("negative exponent cannot enter a power series");
        if (e <= cutoff)
            s.coeffs_[static_cast<std::size_t>(e)] = c;
    }
    return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& r) {
    if (r.cutoff() != cutoff())
        throw DomainError("series cutoffs differ");
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] += r.coeffs_[k];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& r) {
    if (r.cutoff() != cutoff())
        throw DomainError("series cutoffs differ");
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] -= r.coeffs_[k];
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.cutoff() != b.cutoff())
        throw DomainError("series cutoffs differ");
    TruncatedSeries r(a.cutoff());
    const std::size_t n = a.coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a.coeffs_[i]) == 0)
            continue;
        for (std::size_t j = 0; i + j < n; ++j)
            mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                       b.coeffs_[j].get_mpz_t());
    }
    return r;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
    const BigInt& c0 = coeffs_[0];
    if (c0 != 1 && c0 != -1)
        throw DomainError("series reciprocal needs constant term +-1");
    TruncatedSeries r(cutoff());
    r.coeffs_[0] = c0;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        BigInt s = 0;
        for (std::size_t j = 1; j <= k; ++j)
            mpz_addmul(s.get_mpz_t(), coeffs_[j].get_mpz_t(), r.coeffs_[k - j].get_mpz_t());
        r.coeffs_[k] = -s * c0;
    }
    return r;
}

void TruncatedSeries::mul_one_minus(long k) {
    if (k <= 0)
        throw DomainError("factor exponent must be positive");
    const auto sk = static_cast<std::size_t>(k);
    for (std::size_t e = coeffs_.size(); e-- > sk;)
        coeffs_[e] -= coeffs_[e - sk];
}

void TruncatedSeries::div_one_minus(long k) {
    if (k <= 0)
        throw DomainError("factor exponent must be positive");
    const auto sk = static_cast<std::size_t>(k);
    for (std::size_t e = sk; e < coeffs_.size(); ++e)
        coeffs_[e] += coeffs_[e - sk];
}

std::string TruncatedSeries::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (sgn(coeffs_[k]) != 0)
            arr.push_back(nlohmann::json::array({static_cast<long>(k), coeffs_[k].get_str()}));
    return arr.dump();
}

TruncatedSeries truncated_product(std::span<const Progression> progressions, long cutoff,
                                  bool reciprocal) {
    if (cutoff < 0)
        throw DomainError("truncated_product: cutoff must be nonnegative");
    TruncatedSeries s = TruncatedSeries::one(cutoff);
    for (const auto& pr : progressions) {
        if (pr.modulus < 1)
            throw DomainError("truncated_product: modulus must be >= 1");
        long first = ((pr.residue % pr.modulus) + pr.modulus) % pr.modulus;
        if (first == 0)
            first = pr.modulus;
        for (long k = first; k <= cutoff; k += pr.modulus) {
            if (reciprocal)
                s.div_one_minus(k);
            else
                s.mul_one_minus(k);
        }
    }
    return s;
}

} // namespace qcrystal
