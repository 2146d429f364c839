#pragma once

// Hard hexagon paths and the polynomial Rogers-Ramanujan identities:
// the configuration sums X(L), X'(L) by four methods, the reformulation as
// paths in a strip of height four, and truncated series checks.

#include "qcrystal/qpoly.hpp"

#include <string>
#include <vector>

namespace qcrystal {

// sigma_0..sigma_L in {0,1}, no two adjacent 1s, sigma_L = 0.  sigma_0 = 0
// for D_L, sigma_0 = 1 for the primed set D'_L.
struct HHPath {
    std::vector<int> sigma;

    int length() const { return static_cast<int>(sigma.size()) - 1; }
    bool primed() const { return !sigma.empty() && sigma.front() == 1; }
    bool valid() const;
    int particles() const; // peaks at positions 1..L
};

// Sum of j * sigma_j over j = 1..L.  Throws DomainError on an invalid path.
long hh_energy(const HHPath& p);

constexpr int kMaxEnumerateLength = 24;

// All paths of D_L (or D'_L), ordered by particle number and then
// lexicographically.  Throws CapError for L > kMaxEnumerateLength.
std::vector<HHPath> hh_paths(int L, bool primed = false);

enum class HHMethod { enumerate, recurrence, fermionic, bosonic };
std::string to_string(HHMethod m);
HHMethod parse_hh_method(const std::string& s); // ParseError on unknown names

QLaurent hh_X(int L, HHMethod method, bool primed = false);

// The single summand of the alternating formula for index j.
QLaurent hh_bosonic_term(int L, int j, bool primed = false);

// Heights sigma_0..sigma_L of a +-1 path starting at height 3.
struct StripPath {
    std::vector<int> heights;

    int length() const { return static_cast<int>(heights.size()) - 1; }
    // 1 <= sigma_i <= 4 for all i.
    bool in_strip() const;
    // Witness indices 1 <= i_1 < ... < i_j <= L alternating between heights
    // above 4 and below 1, starting above 4 (up) or below 1 (down).
    bool has_witness(bool up, int j) const;
};

// Same question answered by exhaustive search over index sequences.
bool has_witness_bruteforce(const StripPath& p, bool up, int j);

// Sum over i = 1..L-1 of i * h(sigma_{i-1}, sigma_i, sigma_{i+1}), where h
// marks peaks above height 3 and valleys below height 2.
long strip_energy(const StripPath& p);

// Image of p in D_L under the Z_2 identification of the two state diagrams:
// sigma = 0 goes to heights {2,3}, sigma = 1 to {1,4}, by parity of i.
// Throws DomainError unless p is an unprimed valid path.
StripPath strip_transform(const HHPath& p);

// All +-1 paths of length L from height 3 with floor(L/2) up steps.
constexpr int kMaxStripLength = 20;
std::vector<StripPath> strip_paths(int L);

// Generating function of P_L^{down,j} (j > 0), P_L^{up,-j} (j < 0) or
// P_L (j = 0) by enumeration.
QLaurent strip_inclusion_exclusion(int L, int j);

// Generating function of the paths that stay in the strip.
QLaurent strip_bounded_gf(int L);

// Truncated check of the two Rogers-Ramanujan identities through q^N:
// sum side, product side, and the alternating sum times 1/(q)_infinity, plus
// the limit of X(L) (or X'(L)).
struct SeriesReport {
    int which = 1;
    long N = 0;
    TruncatedSeries fermionic{0};
    TruncatedSeries product{0};
    TruncatedSeries alternating{0};
    TruncatedSeries path_limit{0};
    long stable_length = -1; // first L where X(L) is stable through q^N
    bool fermionic_matches_product = false;
    bool alternating_matches_product = false;
    bool path_limit_matches = false;
    std::vector<std::string> findings;

    bool ok() const { return fermionic_matches_product && alternating_matches_product && path_limit_matches; }
    std::string to_json() const;
};

constexpr long kMaxSeriesOrder = 200;

SeriesReport rr_series_check(int which, long N);

} // namespace qcrystal
