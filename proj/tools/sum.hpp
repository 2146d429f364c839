#pragma once

#include "qcrystal/crystal.hpp"
#include "qcrystal/energy.hpp"
#include "qcrystal/qpoly.hpp"

#include <string>

namespace qcrystal::cli {

enum class SumMethod { direct, bosonic, fermionic, rc };

std::string to_string(SumMethod m);
SumMethod parse_sum_method(const std::string& s);
Restriction parse_restriction(const std::string& s, int level);
Statistic parse_statistic(const std::string& s);

// One configuration sum by the chosen method.  Throws UnsupportedError for
// combinations no method covers (e.g. fermionic without a restriction).
QLaurent compute_sum(const Tensor& B, const Weight& Lambda, Restriction restriction, Statistic stat,
                     SumMethod method, std::size_t cap = kDefaultVertexCap);

} // namespace qcrystal::cli
