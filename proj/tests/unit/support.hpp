#pragma once

#include <vector>

#include "framelab/abelian_group.hpp"
#include "oracle.hpp"

namespace test {

inline oracle::Group mirror(const framelab::AbelianGroup& g) { return oracle::Group{g.factors()}; }

inline std::vector<int> ints(const std::vector<framelab::Index>& v) { return {v.begin(), v.end()}; }

inline std::vector<framelab::Index> idx(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace test
