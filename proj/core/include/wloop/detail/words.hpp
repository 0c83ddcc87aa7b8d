#pragma once

// Step-code strings: one char per Step::code(). Internal to the solver and the loop operations.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wloop/lattice.hpp"

namespace wloop::detail {

inline unsigned char inv(unsigned char c) { return c ^ 1; }

std::string to_codes(const std::vector<Step>& steps);
std::vector<Step> to_steps(std::string_view codes);

// Free reduction of the word (not cyclic). If `pairs` is given, every cancelled pair of input
// positions is appended to it.
std::string reduce_linear(std::string_view w, std::vector<std::pair<std::size_t, std::size_t>>* pairs = nullptr);

// Full cyclic reduction, returns the cyclically reduced core.
std::string reduce_cyclic(std::string_view w);

std::size_t least_rotation(std::string_view w);

// Canonical codes of an already cyclically reduced word.
std::string canonical_rotation(std::string_view w);

// erase + canonicalize in one go.
inline std::string canonical_loop_codes(std::string_view w) { return canonical_rotation(reduce_cyclic(w)); }

// Componentwise minimum of the visited sites of the walk from the origin.
std::vector<int> min_corner(int dim, std::string_view w);

std::vector<Site> sites_from(const Site& base, std::string_view w);

}  // namespace wloop::detail
