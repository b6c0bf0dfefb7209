#pragma once

#include <filesystem>
#include <string>

#include "chaos/diagram.hpp"
#include "chaos/form.hpp"

namespace chaos {

// Form document:
//   {"k": int, "n": int,
//    "entries": [{"indices": [sorted 1-based ints], "value": real}, ...]}
// Unsorted or repeated indices are rejected.

SymmetricMultilinearForm parse_form(const std::string& text);
SymmetricMultilinearForm load_form(const std::filesystem::path& path);
std::string dump_form(const SymmetricMultilinearForm& form);

// Kernel document:
//   {"arity": int, "ground_size": int,
//    "values": [G^arity reals, first index most significant],
//    "measure": [G nonnegative reals]}   ("measure" defaults to all ones)

DiscreteKernel parse_kernel(const std::string& text);
DiscreteKernel load_kernel(const std::filesystem::path& path);

}  // namespace chaos
