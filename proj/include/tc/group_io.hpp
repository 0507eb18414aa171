#pragma once

#include <string>
#include <vector>

#include "tc/perm_group.hpp"

namespace tc {

// Group input: a "degree N" header, then one generator per line in 1-indexed
// cycle notation. Blank lines and lines starting with '#' are ignored.
// A JSON object {"degree": N, "generators": ["(1 2 3)", ...]} is accepted too.
struct GroupSpec {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

GroupSpec parse_group(const std::string& text);
GroupSpec read_group_file(const std::string& path);
PermGroup load_group(const std::string& path);

std::string format_group(const PermGroup& G);       // text form, round-trips through parse_group
std::string format_group_json(const PermGroup& G);  // JSON form

}  // namespace tc
