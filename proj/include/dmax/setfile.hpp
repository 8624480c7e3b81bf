// setfile.hpp -- the on-disk format for point sets.
//
//   # optional comment lines
//   dmax v1 n=<int> r=<int>
//   # d=<int>            (optional declared diameter, emitted when known)
//   <r space-separated integers in 1..n>   one member per line
//
// Members are serialized in lexicographic order with single spaces and a
// trailing newline, so parse followed by serialize is byte-stable.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dmax/core.hpp"

namespace dmax {

class setfile_error : public std::runtime_error {
public:
    setfile_error(const std::string& origin, int line, int column, const std::string& what)
        : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                             ": " + what),
          line_number(line),
          column_number(column) {}
    int line_number;
    int column_number;
};

struct SetFile {
    PointSet set;
    std::optional<int> declared_d;
};

SetFile parse_setfile(std::istream& in, const std::string& origin);
SetFile load_setfile(const std::string& path);

std::string serialize_setfile(const PointSet& s, std::optional<int> declared_d = std::nullopt);
void save_setfile(const std::string& path, const PointSet& s,
                  std::optional<int> declared_d = std::nullopt);

}  // namespace dmax
