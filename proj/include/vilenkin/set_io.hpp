#pragma once

#include "vilenkin/piece_stream.hpp"

#include <iosfwd>
#include <string>

namespace vilenkin {

/// Thrown on syntax and semantic errors in input files; carries line/column.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// Line-oriented set format, `#` comments:
///   p 3
///   cyl 1.
///   cyl 0.2
///   tail r 1 from 1 anchor 0. body { cyl 1. }
/// Digits >= p and overlapping pieces are rejected with a witness.
PieceStream parse_set(std::istream& in);
PieceStream parse_set_file(const std::string& path);
/// Canonical text: finite cells sorted and split to resolution >= 0,
/// followed by the tail families. parse(print(s)) == s, and printing a
/// canonical file reproduces it byte for byte.
std::string format_set(const PieceStream& s);

} // namespace vilenkin
