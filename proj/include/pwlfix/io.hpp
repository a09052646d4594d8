#pragma once

#include <optional>
#include <string>

#include "pwlfix/pwlmap.hpp"

namespace pwlfix {

/// A map read from JSON, in whichever backend the file declared.
struct LoadedMap {
    bool is_float = false;
    std::optional<PwlMap<Rational>> rational;
    std::optional<PwlMap<double>> floating;

    const PwlMap<Rational>& exact() const { return *rational; }
    const PwlMap<double>& approx() const { return *floating; }
    /// The exact view used by classification: the map itself, or the exact
    /// conversion of the float map.
    PwlMap<Rational> to_exact() const { return is_float ? to_rational(*floating) : *rational; }
    int dim() const { return is_float ? floating->dim() : rational->dim(); }
};

/// One linear piece (A, c) of a two-piece map, as read for conversion.
struct LoadedPiece {
    bool is_float = false;
    std::optional<Matrix<Rational>> a;
    std::optional<Vec<Rational>> c;
    std::optional<Matrix<double>> af;
    std::optional<Vec<double>> cf;
};

/// Schema: {"n": 2, "A": [["1/2","0"],["0","1"]], "b": ["1","0"],
/// "c": ["0","0"]} with entries as exact tokens ("p/q", integer, decimal);
/// optional "backend": "float". Bare JSON integers are accepted exactly;
/// non-integer numeric literals must be quoted for the exact backend.
LoadedMap parse_map_json(const std::string& text);
LoadedMap load_map_file(const std::string& path);

/// Piece schema: {"n": 2, "A": [[...]], "c": [...]} plus optional "backend".
LoadedPiece parse_piece_json(const std::string& text);
LoadedPiece load_piece_file(const std::string& path);

std::string serialize_map(const PwlMap<Rational>& map);
std::string serialize_map(const PwlMap<double>& map);

/// Comma-separated exact tokens, same scalar grammar as map files.
Vec<Rational> parse_vector_tokens(const std::string& csv, int n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pwlfix
