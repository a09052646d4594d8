#include "pwlfix/io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace pwlfix {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

Rational entry_to_rational(const json& e, const std::string& where) {
    if (e.is_string()) {
        try {
            return parse_rational(e.get<std::string>());
        } catch (const ParseError& ex) {
            fail(where, ex.what());
        }
    }
    // Unsigned first: is_number_integer() is also true for unsigned storage.
    if (e.is_number_unsigned()) {
        const std::uint64_t v = e.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<long>::max())) fail(where, "integer out of range");
        return Rational(static_cast<long>(v));
    }
    if (e.is_number_integer()) return Rational(static_cast<long>(e.get<std::int64_t>()));
    if (e.is_number_float())
        fail(where, "non-integer numeric literals are ambiguous for the exact backend; quote the value "
                    "(e.g. \"1/2\" or \"0.5\")");
    fail(where, "expected a scalar token");
}

double entry_to_double(const json& e, const std::string& where) {
    if (e.is_number()) return e.get<double>();
    if (e.is_string()) {
        try {
            return parse_rational(e.get<std::string>()).to_double();
        } catch (const ParseError& ex) {
            fail(where, ex.what());
        }
    }
    fail(where, "expected a scalar token");
}

int read_dimension(const json& doc) {
    if (!doc.is_object()) throw ParseError("map JSON: expected an object at the top level");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("map JSON: missing integer field \"n\"");
    return doc["n"].get<int>();
}

bool read_backend(const json& doc) {
    if (!doc.contains("backend")) return false;
    const json& b = doc["backend"];
    if (!b.is_string() || (b != "float" && b != "rational"))
        throw ParseError("map JSON: field \"backend\" must be \"float\" or \"rational\"");
    return b == "float";
}

template <typename S, typename Fn>
Matrix<S> read_matrix(const json& doc, const char* field, int n, Fn to_scalar) {
    if (!doc.contains(field)) throw ParseError(std::string("map JSON: missing field \"") + field + "\"");
    const json& rows = doc[field];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError(std::string("map JSON: field \"") + field + "\" must be an array of " +
                         std::to_string(n) + " rows");
    Matrix<S> m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            fail(std::string(field) + " row " + std::to_string(i + 1), "expected " + std::to_string(n) + " entries");
        for (int j = 0; j < n; ++j)
            m(i, j) = to_scalar(row[j],
                                std::string(field) + " row " + std::to_string(i + 1) + " column " +
                                    std::to_string(j + 1));
    }
    return m;
}

template <typename S, typename Fn>
Vec<S> read_vector(const json& doc, const char* field, int n, Fn to_scalar) {
    if (!doc.contains(field)) throw ParseError(std::string("map JSON: missing field \"") + field + "\"");
    const json& arr = doc[field];
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
        throw ParseError(std::string("map JSON: field \"") + field + "\" must be an array of " +
                         std::to_string(n) + " entries");
    Vec<S> v(n);
    for (int i = 0; i < n; ++i) v[i] = to_scalar(arr[i], std::string(field) + " entry " + std::to_string(i + 1));
    return v;
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ParseError(std::string("map JSON: ") + ex.what());
    }
}

}  // namespace

LoadedMap parse_map_json(const std::string& text) {
    const json doc = parse_document(text);
    const int n = read_dimension(doc);
    LoadedMap out;
    out.is_float = read_backend(doc);
    if (out.is_float) {
        out.floating = PwlMap<double>(read_matrix<double>(doc, "A", n, entry_to_double),
                                      read_vector<double>(doc, "b", n, entry_to_double),
                                      read_vector<double>(doc, "c", n, entry_to_double));
    } else {
        out.rational = PwlMap<Rational>(read_matrix<Rational>(doc, "A", n, entry_to_rational),
                                        read_vector<Rational>(doc, "b", n, entry_to_rational),
                                        read_vector<Rational>(doc, "c", n, entry_to_rational));
    }
    return out;
}

LoadedMap load_map_file(const std::string& path) { return parse_map_json(read_text_file(path)); }

LoadedPiece parse_piece_json(const std::string& text) {
    const json doc = parse_document(text);
    const int n = read_dimension(doc);
    LoadedPiece out;
    out.is_float = read_backend(doc);
    if (out.is_float) {
        out.af = read_matrix<double>(doc, "A", n, entry_to_double);
        out.cf = read_vector<double>(doc, "c", n, entry_to_double);
    } else {
        out.a = read_matrix<Rational>(doc, "A", n, entry_to_rational);
        out.c = read_vector<Rational>(doc, "c", n, entry_to_rational);
    }
    return out;
}

LoadedPiece load_piece_file(const std::string& path) { return parse_piece_json(read_text_file(path)); }

std::string serialize_map(const PwlMap<Rational>& map) {
    json doc;
    doc["n"] = map.dim();
    json rows = json::array();
    for (int i = 0; i < map.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < map.dim(); ++j) row.push_back(map.a()(i, j).str());
        rows.push_back(std::move(row));
    }
    doc["A"] = std::move(rows);
    json b = json::array(), c = json::array();
    for (int i = 0; i < map.dim(); ++i) {
        b.push_back(map.b()[i].str());
        c.push_back(map.c()[i].str());
    }
    doc["b"] = std::move(b);
    doc["c"] = std::move(c);
    return doc.dump(2) + "\n";
}

std::string serialize_map(const PwlMap<double>& map) {
    json doc;
    doc["backend"] = "float";
    doc["n"] = map.dim();
    json rows = json::array();
    for (int i = 0; i < map.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < map.dim(); ++j) row.push_back(map.a()(i, j));
        rows.push_back(std::move(row));
    }
    doc["A"] = std::move(rows);
    json b = json::array(), c = json::array();
    for (int i = 0; i < map.dim(); ++i) {
        b.push_back(map.b()[i]);
        c.push_back(map.c()[i]);
    }
    doc["b"] = std::move(b);
    doc["c"] = std::move(c);
    return doc.dump(2) + "\n";
}

Vec<Rational> parse_vector_tokens(const std::string& csv, int n) {
    Vec<Rational> out;
    std::string token;
    std::istringstream stream(csv);
    while (std::getline(stream, token, ',')) out.push_back(parse_rational(token));
    if (static_cast<int>(out.size()) != n)
        throw ParseError("vector: expected " + std::to_string(n) + " comma-separated entries, got " +
                         std::to_string(out.size()));
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw ParseError("failed writing file: " + path);
}

}  // namespace pwlfix
