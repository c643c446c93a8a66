#include "toric/io.hpp"

#include <cctype>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace toric {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument(where + ": " + what);
}

bool is_decimal_integer(const std::string& s) {
    std::size_t i = (s.size() > 1 && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::size_t parse_index(const Json& j, const std::string& where) {
    Int x = parse_int_value(j, where);
    if (x < 0) fail(where, "expected a non-negative index");
    if (x > std::numeric_limits<std::size_t>::max() / 2) fail(where, "index out of range");
    return x.convert_to<std::size_t>();
}

const Json& member(const Json& doc, const char* key, const std::string& where) {
    auto it = doc.find(key);
    if (it == doc.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

void reject_unknown_fields(const Json& doc, std::initializer_list<const char*> keys,
                           const std::string& where) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) fail(where, "unexpected field \"" + it.key() + "\"");
    }
}

}  // namespace

Json int_value(const Int& x) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (x >= lo && x <= hi) return Json(x.convert_to<std::int64_t>());
    return Json(x.str());
}

Int parse_int_value(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (!is_decimal_integer(s)) fail(where, "expected a decimal integer, got \"" + s + "\"");
        return Int(s);
    }
    fail(where, "expected an integer");
}

Json rat_value(const Rat& q) {
    Json out;
    out["num"] = numerator(q).str();
    out["den"] = denominator(q).str();
    return out;
}

Json int_vector_value(const IntVec& v) {
    Json arr = Json::array();
    for (const Int& x : v) arr.push_back(int_value(x));
    return arr;
}

Json int_matrix_value(const IntMatrix& m) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(int_vector_value(m.row(i)));
    return arr;
}

IntMatrix parse_int_matrix(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of rows");
    std::vector<IntVec> rows;
    std::size_t width = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& rj = j[i];
        const std::string rw = where + "[" + std::to_string(i) + "]";
        if (!rj.is_array()) fail(rw, "expected an array of integers");
        IntVec row;
        for (std::size_t k = 0; k < rj.size(); ++k)
            row.push_back(parse_int_value(rj[k], rw + "[" + std::to_string(k) + "]"));
        if (i == 0)
            width = row.size();
        else if (row.size() != width)
            fail(rw, "row length differs from the first row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(where, "expected at least one row");
    return IntMatrix::from_rows(rows);
}

Json fan_document(const Fan& f) {
    Json doc;
    doc["rank"] = f.dim();
    Json rays = Json::array();
    for (const IntVec& r : f.rays()) rays.push_back(int_vector_value(r));
    doc["rays"] = std::move(rays);
    Json cones = Json::array();
    for (const auto& c : f.max_cones()) {
        Json cj = Json::array();
        for (std::size_t idx : c) cj.push_back(idx);
        cones.push_back(std::move(cj));
    }
    doc["max_cones"] = std::move(cones);
    return doc;
}

Fan parse_fan_document(const Json& doc, const std::string& where) {
    if (!doc.is_object()) fail(where, "expected an object");
    reject_unknown_fields(doc, {"rank", "rays", "max_cones"}, where);
    const std::size_t rank = parse_index(member(doc, "rank", where), where + ".rank");

    const Json& rays_j = member(doc, "rays", where);
    if (!rays_j.is_array()) fail(where + ".rays", "expected an array");
    std::vector<IntVec> rays;
    for (std::size_t i = 0; i < rays_j.size(); ++i) {
        const std::string rw = where + ".rays[" + std::to_string(i) + "]";
        const Json& rj = rays_j[i];
        if (!rj.is_array()) fail(rw, "expected an array of integers");
        if (rj.size() != rank)
            fail(rw, "expected " + std::to_string(rank) + " coordinates, got " +
                         std::to_string(rj.size()));
        IntVec v;
        for (std::size_t k = 0; k < rj.size(); ++k)
            v.push_back(parse_int_value(rj[k], rw + "[" + std::to_string(k) + "]"));
        rays.push_back(std::move(v));
    }

    const Json& cones_j = member(doc, "max_cones", where);
    if (!cones_j.is_array()) fail(where + ".max_cones", "expected an array");
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i < cones_j.size(); ++i) {
        const std::string cw = where + ".max_cones[" + std::to_string(i) + "]";
        const Json& cj = cones_j[i];
        if (!cj.is_array()) fail(cw, "expected an array of ray indices");
        std::vector<std::size_t> cone;
        for (std::size_t k = 0; k < cj.size(); ++k) {
            std::size_t idx = parse_index(cj[k], cw + "[" + std::to_string(k) + "]");
            if (idx >= rays.size())
                fail(cw + "[" + std::to_string(k) + "]",
                     "ray index " + std::to_string(idx) + " out of range (fan has " +
                         std::to_string(rays.size()) + " rays)");
            cone.push_back(idx);
        }
        cones.push_back(std::move(cone));
    }
    return Fan(rank, std::move(rays), std::move(cones));
}

Json morphism_document(const ToricMorphism& m) {
    Json doc;
    doc["source"] = fan_document(m.source);
    doc["target"] = fan_document(m.target);
    doc["matrix"] = int_matrix_value(m.map);
    return doc;
}

ToricMorphism parse_morphism_document(const Json& doc, const std::string& where) {
    if (!doc.is_object()) fail(where, "expected an object");
    reject_unknown_fields(doc, {"source", "target", "matrix"}, where);
    Fan source = parse_fan_document(member(doc, "source", where), where + ".source");
    Fan target = parse_fan_document(member(doc, "target", where), where + ".target");
    IntMatrix map = parse_int_matrix(member(doc, "matrix", where), where + ".matrix");
    if (map.rows() != target.dim() || map.cols() != source.dim())
        fail(where + ".matrix", "expected a " + std::to_string(target.dim()) + " x " +
                                    std::to_string(source.dim()) + " matrix, got " +
                                    std::to_string(map.rows()) + " x " +
                                    std::to_string(map.cols()));
    return ToricMorphism{std::move(source), std::move(target), std::move(map)};
}

std::string serialize_document(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse_document_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("document parse error: ") + e.what());
    }
}

std::string fnv1a_digest(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace toric
