#ifndef TORIC_IO_HPP
#define TORIC_IO_HPP

#include <json.hpp>
#include <string>

#include "toric/exactla.hpp"
#include "toric/fan.hpp"
#include "toric/morphism.hpp"

namespace toric {

using Json = nlohmann::json;

/// JSON number when the value fits 64 bits, decimal string otherwise; both
/// forms are accepted on input, so round-trips are lossless for any size.
Json int_value(const Int& x);
Int parse_int_value(const Json& j, const std::string& where);

/// Rational as {"num": "<decimal>", "den": "<decimal>"}; always normalized
/// (positive denominator, lowest terms).
Json rat_value(const Rat& q);

Json int_vector_value(const IntVec& v);
Json int_matrix_value(const IntMatrix& m);
IntMatrix parse_int_matrix(const Json& j, const std::string& where);

/// Fan document: {"rank": n, "rays": [[..]..], "max_cones": [[..]..]}.
Json fan_document(const Fan& f);
Fan parse_fan_document(const Json& doc, const std::string& where = "fan");

/// Morphism document: {"source": <fan>, "target": <fan>, "matrix": [[..]..]}.
Json morphism_document(const ToricMorphism& m);
ToricMorphism parse_morphism_document(const Json& doc, const std::string& where = "morphism");

/// Canonical rendering: sorted keys, two-space indent, trailing newline.
std::string serialize_document(const Json& doc);

/// Parse text into a document; malformed input raises std::invalid_argument
/// whose message carries the parser's position diagnostics.
Json parse_document_text(const std::string& text);

/// FNV-1a 64-bit digest, 16 lowercase hex digits.
std::string fnv1a_digest(const std::string& text);

}  // namespace toric

#endif  // TORIC_IO_HPP
