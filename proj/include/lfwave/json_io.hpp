#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lfwave/transform.hpp"

namespace lfwave {

using Json = nlohmann::json;

/// Malformed or mistyped interchange files (CLI exit code 3).
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr const char* kFormatTag = "lfwave/1";

// Field elements serialize as {"p":2,"s":1,"blocks":{"-1":[1]}}; block keys
// are decimal index strings. Coset addresses store their lowest
// representable digit index: {"base":-2,"digits":{"-2":[1],"0":[1]}} is a
// coset of (K_{-2}^+)^perp. Spectra store the resolution exponent L with
// the opposite sign: {"base":2,"values":[...]} is constant on those same
// cosets.

Json to_json(const GFBlock& b);
GFBlock block_from_json(FieldParams params, const Json& j);

Json to_json(const FieldElement& x);
FieldElement field_element_from_json(const Json& j);

Json to_json(const CosetAddress& a);
CosetAddress address_from_json(FieldParams params, const Json& j);

Json spectrum_values_to_json(const SpectralStepFunction& f);
SpectralStepFunction spectrum_values_from_json(FieldParams params, int base,
                                               const Json& values);
Json to_json(const SpectralStepFunction& f);  // {"base":L,"values":[...]}

Json to_json(const ValidTree& t);
ValidTree tree_from_json(const Json& j);

Json to_json(const ElementarySet& set);
ElementarySet elementary_set_from_json(const Json& j);

Json mask_to_json(const Mask& mask);
/// Rebuilds the mask against the elementary set of the given tree.
Mask mask_from_json(const ValidTree& tree, const Json& j);

Json family_to_json(const MRAFamily& family, const ValidTree& tree);
/// Returns the provenance tree and the rebuilt family; stored spectra are
/// not trusted, callers cross-check them via family_stored_deviation.
std::pair<ValidTree, MRAFamily> family_from_json(const Json& j);
/// Max |stored - recomputed| over the scaling and dual scaling spectra.
double family_stored_deviation(const Json& j, const MRAFamily& rebuilt);

Json system_to_json(const WaveletSystem& system, const ValidTree& tree);
std::pair<ValidTree, WaveletSystem> system_from_json(const Json& j);
double system_stored_deviation(const Json& j, const WaveletSystem& rebuilt);

/// Wraps a payload as {"format":"lfwave/1","type":type,...payload}.
Json wrap_document(const std::string& type, Json payload);
/// Checks format and type tags; returns the payload view.
const Json& expect_document(const Json& doc, const std::string& type);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& doc);

}  // namespace lfwave
