#include "lfwave/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace lfwave {

namespace {

FieldParams params_from_json(const Json& j) {
  if (!j.contains("p") || !j.contains("s"))
    throw SchemaError("missing field parameters p, s");
  FieldParams params{j.at("p").get<std::uint32_t>(),
                     j.at("s").get<std::uint32_t>()};
  try {
    validate_params(params);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  return params;
}

Json params_to_json(const FieldParams& params) {
  return Json{{"p", params.p}, {"s", params.s}};
}

int parse_index_key(const std::string& key) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(key, &pos);
    if (pos != key.size()) throw SchemaError("bad index key: " + key);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("bad index key: " + key);
  }
}

}  // namespace

Json to_json(const GFBlock& b) { return Json(b.digits()); }

GFBlock block_from_json(FieldParams params, const Json& j) {
  if (!j.is_array()) throw SchemaError("block must be an array of digits");
  try {
    return GFBlock(params, j.get<std::vector<std::uint32_t>>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const FieldElement& x) {
  Json blocks = Json::object();
  for (const auto& [idx, b] : x.blocks())
    blocks[std::to_string(idx)] = to_json(b);
  Json j = params_to_json(x.params());
  j["blocks"] = std::move(blocks);
  return j;
}

FieldElement field_element_from_json(const Json& j) {
  FieldParams params = params_from_json(j);
  std::map<int, GFBlock> blocks;
  if (j.contains("blocks")) {
    for (const auto& [key, value] : j.at("blocks").items())
      blocks.emplace(parse_index_key(key), block_from_json(params, value));
  }
  return FieldElement(params, std::move(blocks));
}

Json to_json(const CosetAddress& a) {
  Json digits = Json::object();
  for (const auto& [idx, b] : a.digits())
    digits[std::to_string(idx)] = to_json(b);
  // The stored base is the lowest digit index -L.
  return Json{{"base", -a.base()}, {"digits", std::move(digits)}};
}

CosetAddress address_from_json(FieldParams params, const Json& j) {
  if (!j.contains("base")) throw SchemaError("address misses base");
  const int base = -j.at("base").get<int>();
  std::map<int, GFBlock> digits;
  if (j.contains("digits")) {
    for (const auto& [key, value] : j.at("digits").items())
      digits.emplace(parse_index_key(key), block_from_json(params, value));
  }
  try {
    return CosetAddress(params, base, std::move(digits));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json spectrum_values_to_json(const SpectralStepFunction& f) {
  Json values = Json::array();
  for (const auto& [addr, v] : f.values())
    values.push_back(Json{
        {"addr", to_json(addr)}, {"re", v.real()}, {"im", v.imag()}});
  return values;
}

SpectralStepFunction spectrum_values_from_json(FieldParams params, int base,
                                               const Json& values) {
  if (!values.is_array()) throw SchemaError("spectrum values must be a list");
  std::map<CosetAddress, Complex> map;
  for (const Json& entry : values) {
    CosetAddress addr = address_from_json(params, entry.at("addr"));
    if (addr.base() != base)
      throw SchemaError("spectrum entry with foreign base");
    map.emplace(std::move(addr),
                Complex{entry.at("re").get<double>(),
                        entry.at("im").get<double>()});
  }
  try {
    return SpectralStepFunction(params, base, std::move(map));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const SpectralStepFunction& f) {
  return Json{{"base", f.base()}, {"values", spectrum_values_to_json(f)}};
}

Json to_json(const ValidTree& t) {
  Json nodes = Json::array();
  for (const TreeNode& v : t.nodes()) {
    Json n{{"id", v.id}, {"label", to_json(v.label)}};
    if (v.parent == -1)
      n["parent"] = nullptr;
    else
      n["parent"] = v.parent;
    n["children"] = v.children;
    nodes.push_back(std::move(n));
  }
  Json j = params_to_json(t.params());
  j["N"] = t.window_length();
  j["nodes"] = std::move(nodes);
  return j;
}

ValidTree tree_from_json(const Json& j) {
  FieldParams params = params_from_json(j);
  if (!j.contains("N") || !j.contains("nodes"))
    throw SchemaError("tree misses N or nodes");
  const auto N = j.at("N").get<std::uint32_t>();
  std::vector<TreeNode> nodes;
  for (const Json& n : j.at("nodes")) {
    const int id = n.at("id").get<int>();
    GFBlock label = block_from_json(params, n.at("label"));
    const int parent =
        n.at("parent").is_null() ? -1 : n.at("parent").get<int>();
    TreeNode node(id, std::move(label), parent);
    if (n.contains("children"))
      node.children = n.at("children").get<std::vector<int>>();
    nodes.push_back(std::move(node));
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.id < b.id; });
  try {
    return ValidTree(params, N, std::move(nodes));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const ElementarySet& set) {
  Json cosets = Json::array();
  for (const CosetAddress& c : set.cosets()) cosets.push_back(to_json(c));
  Json j = params_to_json(set.params());
  j["N"] = set.N();
  j["M"] = set.M();
  j["cosets"] = std::move(cosets);
  return j;
}

ElementarySet elementary_set_from_json(const Json& j) {
  FieldParams params = params_from_json(j);
  if (!j.contains("N") || !j.contains("cosets"))
    throw SchemaError("elementary set misses N or cosets");
  std::vector<CosetAddress> cosets;
  for (const Json& c : j.at("cosets"))
    cosets.push_back(address_from_json(params, c));
  try {
    return ElementarySet(params, j.at("N").get<std::uint32_t>(),
                         j.value("M", 0u), std::move(cosets));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json mask_to_json(const Mask& mask) {
  Json j = params_to_json(mask.params());
  j["N"] = mask.N();
  j["A"] = mask.riesz_floor();
  j["B"] = mask.riesz_ceiling();
  j["values"] = spectrum_values_to_json(mask.values());
  return j;
}

Mask mask_from_json(const ValidTree& tree, const Json& j) {
  FieldParams params = params_from_json(j);
  if (params != tree.params())
    throw SchemaError("mask and tree parameters differ");
  if (!j.contains("A") || !j.contains("B") || !j.contains("values"))
    throw SchemaError("mask misses A, B or values");
  const auto N = j.value("N", tree.window_length());
  if (N != tree.window_length())
    throw SchemaError("mask N and tree N differ");
  SpectralStepFunction values = spectrum_values_from_json(
      params, static_cast<int>(N), j.at("values"));
  std::map<CosetAddress, Complex> assignment(values.values().begin(),
                                             values.values().end());
  try {
    return Mask::build(ElementarySet::from_tree(tree), assignment,
                       j.at("A").get<double>(), j.at("B").get<double>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json family_to_json(const MRAFamily& family, const ValidTree& tree) {
  Json j = params_to_json(family.params());
  j["N"] = family.N();
  j["H"] = family.H();
  j["A"] = family.riesz_floor();
  j["B"] = family.riesz_ceiling();
  j["tree"] = to_json(tree);
  j["mask"] = mask_to_json(family.mask());
  j["dual_mask"] = mask_to_json(family.dual_mask());
  j["scaling"] = to_json(family.scaling());
  j["dual_scaling"] = to_json(family.dual_scaling());
  const auto [lo, hi] = riesz_bounds(family);
  j["bounds"] = Json{{"lo", lo}, {"hi", hi}};
  return j;
}

std::pair<ValidTree, MRAFamily> family_from_json(const Json& j) {
  if (!j.contains("tree") || !j.contains("mask"))
    throw SchemaError("family misses tree or mask");
  ValidTree tree = tree_from_json(j.at("tree"));
  Mask mask = mask_from_json(tree, j.at("mask"));
  try {
    return {tree, MRAFamily::build(tree, mask)};
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

double family_stored_deviation(const Json& j, const MRAFamily& rebuilt) {
  double dev = 0.0;
  const FieldParams params = rebuilt.params();
  auto compare = [&](const char* key, const SpectralStepFunction& fresh) {
    if (!j.contains(key)) {
      dev = std::numeric_limits<double>::infinity();
      return;
    }
    const Json& spec = j.at(key);
    SpectralStepFunction stored = spectrum_values_from_json(
        params, spec.at("base").get<int>(), spec.at("values"));
    dev = std::max(dev, spectral_max_abs_diff(stored, fresh));
  };
  compare("scaling", rebuilt.scaling());
  compare("dual_scaling", rebuilt.dual_scaling());
  return dev;
}

Json system_to_json(const WaveletSystem& system, const ValidTree& tree) {
  Json j;
  j["family"] = family_to_json(system.family(), tree);
  Json wavelets = Json::array();
  for (std::size_t i = 0; i < system.count(); ++i) {
    wavelets.push_back(Json{{"l", to_json(system.labels()[i])},
                            {"mask", to_json(system.mask(i))},
                            {"dual_mask", to_json(system.dual_mask(i))},
                            {"psi", to_json(system.psi(i))},
                            {"dual_psi", to_json(system.dual_psi(i))}});
  }
  j["wavelets"] = std::move(wavelets);
  return j;
}

std::pair<ValidTree, WaveletSystem> system_from_json(const Json& j) {
  if (!j.contains("family")) throw SchemaError("system misses family");
  auto [tree, family] = family_from_json(j.at("family"));
  return {std::move(tree), WaveletSystem::build(family)};
}

double system_stored_deviation(const Json& j, const WaveletSystem& rebuilt) {
  double dev = family_stored_deviation(j.at("family"), rebuilt.family());
  if (!j.contains("wavelets")) return std::numeric_limits<double>::infinity();
  const Json& wavelets = j.at("wavelets");
  if (!wavelets.is_array() || wavelets.size() != rebuilt.count())
    return std::numeric_limits<double>::infinity();
  const FieldParams params = rebuilt.family().params();
  for (std::size_t i = 0; i < rebuilt.count(); ++i) {
    const Json& w = wavelets[i];
    auto check = [&](const char* key, const SpectralStepFunction& fresh) {
      const Json& spec = w.at(key);
      SpectralStepFunction stored = spectrum_values_from_json(
          params, spec.at("base").get<int>(), spec.at("values"));
      dev = std::max(dev, spectral_max_abs_diff(stored, fresh));
    };
    check("psi", rebuilt.psi(i));
    check("dual_psi", rebuilt.dual_psi(i));
    check("mask", rebuilt.mask(i));
    check("dual_mask", rebuilt.dual_mask(i));
  }
  return dev;
}

Json wrap_document(const std::string& type, Json payload) {
  Json doc;
  doc["format"] = kFormatTag;
  doc["type"] = type;
  doc["payload"] = std::move(payload);
  return doc;
}

const Json& expect_document(const Json& doc, const std::string& type) {
  if (!doc.is_object() || doc.value("format", "") != kFormatTag)
    throw SchemaError("missing or unknown format tag (want lfwave/1)");
  if (doc.value("type", "") != type)
    throw SchemaError("expected a document of type '" + type + "', got '" +
                      doc.value("type", "?") + "'");
  if (!doc.contains("payload")) throw SchemaError("document misses payload");
  return doc.at("payload");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("json parse error in " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace lfwave
