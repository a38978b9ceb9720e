#pragma once
// JSON file formats: design-v1, flow-v1, resolution-v1, manifest-v1.
// Files store blocks in any order; loading canonicalizes and keeps the
// file -> canonical permutation so flow values stay aligned with blocks.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steinerflow/flow.hpp"

namespace steinerflow {

using ordered_json = nlohmann::ordered_json;

namespace detail {
inline ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw PreconditionError("file " + path + " is not valid JSON: " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write file: " + path);
  out << j.dump(1) << "\n";
}

inline void expect_format(const ordered_json& j, const std::string& fmt, const std::string& path) {
  if (!j.contains("format") || j["format"] != fmt)
    throw PreconditionError("file " + path + " does not declare format \"" + fmt + "\"");
}
}  // namespace detail

inline ordered_json design_to_json(const Design& d) {
  ordered_json j;
  j["format"] = "design-v1";
  j["t"] = d.t;
  j["v"] = d.v;
  j["k"] = d.k;
  j["lambda"] = d.lam;
  j["blocks"] = d.blocks;
  if (!d.labels.empty()) j["labels"] = d.labels;
  if (d.cyclic) {
    ordered_json c;
    c["v"] = d.cyclic->v;
    c["full"] = d.cyclic->base_blocks;
    c["short"] = d.cyclic->has_short;
    j["cyclic"] = c;
  }
  if (d.provenance) {
    ordered_json p;
    p["construction"] = d.provenance->construction;
    p["inputs"] = d.provenance->inputs;
    j["provenance"] = p;
  }
  return j;
}

inline void save_design(const Design& d, const std::string& path) {
  detail::write_json_file(path, design_to_json(d));
}

// A parsed design plus the permutation mapping canonical block index ->
// index in the file, needed to align flow files with the canonical order.
struct LoadedDesign {
  Design design;
  std::vector<std::size_t> file_perm;  // canonical i came from file_perm[i]
};

inline LoadedDesign load_design(const std::string& path) {
  ordered_json j = detail::read_json_file(path);
  detail::expect_format(j, "design-v1", path);
  for (const char* key : {"t", "v", "k", "lambda", "blocks"})
    if (!j.contains(key))
      throw PreconditionError("design file " + path + " is missing field \"" + key + "\"");
  std::vector<Block> blocks = j["blocks"].get<std::vector<Block>>();
  // Record the canonicalizing permutation before make_design re-sorts.
  std::vector<Block> copy = blocks;
  std::vector<std::size_t> perm = canonicalize(copy);
  Design d = make_design(j["t"], j["v"], j["k"], j["lambda"], std::move(blocks));
  if (j.contains("labels")) d.labels = j["labels"].get<std::vector<std::string>>();
  if (!d.labels.empty() && static_cast<int>(d.labels.size()) != d.v)
    throw PreconditionError("design file " + path + " has a label list of the wrong length");
  if (j.contains("cyclic")) {
    CyclicInfo ci;
    ci.v = j["cyclic"].at("v");
    ci.base_blocks = j["cyclic"].at("full").get<std::vector<Block>>();
    ci.has_short = j["cyclic"].at("short");
    d.cyclic = ci;
  }
  if (j.contains("provenance")) {
    Provenance p;
    p.construction = j["provenance"].value("construction", "");
    if (j["provenance"].contains("inputs"))
      p.inputs = j["provenance"]["inputs"].get<std::map<std::string, std::string>>();
    d.provenance = p;
  }
  return LoadedDesign{std::move(d), std::move(perm)};
}

inline ordered_json flow_to_json(const FlowAssignment& f) {
  ordered_json j;
  j["format"] = "flow-v1";
  j["design_hash"] = f.design_hash;
  j["values"] = f.values;
  return j;
}

// Saved flow values are parallel to the design file we write, which is
// always in canonical order.
inline void save_flow(const FlowAssignment& f, const std::string& path) {
  detail::write_json_file(path, flow_to_json(f));
}

// Flow values in the file are parallel to the blocks of the design FILE the
// flow was issued for; they are permuted here into canonical order.
inline FlowAssignment load_flow(const std::string& path, const LoadedDesign& ld) {
  ordered_json j = detail::read_json_file(path);
  detail::expect_format(j, "flow-v1", path);
  std::vector<int> file_values = j.at("values").get<std::vector<int>>();
  if (file_values.size() != ld.design.blocks.size())
    throw PreconditionError("flow file " + path + " has the wrong number of values");
  std::vector<int> values(file_values.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = file_values[ld.file_perm[i]];
  FlowAssignment f;
  f.design_hash = j.at("design_hash").get<std::string>();
  f.values = std::move(values);
  check_flow_matches(ld.design, f);
  return f;
}

inline ordered_json resolution_to_json(const Resolution& r) {
  ordered_json j;
  j["format"] = "resolution-v1";
  j["classes"] = r.classes;
  return j;
}

inline void save_resolution(const Resolution& r, const std::string& path) {
  detail::write_json_file(path, resolution_to_json(r));
}

// Class indices refer to the canonical block order of `d`.
inline Resolution load_resolution(const std::string& path, const Design& d) {
  ordered_json j = detail::read_json_file(path);
  detail::expect_format(j, "resolution-v1", path);
  auto classes = j.at("classes").get<std::vector<std::vector<std::size_t>>>();
  return make_resolution(d, std::move(classes));
}

// Manifest of design files for batch scanning.
inline std::vector<std::string> load_manifest(const std::string& path) {
  ordered_json j = detail::read_json_file(path);
  detail::expect_format(j, "manifest-v1", path);
  return j.at("designs").get<std::vector<std::string>>();
}

}  // namespace steinerflow
