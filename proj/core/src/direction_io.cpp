#include "lacuna/direction_io.hpp"

#include <json.hpp>

#include "lacuna/errors.hpp"

namespace lacuna {

using nlohmann::json;

namespace {

json angle_json(const Direction& d) { return json::array({d.theta().num, d.theta().log2den}); }

Direction angle_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ValidationError("angle must be a [numerator, log2denominator] pair");
  return Direction(Dyadic(j[0].get<std::int64_t>(), j[1].get<int>()));
}

json node_json(const TreeNode& n) {
  json kids = json::array();
  for (const auto& c : n.children) kids.push_back(node_json(c));
  return {{"angle", angle_json(n.dir)}, {"children", kids}};
}

TreeNode node_from(const json& j, int depth) {
  if (depth > 64) throw ValidationError("certificate tree too deep");
  if (!j.is_object() || !j.contains("angle")) throw ValidationError("tree node needs an angle");
  TreeNode n{angle_from(j.at("angle")), {}};
  if (j.contains("children")) {
    if (!j.at("children").is_array()) throw ValidationError("children must be an array");
    for (const auto& c : j.at("children")) n.children.push_back(node_from(c, depth + 1));
  }
  return n;
}

}  // namespace

std::string direction_set_to_json(const DirectionSet& set) {
  json out;
  json angles = json::array();
  for (const auto& d : set) angles.push_back(angle_json(d));
  if (const auto& cert = set.certificate()) {
    out["lambda"] = to_string(cert->lambda);
    out["order"] = cert->order;
    out["root"] = angle_json(cert->root.dir);
    out["angles"] = angles;
    out["tree"] = node_json(cert->root);
  } else {
    out["lambda"] = nullptr;
    out["order"] = nullptr;
    out["root"] = angle_json(Direction());
    out["angles"] = angles;
    out["tree"] = nullptr;
  }
  return out.dump(1) + "\n";
}

DirectionSet direction_set_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("direction set is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("angles") || !j.at("angles").is_array())
      throw ValidationError("direction set needs an \"angles\" array");
    std::vector<Direction> dirs;
    for (const auto& a : j.at("angles")) dirs.push_back(angle_from(a));
    std::optional<LacunaryTree> cert;
    if (j.contains("tree") && !j.at("tree").is_null()) {
      const json& lam = j.at("lambda");
      Rational lambda = lam.is_string() ? Rational::parse(lam.get<std::string>())
                                        : Rational::from_double(lam.get<double>());
      int order = j.at("order").get<int>();
      TreeNode root = node_from(j.at("tree"), 0);
      if (j.contains("root") && !(angle_from(j.at("root")) == root.dir))
        throw ValidationError("root does not match the tree root");
      cert = LacunaryTree{lambda, order, std::move(root)};
    }
    return DirectionSet(std::move(dirs), std::move(cert));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed direction set: ") + e.what());
  }
}

}  // namespace lacuna
