#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "epsnet/coverage.hpp"
#include "epsnet/geometry.hpp"
#include "epsnet/prm.hpp"
#include "epsnet/sampling.hpp"

namespace epsnet::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "epsnet";
inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed or unreadable input artifact.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite reals as numbers; infinities as the strings "inf" / "-inf".
inline Json real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double to_real(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw InputError("expected a number, got \"" + s + "\"");
  }
  if (!j.is_number()) throw InputError("expected a number");
  return j.get<double>();
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline Json to_json(Coords p) { return Json(std::vector<double>(p.begin(), p.end())); }

inline Point point_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw InputError("a point must be an array of numbers");
  std::vector<double> c;
  for (const auto& x : j) c.push_back(to_real(x));
  if (c.size() != dim) throw InputError("point has " + std::to_string(c.size()) + " coordinates, expected " + std::to_string(dim));
  return Point(std::move(c));
}

inline Json to_json(const PointCloud& pts) {
  Json a = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) a.push_back(to_json(pts[i]));
  return a;
}

inline PointCloud cloud_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw InputError("\"points\" must be an array");
  PointCloud pts(dim);
  pts.reserve(j.size());
  for (const auto& p : j) pts.push_back(point_from_json(p, dim));
  return pts;
}

// ---------------------------------------------------------------------------
// Environment

inline Json to_json(const Obstacle& o) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointObstacle>) {
          return {{"type", "point"}, {"center", to_json(s.center)}};
        } else if constexpr (std::is_same_v<T, SphereShell>) {
          return {{"type", "shell"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, SolidBall>) {
          return {{"type", "ball"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, TorusSurface>) {
          return {{"type", "torus"}, {"center", to_json(s.center)}, {"major", s.major}, {"minor", s.minor}};
        } else if constexpr (std::is_same_v<T, RingSolid>) {
          return {{"type", "ring"}, {"center", to_json(s.center)}, {"major", s.major}, {"minor", s.minor}};
        } else {
          return {{"type", "box"}, {"lo", to_json(s.lo)}, {"hi", to_json(s.hi)}};
        }
      },
      o);
}

inline Obstacle obstacle_from_json(const Json& j, std::size_t dim) {
  const auto type = field(j, "type").get<std::string>();
  auto center = [&] { return point_from_json(field(j, "center"), dim); };
  auto num = [&](const char* k) { return to_real(field(j, k)); };
  if (type == "point") return PointObstacle{center()};
  if (type == "shell") return SphereShell{center(), num("radius")};
  if (type == "ball") return SolidBall{center(), num("radius")};
  if (type == "torus" || type == "ring") {
    if (dim < 2) throw InputError("torus and ring obstacles need dim >= 2");
    if (type == "torus") return TorusSurface{center(), num("major"), num("minor")};
    return RingSolid{center(), num("major"), num("minor")};
  }
  if (type == "box") return AxisBox{point_from_json(field(j, "lo"), dim), point_from_json(field(j, "hi"), dim)};
  throw InputError("unknown obstacle type \"" + type + "\"");
}

inline Json to_json(const Environment& env) {
  Json obstacles = Json::array();
  for (const auto& o : env.obstacles) obstacles.push_back(to_json(o));
  return {{"dim", env.dim}, {"start", to_json(env.start)}, {"goal", to_json(env.goal)}, {"obstacles", obstacles}};
}

inline Environment environment_from_json(const Json& j) {
  Environment env;
  env.dim = field(j, "dim").get<std::size_t>();
  if (env.dim < 1) throw InputError("\"dim\" must be >= 1");
  env.start = point_from_json(field(j, "start"), env.dim);
  env.goal = point_from_json(field(j, "goal"), env.dim);
  if (j.contains("obstacles")) {
    for (const auto& o : j.at("obstacles")) env.obstacles.push_back(obstacle_from_json(o, env.dim));
  }
  return env;
}

// ---------------------------------------------------------------------------
// Sample sets and templates

inline Json to_json(const SampleSet& s) {
  Json params = Json::object();
  for (const auto& [k, v] : s.params) params[k] = real(v);
  return {{"dim", s.dim()},          {"n", s.size()},   {"generator", s.generator},
          {"params", params},        {"seed", s.seed},  {"points", to_json(s.points)}};
}

inline SampleSet sample_set_from_json(const Json& j) {
  SampleSet s;
  const auto dim = field(j, "dim").get<std::size_t>();
  if (dim < 1) throw InputError("\"dim\" must be >= 1");
  s.points = cloud_from_json(field(j, "points"), dim);
  if (j.contains("n") && j.at("n").get<std::size_t>() != s.points.size()) throw InputError("\"n\" disagrees with the number of points");
  s.generator = j.value("generator", "");
  s.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) s.params[k] = to_real(v);
  }
  return s;
}

inline Json to_json(const Template& t, std::uint64_t seed, std::size_t dense_n) {
  SampleSet s{t.points, "template", {{"dense_n", static_cast<double>(dense_n)}}, seed};
  Json j = to_json(s);
  j["k"] = t.k;
  j["cover_radius"] = t.cover_radius;
  return j;
}

inline Template template_from_json(const Json& j) {
  Template t;
  t.points = sample_set_from_json(j).points;
  t.k = field(j, "k").get<std::size_t>();
  t.cover_radius = to_real(field(j, "cover_radius"));
  return t;
}

inline Json to_json(const PathResult& r) {
  return {{"found", r.found}, {"length", r.found ? Json(r.length) : Json(nullptr)}, {"path", to_json(r.path)}};
}

// ---------------------------------------------------------------------------
// Files

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

}  // namespace epsnet::io
