#include "lambdavar/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lambdavar/error.hpp"

namespace lambdavar {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InvalidInput(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(path + (path.empty() ? "" : ".") + key + ": missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InvalidInput(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(path + ": expected a finite number");
  return v;
}

double number_or(const Json& obj, const char* key, double fallback, const std::string& path) {
  if (!obj.is_object()) return fallback;
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return number(*it, join(path, key));
}

std::vector<double> number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InvalidInput(path + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Re-throws invariant violations from constructors with the field prefix.
template <class F>
auto with_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const InvalidInput& e) {
    throw InvalidInput(join(path, e.what()));
  }
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

void dump_into(const Json& j, int indent, int level, std::string& out) {
  const auto pad = [&](int l) {
    if (indent >= 0) {
      out.push_back('\n');
      out.append(static_cast<std::size_t>(indent * l), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        pad(level + 1);
        out += Json(it.key()).dump();
        out += indent == -1 ? ":" : ": ";
        dump_into(it.value(), indent, level + 1, out);
      }
      pad(level);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) {
                                      return x.is_primitive();
                                    }));
      });
      out.push_back('[');
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += indent == -1 ? "," : ", ";
        first = false;
        if (!flat) pad(level + 1);
        // -2: single line with spaced separators
        dump_into(e, flat && indent != -1 ? -2 : indent, level + 1, out);
      }
      if (!flat) pad(level);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

PiecewiseLinear named_function(std::string_view name) {
  if (name == "identity") return PiecewiseLinear::identity();
  if (name == "hat") return PiecewiseLinear::hat();
  if (name == "counterexample") return PiecewiseLinear::counterexample();
  if (name == "abs_mid") return PiecewiseLinear::abs_mid();
  throw InvalidInput("name: unknown named function '" + std::string(name) + "'");
}

Function function_from_json(const Json& j) {
  const Json& type = require(j, "type", "");
  if (!type.is_string()) throw InvalidInput("type: expected a string");
  const std::string t = type.get<std::string>();
  if (t == "plf") {
    const Json& pts = require(j, "points", "");
    if (!pts.is_array()) throw InvalidInput("points: expected an array of [x, y] pairs");
    std::vector<Point> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string path = "points[" + std::to_string(i) + "]";
      if (!pts[i].is_array() || pts[i].size() != 2) {
        throw InvalidInput(path + ": expected an [x, y] pair");
      }
      points.push_back({number(pts[i][0], path + "[0]"), number(pts[i][1], path + "[1]")});
    }
    return PiecewiseLinear(std::move(points));
  }
  if (t == "step") {
    auto cuts = number_array(require(j, "cuts", ""), "cuts");
    auto pieces = number_array(require(j, "pieces", ""), "pieces");
    auto pv = number_array(require(j, "pointValues", ""), "pointValues");
    return StepFunction(std::move(cuts), std::move(pieces), std::move(pv));
  }
  if (t == "bernstein") {
    auto coeffs = number_array(require(j, "coeffs", ""), "coeffs");
    double lo = 0.0, hi = 1.0;
    if (auto it = j.find("domain"); it != j.end()) {
      const auto d = number_array(*it, "domain");
      if (d.size() != 2) throw InvalidInput("domain: expected [lo, hi]");
      lo = d[0];
      hi = d[1];
    }
    return BernsteinPoly(std::move(coeffs), lo, hi);
  }
  if (t == "piecewise") {
    const Json& arr = require(j, "pieces", "");
    if (!arr.is_array()) throw InvalidInput("pieces: expected an array");
    std::vector<BernsteinPoly> pieces;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "pieces[" + std::to_string(i) + "]";
      const auto d = number_array(require(arr[i], "domain", path), path + ".domain");
      if (d.size() != 2) throw InvalidInput(path + ".domain: expected [lo, hi]");
      auto c = number_array(require(arr[i], "coeffs", path), path + ".coeffs");
      pieces.push_back(with_path(path, [&] { return BernsteinPoly(std::move(c), d[0], d[1]); }));
    }
    return PiecewisePolynomial(std::move(pieces));
  }
  if (t == "named") {
    const Json& name = require(j, "name", "");
    if (!name.is_string()) throw InvalidInput("name: expected a string");
    return named_function(name.get<std::string>());
  }
  throw InvalidInput("type: unknown function type '" + t + "'");
}

Function function_from_json_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("json: ") + e.what());
  }
  return function_from_json(j);
}

Json function_to_json(const Function& f) {
  return std::visit(
      Overloaded{
          [](const PiecewiseLinear& g) {
            Json pts = Json::array();
            for (const auto& p : g.points()) pts.push_back(Json::array({p.x, p.y}));
            return Json{{"type", "plf"}, {"points", pts}};
          },
          [](const StepFunction& g) {
            return Json{{"type", "step"},
                        {"cuts", numbers(g.cuts())},
                        {"pieces", numbers(g.pieces())},
                        {"pointValues", numbers(g.point_values())}};
          },
          [](const BernsteinPoly& g) {
            Json out{{"type", "bernstein"}, {"coeffs", numbers(g.coeffs())}};
            if (g.lo() != 0.0 || g.hi() != 1.0) out["domain"] = Json::array({g.lo(), g.hi()});
            return out;
          },
          [](const PiecewisePolynomial& g) {
            Json pieces = Json::array();
            for (const auto& p : g.pieces()) {
              pieces.push_back(Json{{"domain", Json::array({p.lo(), p.hi()})},
                                    {"coeffs", numbers(p.coeffs())}});
            }
            return Json{{"type", "piecewise"}, {"pieces", pieces}};
          },
      },
      f);
}

LambdaSequence lambda_from_json(const Json& j) {
  const Json& fam = require(j, "family", "");
  if (!fam.is_string()) throw InvalidInput("family: expected a string");
  const std::string family = fam.get<std::string>();
  Json params = Json::object();
  if (auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) throw InvalidInput("params: expected an object");
    params = *it;
  }
  std::size_t shift = 0;
  if (auto it = j.find("shift"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 0) {
      throw InvalidInput("shift: expected a nonnegative integer");
    }
    shift = it->get<std::size_t>();
  }
  LambdaSequence base = [&] {
    if (family == "constant") {
      return LambdaSequence::constant(number_or(params, "c", 1.0, "params"));
    }
    if (family == "linear") {
      return LambdaSequence::linear(number_or(params, "a", 1.0, "params"),
                                    number_or(params, "b", 0.0, "params"));
    }
    if (family == "power") {
      return LambdaSequence::power(number(require(params, "p", "params"), "params.p"));
    }
    if (family == "nlog") return LambdaSequence::nlog();
    if (family == "explicit") {
      auto values = number_array(require(params, "values", "params"), "params.values");
      return LambdaSequence::explicit_prefix(std::move(values),
                                             number_or(params, "slope", 0.0, "params"));
    }
    throw InvalidInput("family: unknown lambda family '" + family + "'");
  }();
  return base.tail(shift);
}

LambdaSequence lambda_from_json_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("json: ") + e.what());
  }
  return lambda_from_json(j);
}

Json lambda_to_json(const LambdaSequence& seq) {
  Json params = std::visit(
      Overloaded{
          [](const ConstantFamily& f) { return Json{{"c", f.c}}; },
          [](const LinearFamily& f) { return Json{{"a", f.a}, {"b", f.b}}; },
          [](const PowerFamily& f) { return Json{{"p", f.p}}; },
          [](const NLogFamily&) { return Json::object(); },
          [](const ExplicitFamily& f) { return Json{{"values", numbers(f.values)}, {"slope", f.slope}}; },
      },
      seq.family());
  return Json{{"family", seq.family_name()}, {"params", params}, {"shift", seq.shift()}};
}

Json variation_to_json(const VariationResult& r) {
  Json witness = Json::array();
  for (const auto& I : r.witness) witness.push_back(Json::array({I.lo, I.hi}));
  Json out{{"value", r.value},
           {"witness", witness},
           {"assignment", r.assignment},
           {"method", std::string(to_string(r.method))}};
  if (r.grid_upper_bound) out["grid_upper_bound"] = *r.grid_upper_bound;
  return out;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep the token a JSON float so it round-trips as a double.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lambdavar
