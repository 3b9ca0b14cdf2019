#include "lt/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "potential_node.hpp"

namespace lt {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return std::strtod(format_number(x).c_str(), nullptr);
}

namespace {

double as_number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() && *end == '\0') return x;
  }
  throw precondition_error("potential JSON: '" + what + "' must be a number");
}

double param(const json& p, const char* key, std::optional<double> fallback = std::nullopt) {
  if (p.contains(key)) return as_number(p.at(key), key);
  if (fallback) return *fallback;
  throw precondition_error(std::string("potential JSON: missing parameter '") + key + "'");
}

std::vector<double> numbers(const json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_array())
    throw precondition_error(std::string("potential JSON: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : p.at(key)) out.push_back(as_number(x, key));
  return out;
}

Domain parse_domain(const json& doc) {
  if (!doc.contains("domain")) return Domain::full_line();
  const auto& d = doc.at("domain");
  if (d.is_string()) {
    const auto s = d.get<std::string>();
    if (s == "full_line") return Domain::full_line();
    if (s == "half_line") return Domain::half_line();
    throw precondition_error("potential JSON: unknown domain '" + s + "'");
  }
  if (d.is_array() && d.size() == 2) {
    const double a = as_number(d[0], "domain"), b = as_number(d[1], "domain");
    if (a == -kInf && b == kInf) return Domain::full_line();
    if (a == 0.0 && b == kInf) return Domain::half_line();
    if (!std::isfinite(a) || !std::isfinite(b))
      throw precondition_error("potential JSON: interval domains must be finite, the line or [0, inf]");
    return Domain::interval(a, b);
  }
  throw precondition_error("potential JSON: domain must be \"full_line\", \"half_line\" or [a, b]");
}

Potential parse_family(const json& doc) {
  if (!doc.is_object() || !doc.contains("family") || !doc.at("family").is_string())
    throw precondition_error("potential JSON: expected an object with a string 'family'");
  const auto family = doc.at("family").get<std::string>();
  const json params = doc.value("params", json::object());
  auto inner = [&]() {
    if (!params.contains("inner")) throw precondition_error("potential JSON: '" + family + "' needs 'inner'");
    return parse_family(params.at("inner"));
  };
  if (family == "zero") return zero_potential();
  if (family == "square_well")
    return square_well(param(params, "depth"), param(params, "left"), param(params, "right"));
  if (family == "poschl_teller")
    return poschl_teller(param(params, "order"), param(params, "center", 0.0), param(params, "scale", 1.0));
  if (family == "gaussian")
    return gaussian(param(params, "amplitude"), param(params, "center", 0.0), param(params, "width", 1.0));
  if (family == "piecewise_constant")
    return piecewise_constant(numbers(params, "breakpoints"), numbers(params, "values"));
  if (family == "sampled") return sampled(numbers(params, "grid"), numbers(params, "values"));
  if (family == "sum") {
    if (!params.contains("terms") || !params.at("terms").is_array() || params.at("terms").empty())
      throw precondition_error("potential JSON: 'sum' needs a nonempty 'terms' array");
    std::vector<Potential> terms;
    for (const auto& t : params.at("terms")) terms.push_back(parse_family(t));
    return sum(std::move(terms));
  }
  if (family == "scaled") return scaled(param(params, "alpha"), inner());
  if (family == "multiple") return multiple(param(params, "factor"), inner());
  if (family == "mirror") return mirrored(inner());
  if (family == "even") return even_extension(inner().on(Domain::half_line()));
  if (family == "positive_part") return sign_split(inner()).plus;
  if (family == "negative_part") return sign_split(inner()).minus;
  throw precondition_error("potential JSON: unknown family '" + family + "'");
}

json numbers_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(json_number(x));
  return out;
}

json node_json(const detail::Node& n) {
  using detail::overloaded;
  return std::visit(
      overloaded{
          [](const detail::Zero&) { return json{{"family", "zero"}, {"params", json::object()}}; },
          [](const detail::SquareWell& w) {
            return json{{"family", "square_well"},
                        {"params", {{"depth", json_number(w.depth)}, {"left", json_number(w.left)},
                                    {"right", json_number(w.right)}}}};
          },
          [](const detail::PoschlTeller& p) {
            return json{{"family", "poschl_teller"},
                        {"params", {{"order", json_number(p.order)}, {"center", json_number(p.center)},
                                    {"scale", json_number(p.scale)}}}};
          },
          [](const detail::Gaussian& g) {
            return json{{"family", "gaussian"},
                        {"params", {{"amplitude", json_number(g.amplitude)}, {"center", json_number(g.center)},
                                    {"width", json_number(g.width)}}}};
          },
          [](const detail::PiecewiseConstant& p) {
            return json{{"family", "piecewise_constant"},
                        {"params", {{"breakpoints", numbers_json(p.breakpoints)}, {"values", numbers_json(p.values)}}}};
          },
          [](const detail::Sampled& s) {
            return json{{"family", "sampled"},
                        {"params", {{"grid", numbers_json(s.grid)}, {"values", numbers_json(s.values)}}}};
          },
          [](const detail::Sum& s) {
            json terms = json::array();
            for (const auto& t : s.terms) terms.push_back(node_json(*t));
            return json{{"family", "sum"}, {"params", {{"terms", terms}}}};
          },
          [](const detail::Scaled& s) {
            return json{{"family", "scaled"},
                        {"params", {{"alpha", json_number(s.alpha)}, {"inner", node_json(*s.inner)}}}};
          },
          [](const detail::Multiple& m) {
            return json{{"family", "multiple"},
                        {"params", {{"factor", json_number(m.factor)}, {"inner", node_json(*m.inner)}}}};
          },
          [](const detail::Even& e) { return json{{"family", "even"}, {"params", {{"inner", node_json(*e.inner)}}}}; },
          [](const detail::Mirror& m) {
            return json{{"family", "mirror"}, {"params", {{"inner", node_json(*m.inner)}}}};
          },
          [](const detail::Clip& c) {
            return json{{"family", c.positive ? "positive_part" : "negative_part"},
                        {"params", {{"inner", node_json(*c.inner)}}}};
          },
      },
      n.kind);
}

}  // namespace

Potential potential_from_json(const json& doc) {
  const Domain d = parse_domain(doc);
  return parse_family(doc).on(d);
}

json potential_to_json(const Potential& v) {
  json out = node_json(v.node());
  const Domain& d = v.domain();
  switch (d.kind()) {
    case Domain::Kind::full_line: out["domain"] = "full_line"; break;
    case Domain::Kind::half_line: out["domain"] = "half_line"; break;
    case Domain::Kind::interval: out["domain"] = json::array({json_number(d.lower()), json_number(d.upper())}); break;
  }
  return out;
}

Potential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open potential file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw precondition_error("potential file '" + path + "' is not valid JSON: " + e.what());
  }
  return potential_from_json(doc);
}

}  // namespace lt
