#pragma once

// Text formats. Diagrams, virtual diagrams and measures are comma separated,
// one point per line; '#' starts a comment line. Half-plane points take two
// fields "b,d", graph points one field naming a vertex. Certificates are JSON
// with every number written as a string in the same notation as the data
// files ("3/2", "0.25", "inf").

#include "wass/graph_pair.hpp"
#include "wass/grothendieck.hpp"
#include "wass/halfplane_pair.hpp"
#include "wass/transport.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace wass::io {

using Json = nlohmann::ordered_json;

/// Error raised while reading a file; the message starts with "source:line:".
inline invalid_input parse_error(const std::string& source, std::size_t line, const std::string& what) {
  return invalid_input(source + ":" + std::to_string(line) + ": " + what);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Calls visit(fields, line_number) for every data line.
template <class Visit>
void for_each_record(std::istream& in, const std::string& source, Visit&& visit) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    try {
      visit(split_fields(view), number);
    } catch (const invalid_input& e) {
      throw parse_error(source, number, e.what());
    }
  }
}

inline long long parse_integer(std::string_view text) {
  long long v = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw invalid_input("expected an integer multiplicity, got '" + std::string(text) + "'");
  return v;
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input(path + ": cannot open file");
  return in;
}

}  // namespace detail

// Point codecs.

inline std::size_t point_fields(const HalfPlanePair&) { return 2; }
inline std::size_t point_fields(const GraphPMetricPair&) { return 1; }

inline Point2 parse_point(const HalfPlanePair&, std::span<const std::string_view> f, bool exact) {
  return {ExtReal::parse(f[0], exact), ExtReal::parse(f[1], exact)};
}
inline Vertex parse_point(const GraphPMetricPair& pair, std::span<const std::string_view> f, bool) {
  auto v = pair.vertex(std::string(f[0]));
  if (!v) throw invalid_input("unknown vertex '" + std::string(f[0]) + "'");
  return *v;
}

inline std::string format_point(const HalfPlanePair&, const Point2& x) {
  return x.b.str() + "," + x.d.str();
}
inline std::string format_point(const GraphPMetricPair& pair, Vertex v) { return pair.name(v); }

inline Json point_json(const HalfPlanePair&, const Point2& x) { return Json::array({x.b.str(), x.d.str()}); }
inline Json point_json(const GraphPMetricPair& pair, Vertex v) { return pair.name(v); }

inline Point2 point_from_json(const HalfPlanePair&, const Json& j, bool exact) {
  if (!j.is_array() || j.size() != 2) throw invalid_input("half-plane point must be [b, d]");
  return {ExtReal::parse(j[0].get<std::string>(), exact), ExtReal::parse(j[1].get<std::string>(), exact)};
}
inline Vertex point_from_json(const GraphPMetricPair& pair, const Json& j, bool) {
  auto v = pair.vertex(j.get<std::string>());
  if (!v) throw invalid_input("unknown vertex '" + j.get<std::string>() + "'");
  return *v;
}

inline ExtReal number_from_json(const Json& j, bool exact) {
  if (j.is_string()) return ExtReal::parse(j.get<std::string>(), exact);
  if (j.is_number_integer()) return ExtReal(Rational(BigInt(j.get<long long>())));
  if (j.is_number()) return ExtReal::approx(j.get<double>());
  throw invalid_input("expected a number");
}

// Diagrams.

/// Lines "point[,k]" with k >= 0 an integer (default 1). Points in A are
/// dropped; repeated points accumulate.
template <MetricPair Pair>
Diagram<Pair> read_diagram(std::istream& in, std::shared_ptr<const Pair> pair, bool exact,
                           const std::string& source = "diagram") {
  Diagram<Pair> out(pair);
  const std::size_t width = point_fields(*pair);
  detail::for_each_record(in, source, [&](const std::vector<std::string_view>& f, std::size_t) {
    if (f.size() != width && f.size() != width + 1)
      throw invalid_input("expected " + std::to_string(width) + " coordinate field(s) and an optional multiplicity");
    long long k = f.size() > width ? detail::parse_integer(f[width]) : 1;
    if (k < 0) throw invalid_input("negative multiplicity in a diagram");
    auto x = parse_point(*pair, std::span(f).first(width), exact);
    if (k > 0) out.insert(x, static_cast<Multiplicity>(k));
  });
  return out;
}

template <MetricPair Pair>
Diagram<Pair> read_diagram_file(const std::string& path, std::shared_ptr<const Pair> pair, bool exact) {
  auto in = detail::open(path);
  return read_diagram(in, std::move(pair), exact, path);
}

/// Canonical form: points in order, one line each, multiplicity omitted when 1.
template <MetricPair Pair>
void write_diagram(std::ostream& out, const Diagram<Pair>& alpha) {
  for (const auto& [x, k] : alpha.points()) {
    out << format_point(alpha.pair(), x);
    if (k != 1) out << ',' << k;
    out << '\n';
  }
}

/// Lines "point[,k]" with k a signed integer; negative k goes to neg.
template <MetricPair Pair>
VirtualDiagram<Pair> read_virtual_diagram(std::istream& in, std::shared_ptr<const Pair> pair, bool exact,
                                          const std::string& source = "virtual diagram") {
  Diagram<Pair> pos(pair), neg(pair);
  const std::size_t width = point_fields(*pair);
  detail::for_each_record(in, source, [&](const std::vector<std::string_view>& f, std::size_t) {
    if (f.size() != width && f.size() != width + 1)
      throw invalid_input("expected " + std::to_string(width) + " coordinate field(s) and an optional multiplicity");
    long long k = f.size() > width ? detail::parse_integer(f[width]) : 1;
    auto x = parse_point(*pair, std::span(f).first(width), exact);
    if (k > 0) pos.insert(x, static_cast<Multiplicity>(k));
    if (k < 0) neg.insert(x, static_cast<Multiplicity>(-k));
  });
  return canonicalize(pos, neg);
}

template <MetricPair Pair>
VirtualDiagram<Pair> read_virtual_diagram_file(const std::string& path, std::shared_ptr<const Pair> pair,
                                               bool exact) {
  auto in = detail::open(path);
  return read_virtual_diagram(in, std::move(pair), exact, path);
}

template <MetricPair Pair>
void write_virtual_diagram(std::ostream& out, const VirtualDiagram<Pair>& v) {
  std::map<point_t<Pair>, long long> lines;
  for (const auto& [x, k] : v.pos().points()) lines[x] += static_cast<long long>(k);
  for (const auto& [x, k] : v.neg().points()) lines[x] -= static_cast<long long>(k);
  for (const auto& [x, k] : lines) {
    out << format_point(v.pair(), x);
    if (k != 1) out << ',' << k;
    out << '\n';
  }
}

// Measures.

/// Lines "point,mass"; negative masses go to the minus part.
template <MetricPair Pair>
SignedDiscreteMeasure<Pair> read_measure(std::istream& in, std::shared_ptr<const Pair> pair, bool exact,
                                         const std::string& source = "measure") {
  SignedDiscreteMeasure<Pair> out(pair);
  const std::size_t width = point_fields(*pair);
  detail::for_each_record(in, source, [&](const std::vector<std::string_view>& f, std::size_t) {
    if (f.size() != width + 1)
      throw invalid_input("expected " + std::to_string(width) + " coordinate field(s) and a mass");
    auto x = parse_point(*pair, std::span(f).first(width), exact);
    out.add_mass(x, ExtReal::parse(f[width], exact));
  });
  return out;
}

template <MetricPair Pair>
SignedDiscreteMeasure<Pair> read_measure_file(const std::string& path, std::shared_ptr<const Pair> pair,
                                              bool exact) {
  auto in = detail::open(path);
  return read_measure(in, std::move(pair), exact, path);
}

template <MetricPair Pair>
void write_measure(std::ostream& out, const SignedDiscreteMeasure<Pair>& mu) {
  std::map<point_t<Pair>, ExtReal> lines;
  for (const auto& [x, w] : mu.plus().atoms()) lines[x] = w;
  for (const auto& [x, w] : mu.minus().atoms()) lines[x] = -w;
  for (const auto& [x, w] : lines) out << format_point(mu.pair(), x) << ',' << w.str() << '\n';
}

template <MetricPair Pair>
void write_measure(std::ostream& out, const DiscreteMeasure<Pair>& mu) {
  for (const auto& [x, w] : mu.atoms()) out << format_point(mu.pair(), x) << ',' << w.str() << '\n';
}

// Certificates.

template <MetricPair Pair>
Json matching_to_json(const Pair& pair, const Matching<point_t<Pair>>& m) {
  Json pairs = Json::array(), to_A = Json::array();
  for (const auto& e : m.real_pairs)
    pairs.push_back({{"from", point_json(pair, e.from)}, {"to", point_json(pair, e.to)}, {"cost", e.cost.str()}});
  for (const auto& e : m.to_A_source) to_A.push_back({{"from", point_json(pair, e.point)}, {"cost", e.cost.str()}});
  for (const auto& e : m.to_A_target) to_A.push_back({{"to", point_json(pair, e.point)}, {"cost", e.cost.str()}});
  return {{"p", m.p.str()}, {"pairs", pairs}, {"to_A", to_A}, {"total_cost", m.cost.str()}};
}

template <MetricPair Pair>
Matching<point_t<Pair>> matching_from_json(const Pair& pair, const Json& j, bool exact) {
  Matching<point_t<Pair>> m;
  try {
    m.p = Exponent::parse(j.at("p").get<std::string>());
    for (const auto& e : j.at("pairs"))
      m.real_pairs.push_back({point_from_json(pair, e.at("from"), exact), point_from_json(pair, e.at("to"), exact),
                              number_from_json(e.at("cost"), exact)});
    for (const auto& e : j.at("to_A")) {
      ExtReal cost = number_from_json(e.at("cost"), exact);
      if (e.contains("from")) {
        m.to_A_source.push_back({point_from_json(pair, e.at("from"), exact), cost});
      } else {
        m.to_A_target.push_back({point_from_json(pair, e.at("to"), exact), cost});
      }
    }
    m.cost = number_from_json(j.at("total_cost"), exact);
  } catch (const Json::exception& e) {
    throw invalid_input(std::string("malformed matching certificate: ") + e.what());
  }
  return m;
}

template <MetricPair Pair>
Json plan_to_json(const Pair& pair, const TransportPlan<point_t<Pair>>& plan) {
  Json flows = Json::array(), to_A = Json::array(), from_A = Json::array();
  for (const auto& f : plan.flows)
    flows.push_back({{"from", point_json(pair, f.from)},
                     {"to", point_json(pair, f.to)},
                     {"mass", f.mass.str()},
                     {"unit_cost", f.unit_cost.str()}});
  auto boundary = [&](Json& out, const auto& list) {
    for (const auto& f : list)
      out.push_back({{"point", point_json(pair, f.point)}, {"mass", f.mass.str()}, {"unit_cost", f.unit_cost.str()}});
  };
  boundary(to_A, plan.to_A);
  boundary(from_A, plan.from_A);
  Json out = {{"p", plan.p.str()}, {"flows", flows}, {"to_A", to_A}, {"from_A", from_A}, {"cost", plan.cost.str()}};
  if (plan.potentials) {
    Json pot = Json::array();
    for (const auto& [x, f] : *plan.potentials) pot.push_back({{"point", point_json(pair, x)}, {"value", f.str()}});
    out["potentials"] = pot;
  }
  return out;
}

template <MetricPair Pair>
TransportPlan<point_t<Pair>> plan_from_json(const Pair& pair, const Json& j, bool exact) {
  TransportPlan<point_t<Pair>> plan;
  try {
    plan.p = Exponent::parse(j.at("p").get<std::string>());
    for (const auto& f : j.at("flows"))
      plan.flows.push_back({point_from_json(pair, f.at("from"), exact), point_from_json(pair, f.at("to"), exact),
                            number_from_json(f.at("mass"), exact), number_from_json(f.at("unit_cost"), exact)});
    auto boundary = [&](const Json& list, auto& out) {
      for (const auto& f : list)
        out.push_back({point_from_json(pair, f.at("point"), exact), number_from_json(f.at("mass"), exact),
                       number_from_json(f.at("unit_cost"), exact)});
    };
    boundary(j.at("to_A"), plan.to_A);
    boundary(j.at("from_A"), plan.from_A);
    plan.cost = number_from_json(j.at("cost"), exact);
    if (j.contains("potentials")) {
      plan.potentials.emplace();
      for (const auto& e : j.at("potentials"))
        plan.potentials->emplace_back(point_from_json(pair, e.at("point"), exact), number_from_json(e.at("value"), exact));
    }
  } catch (const Json::exception& e) {
    throw invalid_input(std::string("malformed transport plan: ") + e.what());
  }
  return plan;
}

}  // namespace wass::io
