#pragma once

// Command-line front end. run() parses arguments, dispatches to the solvers
// and reports through the given streams; the return value is the process
// exit status.

#include "wass/io.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace wass::cli {

enum class Exit : int { ok = 0, invalid = 1, refused = 2, infinite = 3 };

struct RunConfig {
  std::string command;
  std::string pair = "halfplane";
  std::string graph_file;
  std::string p_text = "1";
  std::string q_text;  // empty: inf for half-plane pairs, 1 for graphs
  bool p_given = false;
  bool exact = false;
  double tol = 1e-9;
  bool json = false;
  bool measures = false;
  bool partial = false;
  unsigned threads = 0;
  std::vector<std::string> files;
};

namespace detail {

inline std::string value_text(const ExtReal& v) { return v.str(); }

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out), p_(Exponent::parse(cfg.p_text)) {}

  template <MetricPair Pair>
  Exit dispatch(const std::shared_ptr<const Pair>& pair) {
    const std::string& c = cfg_.command;
    if (c == "dist") return dist(pair);
    if (c == "vdist") return vdist(pair);
    if (c == "mdist") return mdist(pair);
    if (c == "pdist") return pdist(pair);
    if (c == "matrix") return matrix(pair);
    if (c == "explain") return explain(pair);
    throw invalid_input("unknown command '" + c + "'");
  }

  Exit validate(const GraphPMetricPair& pair) {
    need_files(0);
    Exponent check = cfg_.p_given ? p_ : pair.p();
    auto vertices = pair.vertices();
    auto name = [&](std::size_t i) { return pair.name(vertices[i]); };
    auto report = check_p_metric([&](Vertex u, Vertex v) { return pair.dist(u, v); },
                                 std::span<const Vertex>(vertices), check, cfg_.tol);
    if (cfg_.json) {
      const std::size_t n = report.sample_size;
      io::Json j = {{"passed", report.passed}, {"p", check.str()}, {"vertices", n}, {"triples", n * n * n}};
      if (!report.passed)
        j["violation"] = {{"x", name(report.x)}, {"y", name(report.y)}, {"z", name(report.z)},
                          {"lhs", report.lhs.str()}, {"rhs", report.rhs.str()}};
      out_ << j.dump(2) << '\n';
    } else if (report.passed) {
      const std::size_t n = report.sample_size;
      out_ << "ok: " << check.str() << "-metric inequality holds on all " << n * n * n << " triples of " << n
           << " vertices\n";
    } else {
      out_ << "violation: d(" << name(report.x) << ", " << name(report.y) << ") = " << report.lhs.str() << " > "
           << report.rhs.str() << " via " << name(report.z) << '\n';
    }
    return report.passed ? Exit::ok : Exit::invalid;
  }

 private:
  void need_files(std::size_t k) const {
    if (cfg_.files.size() != k)
      throw invalid_input(cfg_.command + " expects " + std::to_string(k) + " input path(s), got " +
                          std::to_string(cfg_.files.size()));
  }

  Exit report(const ExtReal& value) {
    if (cfg_.json) {
      out_ << io::Json{{"command", cfg_.command}, {"p", p_.str()}, {"value", value.str()}}.dump(2) << '\n';
      return Exit::ok;
    }
    out_ << value_text(value) << '\n';
    return value.is_inf() ? Exit::infinite : Exit::ok;
  }

  template <MetricPair Pair>
  Exit dist(const std::shared_ptr<const Pair>& pair) {
    need_files(2);
    auto a = io::read_diagram_file(cfg_.files[0], pair, cfg_.exact);
    auto b = io::read_diagram_file(cfg_.files[1], pair, cfg_.exact);
    return report(wasserstein_p(a, b, p_).distance);
  }

  template <MetricPair Pair>
  Exit vdist(const std::shared_ptr<const Pair>& pair) {
    need_files(2);
    auto a = io::read_virtual_diagram_file(cfg_.files[0], pair, cfg_.exact);
    auto b = io::read_virtual_diagram_file(cfg_.files[1], pair, cfg_.exact);
    if (p_ == Exponent(1)) return report(virtual_w1(a, b).distance);
    return report(virtual_wp(a, b, p_));
  }

  template <MetricPair Pair>
  static bool is_signed(const SignedDiscreteMeasure<Pair>& mu) {
    return !mu.minus().empty();
  }

  void require_p1_for_signed() const {
    if (p_ != Exponent(1))
      throw invalid_input("signed measures are compared with W_1 only; pass --p 1");
  }

  template <MetricPair Pair>
  Exit mdist(const std::shared_ptr<const Pair>& pair) {
    need_files(2);
    auto a = io::read_measure_file(cfg_.files[0], pair, cfg_.exact);
    auto b = io::read_measure_file(cfg_.files[1], pair, cfg_.exact);
    if (is_signed(a) || is_signed(b)) {
      require_p1_for_signed();
      return report(signed_w1(a, b).distance);
    }
    return report(wasserstein_measures(a.plus(), b.plus(), p_).distance);
  }

  template <MetricPair Pair>
  Exit pdist(const std::shared_ptr<const Pair>& pair) {
    need_files(2);
    auto a = io::read_measure_file(cfg_.files[0], pair, cfg_.exact);
    auto b = io::read_measure_file(cfg_.files[1], pair, cfg_.exact);
    if (is_signed(a) || is_signed(b)) {
      require_p1_for_signed();
      return report(signed_partial_w1(a, b).distance);
    }
    return report(partial_wasserstein(a.plus(), b.plus(), p_).distance);
  }

  template <MetricPair Pair>
  Exit matrix(const std::shared_ptr<const Pair>& pair) {
    need_files(1);
    namespace fs = std::filesystem;
    const fs::path dir(cfg_.files[0]);
    if (!fs::is_directory(dir)) throw invalid_input(cfg_.files[0] + ": not a directory");
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".csv") paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw invalid_input(cfg_.files[0] + ": no .csv diagram files");
    std::vector<Diagram<Pair>> diagrams;
    for (const auto& path : paths) diagrams.push_back(io::read_diagram_file(path.string(), pair, cfg_.exact));
    auto table = distance_matrix(diagrams, p_, cfg_.threads);

    if (cfg_.json) {
      io::Json names = io::Json::array(), rows = io::Json::array();
      for (const auto& path : paths) names.push_back(path.filename().string());
      for (const auto& row : table) {
        io::Json r = io::Json::array();
        for (const auto& v : row) r.push_back(v.str());
        rows.push_back(r);
      }
      out_ << io::Json{{"p", p_.str()}, {"files", names}, {"matrix", rows}}.dump(2) << '\n';
      return Exit::ok;
    }
    bool any_inf = false;
    out_ << "file";
    for (const auto& path : paths) out_ << ',' << path.filename().string();
    out_ << '\n';
    for (std::size_t i = 0; i < paths.size(); ++i) {
      out_ << paths[i].filename().string();
      for (const auto& v : table[i]) {
        out_ << ',' << v.str();
        any_inf = any_inf || v.is_inf();
      }
      out_ << '\n';
    }
    return any_inf ? Exit::infinite : Exit::ok;
  }

  template <MetricPair Pair>
  Exit explain(const std::shared_ptr<const Pair>& pair) {
    need_files(2);
    io::Json j;
    if (cfg_.measures || cfg_.partial) {
      auto a = io::read_measure_file(cfg_.files[0], pair, cfg_.exact);
      auto b = io::read_measure_file(cfg_.files[1], pair, cfg_.exact);
      TransportResult<point_t<Pair>> r;
      if (is_signed(a) || is_signed(b)) {
        require_p1_for_signed();
        r = cfg_.partial ? signed_partial_w1(a, b) : signed_w1(a, b);
      } else {
        r = cfg_.partial ? partial_wasserstein(a.plus(), b.plus(), p_) : wasserstein_measures(a.plus(), b.plus(), p_);
      }
      j = {{"kind", cfg_.partial ? "partial_transport" : "transport"},
           {"distance", r.distance.str()},
           {"plan", io::plan_to_json(*pair, r.plan)}};
    } else {
      auto a = io::read_diagram_file(cfg_.files[0], pair, cfg_.exact);
      auto b = io::read_diagram_file(cfg_.files[1], pair, cfg_.exact);
      auto r = wasserstein_p(a, b, p_);
      if (r.distance.is_finite()) matching_cost(*pair, r.matching, cfg_.tol);
      j = {{"kind", "matching"}, {"distance", r.distance.str()}, {"matching", io::matching_to_json(*pair, r.matching)}};
    }
    out_ << j.dump(2) << '\n';
    return Exit::ok;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  Exponent p_;
};

inline std::shared_ptr<const GraphPMetricPair> load_graph_pair(const RunConfig& cfg, Exponent q) {
  if (cfg.graph_file.empty()) throw invalid_input("--pair graph needs --graph FILE");
  auto in = io::detail::open(cfg.graph_file);
  GraphSpec spec = parse_graph(in, cfg.exact, cfg.graph_file);
  return std::make_shared<const GraphPMetricPair>(std::move(spec.graph), q, spec.subset);
}

}  // namespace detail

inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tol > 0)) throw invalid_input("--tol must be positive");
    detail::Runner runner(cfg, out);
    Exit status;
    if (cfg.pair == "halfplane") {
      if (cfg.command == "validate") throw invalid_input("validate needs --pair graph");
      Exponent q = cfg.q_text.empty() ? Exponent::infinity() : Exponent::parse(cfg.q_text);
      status = runner.dispatch(std::make_shared<const HalfPlanePair>(q));
    } else if (cfg.pair == "graph") {
      Exponent q = cfg.q_text.empty() ? Exponent(1) : Exponent::parse(cfg.q_text);
      auto pair = detail::load_graph_pair(cfg, q);
      status = cfg.command == "validate" ? runner.validate(*pair) : runner.dispatch(pair);
    } else {
      throw invalid_input("unknown pair '" + cfg.pair + "' (expected halfplane or graph)");
    }
    return static_cast<int>(status);
  } catch (const refused_computation& e) {
    err << "refused: " << e.what() << '\n';
    return static_cast<int>(Exit::refused);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::invalid);
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Wasserstein distances on metric pairs"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p_text, "Wasserstein order, a number >= 1 or inf");
    sub->add_option("--q", cfg.q_text, "ground exponent: l^q norm (halfplane) or path q-metric (graph)");
    sub->add_option("--pair", cfg.pair, "metric pair: halfplane or graph")->check(CLI::IsMember({"halfplane", "graph"}));
    sub->add_option("--graph", cfg.graph_file, "graph edge list for --pair graph");
    sub->add_flag("--exact", cfg.exact, "read numbers as exact rationals");
    sub->add_option("--tol", cfg.tol, "tolerance for certificate and metric checks");
    sub->add_flag("--json", cfg.json, "JSON output");
  };
  struct Spec {
    const char* name;
    const char* help;
    const char* files;
  };
  const Spec specs[] = {
      {"dist", "W_p between two diagram files", "diagram files"},
      {"vdist", "virtual W_1 (or certified W_p) between two signed diagram files", "signed diagram files"},
      {"mdist", "W_p (or signed W_1) between two measure files", "measure files"},
      {"pdist", "partial W_p^A (or signed partial W_1) between two measure files", "measure files"},
      {"matrix", "pairwise W_p over the .csv diagram files of a directory", "directory"},
      {"validate", "check the p-metric inequality on every vertex triple of a graph pair", ""},
      {"explain", "optimal matching or transport plan as JSON", "input files"},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (std::string_view(s.files).size() > 0) sub->add_option("files", cfg.files, s.files);
    if (std::string_view(s.name) == "matrix") sub->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    if (std::string_view(s.name) == "explain") {
      sub->add_flag("--measures", cfg.measures, "inputs are measures; emit a transport plan");
      sub->add_flag("--partial", cfg.partial, "inputs are measures; emit a partial transport plan");
    }
    sub->callback([&cfg, sub] {
      cfg.command = sub->get_name();
      cfg.p_given = sub->count("--p") > 0;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(Exit::invalid);
  }
  return execute(cfg, out, err);
}

}  // namespace wass::cli
