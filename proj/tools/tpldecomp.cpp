#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpd/errors.hpp"
#include "tpd/exec.hpp"
#include "tpd/metrics.hpp"
#include "tpd/pipeline.hpp"
#include "tpd/svg.hpp"

namespace {

// Exit codes: 0 ok, 3 layout parse, 4 validation/size, 5 file I/O, 6 internal.
constexpr int kExitParse = 3;
constexpr int kExitValidation = 4;
constexpr int kExitIo = 5;
constexpr int kExitInternal = 6;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::ios_base::failure("cannot read " + path);
  return ss.str();
}

void spill(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  out << data;
  out.flush();
  if (!out) throw std::ios_base::failure("cannot write " + path);
}

std::string render_graph_json(const tpd::LayoutSpec& spec, const tpd::DecompGraph& g) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["fragments"] = nlohmann::ordered_json::array();
  for (const auto& v : g.verts) {
    nlohmann::ordered_json f;
    f["feature_id"] = spec.features[v.members[0].feature].id;
    f["fragment_index"] = v.members[0].index;
    f["rects"] = nlohmann::ordered_json::array();
    for (const auto& r : v.rects) f["rects"].push_back({r.x0, r.y0, r.x1, r.y1});
    j["fragments"].push_back(std::move(f));
  }
  j["conflict_edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : g.conflict_edges) j["conflict_edges"].push_back({u, v});
  j["stitch_edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : g.stitch_edges) j["stitch_edges"].push_back({u, v});
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triple patterning layout decomposition"};
  app.get_formatter()->column_width(30);

  std::string input;
  app.add_option("input", input, "layout JSON file")->required();

  tpd::PipelineOptions opt;
  app.add_option("--alpha", opt.alpha, "stitch cost weight")->capture_default_str();
  app.add_option("--beta", opt.beta, "density uniformity weight")->capture_default_str();
  app.add_option("--bin-factor", opt.bin_factor, "bin side as a multiple of dis_m")
      ->capture_default_str();
  app.add_option("--bin-overlap", opt.bin_overlap, "bin overlap fraction, 0..<1")
      ->capture_default_str();
  app.add_option("--th-union", opt.th_union, "merge threshold on X_ij")
      ->capture_default_str();
  app.add_option("--th-separate", opt.th_separate, "separate threshold on X_ij")
      ->capture_default_str();
  app.add_option("--kappa", opt.kappa, "vague-pair weight in mapping edges")
      ->capture_default_str();
  app.add_option("--backtrack-limit", opt.backtrack_limit,
                 "max mapping-graph size for exhaustive partitioning")
      ->capture_default_str();
  app.add_option("--max-stitch", opt.max_stitch, "stitch candidate cap per feature")
      ->capture_default_str();
  app.add_option("--sdp-tol", opt.sdp_tol, "SDP convergence tolerance")
      ->capture_default_str();
  app.add_option("--sdp-max-iter", opt.sdp_max_iter, "SDP iteration cap")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "random seed (reserved)")->capture_default_str();
  app.add_option("--jobs", opt.jobs, "components processed in parallel")
      ->capture_default_str();
  app.add_flag("--no-peel", [&](std::int64_t) { opt.peel = false; },
               "disable low-degree vertex removal");
  app.add_flag("--no-biconnected", [&](std::int64_t) { opt.biconnected = false; },
               "disable cut-vertex splitting");
  app.add_flag("--no-cluster", [&](std::int64_t) { opt.cluster = false; },
               "disable vertex clustering");
  app.add_flag("--no-trial", [&](std::int64_t) { opt.trial = false; },
               "disable the fast coloring trial");

  std::string out_path, report_path, svg_path, dump_graph_path;
  bool oracle = false, timings = false, serial = false;
  int threads = 0;
  app.add_option("--out", out_path, "write the coloring JSON here");
  app.add_option("--report", report_path, "write the report JSON here");
  app.add_option("--svg", svg_path, "write an SVG rendering here");
  app.add_option("--dump-graph", dump_graph_path,
                 "write the decomposition graph JSON here");
  app.add_flag("--oracle", oracle,
               "append the brute-force optimum to the report (<= 15 fragments)");
  app.add_flag("--timings", timings, "include stage timings in the report");
  app.add_flag("--serial", serial, "serial kernels (parallel is bit-identical)");
  app.add_option("--threads", threads, "kernel thread count, 0 = library default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    tpd::set_default_exec(serial ? tpd::Exec::serial : tpd::Exec::parallel);
    tpd::set_thread_count(threads);

    tpd::LayoutSpec spec = tpd::parse_layout(slurp(input));
    tpd::PipelineResult res = tpd::run_pipeline(spec, opt);

    double oracle_obj = 0.0;
    const double* oracle_ptr = nullptr;
    if (oracle) {
      auto best = tpd::brute_force_optimal(res.graph, opt.alpha, opt.beta);
      oracle_obj = best.objective;
      oracle_ptr = &oracle_obj;
    }

    if (!out_path.empty())
      spill(out_path, tpd::render_coloring_json(spec, res.graph, res.coloring));
    if (!report_path.empty())
      spill(report_path,
            tpd::render_report_json(spec, res, opt, timings, oracle_ptr));
    if (!svg_path.empty()) spill(svg_path, tpd::render_svg(spec, res.graph, res.coloring));
    if (!dump_graph_path.empty()) spill(dump_graph_path, render_graph_json(spec, res.graph));

    std::cout << "features=" << spec.features.size()
              << " fragments=" << res.graph.verts.size()
              << " conflicts=" << res.report.conflicts
              << " stitches=" << res.report.stitches << " cost=" << res.report.cost
              << " du_sum=" << res.report.du_sum;
    if (oracle_ptr) std::cout << " oracle=" << oracle_obj;
    std::cout << "\n";
    return 0;
  } catch (const tpd::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const tpd::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const tpd::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
