// Command-line front end. Exit codes: 0 success, 1 property violation,
// 2 usage or input error, 3 resource cap.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mgw/errors.hpp"
#include "mgw/verify.hpp"

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3 };

struct Globals {
  int d = 5;
  std::uint64_t seed = 1;
  std::vector<std::string> s0;
  std::string format = "json";
  std::string out;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw mgw::InputError("cannot write " + g.out);
  f << text;
}

mgw::GeneratingSet generating_set(const Globals& g) {
  return g.s0.empty() ? mgw::GeneratingSet::standard(g.d) : mgw::GeneratingSet::parse(g.d, g.s0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for the alternating mother group and its Schreier dynamics", "mgw"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--d", g.d, "tree degree (>= 5)")->envname("MGW_D")->check(CLI::Range(5, 10));
  app.add_option("--seed", g.seed, "base seed for every sampled corpus")->envname("MGW_SEED");
  app.add_option("--s0", g.s0, "generator of S0 in text form, repeatable (default: standard set)");
  app.add_option("--format", g.format, "output format")->envname("MGW_FORMAT")->check(CLI::IsMember({"dot", "json"}));
  app.add_option("--out", g.out, "output path, '-' for stdout")->envname("MGW_OUT");

  // level-graph
  auto* lg = app.add_subcommand("level-graph", "Schreier graph of S0 on level n");
  int level_n = 1, level_cap = mgw::kDefaultLevelCap;
  bool level_dot = false;
  lg->add_option("-n,--level", level_n, "level")->required()->check(CLI::PositiveNumber);
  lg->add_option("--max-level", level_cap, "size cap on n");
  lg->add_flag("--dot", level_dot, "shorthand for --format dot");

  // gray-piece
  auto* gp = app.add_subcommand("gray-piece", "Gray code piece around a point");
  std::string point;
  int radius = 2, left = -1, right = -1;
  gp->add_option("--point", point, "basepoint, e.g. '12|(3)' or '0|0*[21]'")->required();
  gp->add_option("--radius", radius, "central radius")->check(CLI::NonNegativeNumber);
  gp->add_option("--left", left, "left window bound (overrides --radius)");
  gp->add_option("--right", right, "right window bound (overrides --radius)");

  // bratteli export
  auto* br = app.add_subcommand("bratteli", "stationary Bratteli diagram");
  auto* bre = br->add_subcommand("export", "export levels 0..L");
  br->require_subcommand(1);
  int levels = 3;
  bre->add_option("--levels", levels, "number of levels")->check(CLI::Range(0, 12));

  // eta
  auto* et = app.add_subcommand("eta", "eta element of an admissible triplet");
  std::string set_text, g_text, h_text;
  et->add_option("--set", set_text, "clopen set U in labelword@vertex form")->required();
  et->add_option("--g-word", g_text, "group word g")->required();
  et->add_option("--h-word", h_text, "group word h")->required();

  // verify
  auto* vf = app.add_subcommand("verify", "run a verification suite and write a JSON report");
  std::string which;
  std::vector<std::string> names{"all"};
  for (const auto& [name, suite] : mgw::suites()) names.push_back(name);
  vf->add_option("suite", which, "suite name")->required()->check(CLI::IsMember(names));
  mgw::VerifyConfig vc;
  vf->add_option("--pieces", vc.pieces, "marginals: pieces sampled")->envname("MGW_PIECES");
  vf->add_option("--depth", vc.depth, "bounded type: levels audited")->envname("MGW_DEPTH");
  vf->add_option("--levels", vc.levels, "transitivity: highest level");
  vf->add_option("--corpus", vc.corpus, "n0: basepoints");
  vf->add_option("--R", vc.radius_r, "n0: distance bound R");
  vf->add_option("--n0-bound", vc.n0_bound, "n0: search bound");
  vf->add_option("--n0", vc.n0_override, "commutator: fixed n0 instead of searching");
  vf->add_option("--triplets", vc.triplets, "commutator: triplets checked");
  vf->add_option("--gadgets", vc.gadgets, "torsion: 3-cycles built");
  vf->add_option("--pairs", vc.regularity_pairs, "regularity: stabilizing pairs");
  vf->add_option("--encode-depth", vc.encode_depth, "encoding: exhaustive path depth");
  vf->add_option("--samples", vc.encode_samples, "encoding: sampled points");
  vf->add_option("--subshift-pairs", vc.subshift_pairs, "subshift: point pairs");
  vf->add_option("--subshift-shared", vc.subshift_shared, "subshift: longest common prefix of a pair");
  vf->add_option("--stabilizer-pairs", vc.stabilizer_pairs, "stabilizer: point pairs");
  vf->add_option("--stabilizer-shared", vc.stabilizer_shared, "stabilizer: longest common prefix of a pair");
  vf->add_option("--length", vc.brieussel_length, "brieussel: word length bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (lg->parsed()) {
      const auto graph = mgw::level_graph(generating_set(g), level_n, level_cap);
      emit(g, level_dot || g.format == "dot" ? mgw::level_graph_dot(graph) : mgw::level_graph_json(graph).dump(2) + "\n");
    } else if (gp->parsed()) {
      const int l = left >= 0 ? left : radius, r = right >= 0 ? right : radius;
      const auto piece = mgw::gray_piece_window(mgw::TildePoint::parse(point), l, r, g.d);
      emit(g, g.format == "dot" ? mgw::gray_piece_dot(piece) : mgw::gray_piece_json(piece).dump(2) + "\n");
    } else if (br->parsed()) {
      emit(g, g.format == "dot" ? mgw::bratteli_dot(g.d, levels) : mgw::bratteli_json(g.d, levels).dump(2) + "\n");
    } else if (et->parsed()) {
      const auto x = mgw::eta(mgw::ClopenSet::parse(set_text, g.d), mgw::parse_group_word(g_text, g.d),
                              mgw::parse_group_word(h_text, g.d));
      mgw::Json j = mgw::to_json(x);
      const auto order = mgw::order_of(x);
      j["order"] = order ? mgw::Json(*order) : mgw::Json(nullptr);
      emit(g, j.dump(2) + "\n");
    } else if (vf->parsed()) {
      vc.d = g.d;
      vc.seed = g.seed;
      vc.s0 = generating_set(g);
      std::vector<mgw::SuiteReport> results;
      for (const auto& [name, suite] : mgw::suites()) {
        if (which != "all" && which != name) continue;
        results.push_back(suite(vc));
        const auto& r = results.back();
        std::cerr << (r.passed ? "ok   " : "VIOLATION ") << r.suite << ": " << r.summary << "\n";
      }
      const mgw::Json report = mgw::report_json(vc, results);
      emit(g, report.dump(2) + "\n");
      return report["passed"].get<bool>() ? kOk : kViolation;
    }
  } catch (const mgw::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const mgw::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const mgw::DiagnosticError& e) {
    std::cerr << "diagnostic: " << e.what() << "\n";
    return kViolation;
  }
  return kOk;
}
