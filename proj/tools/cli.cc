// Copyright 2026 The Multicut Labeling Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multicut/csp.h"
#include "multicut/demand.h"
#include "multicut/distlp.h"
#include "multicut/generate.h"
#include "multicut/io.h"
#include "multicut/labellp.h"
#include "multicut/rounding.h"
#include "multicut/uml.h"

namespace multicut::cli {
namespace {

template <typename T>
void ReadEnv(const char* name, T* value) {
  const char* text = std::getenv(name);
  if (!text || !*text) return;
  const std::string s = text;
  T parsed{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw Error(ErrorCode::kParameter,
                std::string(name) + " must be an integer, got '" + s + "'");
  }
  *value = parsed;
}

std::string ReadAll(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string ReadSource(const std::string& path, std::istream& in) {
  if (path == "-") return ReadAll(in);
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::kParse, "cannot read '" + path + "'");
  return ReadAll(file);
}

// Plain-text rendering of a report for --format human.
void RenderHuman(const Json& j, std::ostream& out, int indent) {
  const std::string pad(indent, ' ');
  auto scalar = [](const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto flat = [](const Json& v) {
    return std::all_of(v.begin(), v.end(), [](const Json& x) {
      return !x.is_object() && !x.is_array();
    });
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_object() && !value.empty()) {
      out << pad << key << ":\n";
      RenderHuman(value, out, indent + 2);
    } else if (value.is_array() && !value.empty() && !flat(value)) {
      out << pad << key << ":\n";
      for (size_t i = 0; i < value.size(); ++i) {
        out << pad << "  [" << i << "]\n";
        if (value[i].is_object()) {
          RenderHuman(value[i], out, indent + 4);
        } else {
          out << pad << "    " << value[i].dump() << "\n";
        }
      }
    } else if (value.is_array()) {
      out << pad << key << ":";
      for (const Json& x : value) out << " " << scalar(x);
      out << "\n";
    } else if (value.is_object()) {
      out << pad << key << ": {}\n";
    } else {
      out << pad << key << ": " << scalar(value) << "\n";
    }
  }
}

struct GenFlags {
  GenOptions options;
  std::string shape = "random";

  void Register(CLI::App* app) {
    app->add_option("--n", options.n, "Vertex count");
    app->add_option("--k", options.k, "Terminal parameter of the shape");
    app->add_option("--density", options.edge_density, "Edge probability");
    app->add_option("--directedness", options.directedness,
                    "Probability that an edge is directed");
    app->add_option("--shape", shape,
                    "random, triangle-cast, complete, disjoint-matching or "
                    "matching-removed-complete");
    app->add_option("--max-edges", options.max_edges,
                    "Keep at most this many edges (0: all)");
    app->add_option("--max-weight", options.max_weight, "Largest edge weight");
  }

  GenOptions Resolve(uint64_t seed) const {
    GenOptions o = options;
    o.seed = seed;
    o.shape = ParseDemandShape(shape);
    return o;
  }
};

Json WitnessJson(const SupplyGraph& g, const std::vector<DemandPair>& pairs) {
  Json out = Json::array();
  for (auto [s, t] : pairs) out.push_back({g.vertices[s], g.vertices[t]});
  return out;
}

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err)
      : in_(in), out_(out), err_(err) {}

  int Run(const std::vector<std::string>& args);

 private:
  MulticutInstance LoadInstance() const {
    return ParseInstance(ReadSource(input_, in_));
  }
  Json LoadJson(const std::string& path) const {
    return ParseJson(ReadSource(path, in_));
  }
  SearchLimits Limits() const { return {config_.enum_cap}; }
  LpOptions Lp() const {
    LpOptions o;
    o.feasibility_tolerance = config_.tolerance;
    o.optimality_tolerance = config_.tolerance;
    return o;
  }
  void Emit(const Json& doc) const {
    if (format_ == "human") {
      RenderHuman(doc, out_, 0);
    } else {
      out_ << DumpJson(doc);
    }
  }

  int Validate();
  int SolveLpCommand();
  int RoundDir();
  int SolveUnd();
  int Reduce();
  int Translate();
  int Gap();
  int Decompose();
  int Analyze();
  int Gen();

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  RunConfig config_;
  std::string format_ = "machine";
  std::string input_ = "-";
  std::string formulation_ = "distance";
  bool emit_lp_ = false;
  int t_ = 2;
  std::string target_;
  bool preprocessed_ = false;
  std::string direction_;
  std::string solution_path_;
  bool search_ = false;
  int seeds_ = 100;
  int matching_ = 0;
  int extension_ = 0;
  GenFlags gen_;
};

int Runner::Validate() {
  const Json doc = LoadJson(input_);
  Json report = {{"schema", "multicut-validation/1"}};
  const std::string schema = SchemaOf(doc);
  Json violations = Json::array();
  if (schema == kCspSchema) {
    CspFromJson(doc);
  } else {
    const MulticutInstance inst = InstanceFromJson(doc, false);
    for (const Violation& v : ValidateInstance(inst)) {
      violations.push_back(
          {{"kind", ViolationKindName(v.kind)}, {"message", v.message}});
    }
  }
  report["document"] = schema;
  report["valid"] = violations.empty();
  report["violations"] = violations;
  Emit(report);
  if (!violations.empty()) {
    err_ << "error: ValidationError: " << violations.size()
         << " violation(s); first: "
         << violations[0]["message"].get<std::string>() << "\n";
    return ExitCodeFor(ErrorCode::kValidation);
  }
  return 0;
}

int Runner::SolveLpCommand() {
  if (formulation_ == "basic") {
    const Json doc = LoadJson(input_);
    CspInstance csp;
    if (SchemaOf(doc) == kCspSchema) {
      csp = CspFromJson(doc);
    } else {
      MulticutInstance inst = InstanceFromJson(doc);
      if (!preprocessed_) inst = PreprocessSupply(inst);
      csp = MulticutToCsp(inst);
    }
    if (emit_lp_) {
      out_ << BuildBasicLp(csp).lp.ToLpFormat();
      return 0;
    }
    BasicLpSolution s = SolveBasicLp(csp, kDefaultBasicLpCap, Lp());
    Emit(BasicSolutionToJson(csp, s.solution, s.value));
    return 0;
  }
  const MulticutInstance inst = LoadInstance();
  if (formulation_ == "distance") {
    if (emit_lp_) {
      out_ << BuildDistanceLp(inst).lp.ToLpFormat();
      return 0;
    }
    DistanceLpSolution s = SolveDistanceLp(inst, Lp());
    Emit(LengthsToJson(inst.supply, s.x, s.value));
    return 0;
  }
  if (formulation_ == "label") {
    if (emit_lp_) {
      out_ << BuildLabelLp(inst, config_.label_k_cap).lp.ToLpFormat();
      return 0;
    }
    LabelLpSolution s = SolveLabelLp(inst, config_.label_k_cap, Lp());
    Emit(LabelSolutionToJson(inst, s.solution, s.value));
    return 0;
  }
  throw Error(ErrorCode::kParameter,
              "unknown formulation '" + formulation_ + "'");
}

int Runner::RoundDir() {
  const MulticutInstance inst = LoadInstance();
  const DistanceLpSolution lp = SolveDistanceLp(inst, Lp());
  const RoundingOutcome r = DerandomizedRound(inst, lp.x);
  Json doc = {{"schema", "multicut-rounding/1"},
              {"lp_value", lp.value},
              {"theta", r.theta},
              {"cut", CutToJson(inst.supply, r.cut)},
              {"valid", VerifyCut(inst, r.cut)}};
  doc["profile"] = Json::object();
  for (int e = 0; e < inst.supply.num_edges(); ++e) {
    doc["profile"][inst.supply.edges[e].id] = r.profile[e];
  }
  Emit(doc);
  return 0;
}

int Runner::SolveUnd() {
  const MulticutInstance inst = LoadInstance();
  Tk2Options options;
  options.trials = config_.trials;
  options.seed = config_.seed;
  options.max_mis = config_.mis_cap;
  options.search = Limits();
  try {
    const CutSolution cut = SolveTk2(inst, t_, options);
    Emit({{"schema", "multicut-cut/1"},
          {"t", t_},
          {"cut", CutToJson(inst.supply, cut)},
          {"valid", VerifyCut(inst, cut)}});
    return 0;
  } catch (const NotTk2FreeError& e) {
    err_ << "witness: " << WitnessJson(inst.supply, e.witness()).dump() << "\n";
    throw;
  }
}

int Runner::Reduce() {
  if (target_ == "multicut") {
    Emit(InstanceToJson(CspToMulticut(CspFromJson(LoadJson(input_)))));
    return 0;
  }
  MulticutInstance inst = LoadInstance();
  if (target_ == "gadget") {
    Emit(InstanceToJson(UndirectedGadget(inst)));
  } else if (target_ == "preprocessed") {
    Emit(InstanceToJson(PreprocessSupply(inst)));
  } else if (target_ == "csp") {
    if (!preprocessed_) inst = PreprocessSupply(inst);
    Emit(CspToJson(MulticutToCsp(inst)));
  } else {
    throw Error(ErrorCode::kParameter, "unknown target '" + target_ + "'");
  }
  return 0;
}

int Runner::Translate() {
  if (solution_path_.empty()) {
    throw Error(ErrorCode::kParameter, "--solution is required");
  }
  if (solution_path_ == "-" && input_ == "-") {
    throw Error(ErrorCode::kParameter,
                "instance and solution cannot both come from stdin");
  }
  const MulticutInstance inst = LoadInstance();
  const Json sol = LoadJson(solution_path_);
  if (direction_ == "dist2label") {
    FractionalEdgeSolution x = LengthsFromJson(inst.supply, sol);
    LabelSolution label = DistLpToLabel(inst, x);
    Emit(
        LabelSolutionToJson(inst, label, FractionalCost(inst.supply, label.x)));
  } else if (direction_ == "label2dist") {
    FractionalEdgeSolution x =
        LabelToDistLp(inst, LabelSolutionFromJson(inst, sol));
    Emit(LengthsToJson(inst.supply, x, FractionalCost(inst.supply, x)));
  } else if (direction_ == "label2basic") {
    const CspInstance csp = MulticutToCsp(inst);
    BasicSolution z = LabelToBasic(inst, LabelSolutionFromJson(inst, sol));
    Emit(BasicSolutionToJson(csp, z, BasicCost(csp, z)));
  } else if (direction_ == "basic2label") {
    const CspInstance csp = MulticutToCsp(inst);
    LabelSolution label = BasicToLabel(inst, BasicSolutionFromJson(csp, sol));
    Emit(
        LabelSolutionToJson(inst, label, FractionalCost(inst.supply, label.x)));
  } else {
    throw Error(ErrorCode::kParameter,
                "unknown direction '" + direction_ + "'");
  }
  return 0;
}

int Runner::Gap() {
  auto report = [&](const MulticutInstance& inst, const GapReport& g) {
    return Json{{"lp_value", g.lp_value},
                {"opt_value", g.opt_value},
                {"ratio", g.ratio},
                {"opt_cut", CutToJson(inst.supply, g.opt_cut)}};
  };
  if (!search_) {
    const MulticutInstance inst = LoadInstance();
    Json doc = report(inst, FlowCutGap(inst, config_.edge_cap, Lp()));
    doc["schema"] = "multicut-gap/1";
    Emit(doc);
    return 0;
  }
  if (seeds_ < 1)
    throw Error(ErrorCode::kParameter, "--seeds must be positive");
  Json best;
  double best_ratio = -1;
  int feasible = 0;
  for (int i = 0; i < seeds_; ++i) {
    const uint64_t seed = config_.seed + static_cast<uint64_t>(i);
    const MulticutInstance inst = GenerateInstance(gen_.Resolve(seed));
    GapReport g;
    try {
      g = FlowCutGap(inst, config_.edge_cap, Lp());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasible) throw;
      continue;
    }
    ++feasible;
    if (g.ratio > best_ratio) {
      best_ratio = g.ratio;
      best = report(inst, g);
      best["seed"] = seed;
      best["instance"] = InstanceToJson(inst);
    }
  }
  Emit({{"schema", "multicut-gap-search/1"},
        {"seeds", seeds_},
        {"feasible", feasible},
        {"best", best}});
  return 0;
}

int Runner::Decompose() {
  const MulticutInstance inst = LoadInstance();
  Json parts = Json::array();
  for (const DemandGraph& part : DecomposeBipartite(inst.demand)) {
    parts.push_back(InstanceToJson({inst.supply, part}));
  }
  Emit({{"schema", "multicut-decomposition/1"}, {"parts", parts}});
  return 0;
}

int Runner::Analyze() {
  const MulticutInstance inst = LoadInstance();
  const SupplyGraph& g = inst.supply;
  if (matching_ > 0 && extension_ > 0) {
    throw Error(ErrorCode::kParameter,
                "--matching and --extension are exclusive");
  }
  if (matching_ > 0) {
    auto m = FindInducedMatching(inst.demand, matching_, Limits());
    Emit({{"schema", "multicut-analysis/1"},
          {"matching", matching_},
          {"result", m ? "found" : "none"},
          {"witness", m ? WitnessJson(g, *m) : Json(nullptr)}});
    return 0;
  }
  if (extension_ > 0) {
    auto w = FindMatchingExtension(inst.demand, extension_, Limits());
    Json witness = nullptr;
    if (w) {
      witness = {{"s", Json::array()}, {"t", Json::array()}};
      for (int v : w->s) witness["s"].push_back(g.vertices[v]);
      for (int v : w->t) witness["t"].push_back(g.vertices[v]);
    }
    Emit({{"schema", "multicut-analysis/1"},
          {"extension", extension_},
          {"result", w ? "found" : "none"},
          {"witness", witness}});
    return 0;
  }
  const DemandAnalysis a = AnalyzeDemand(inst.demand);
  auto names = [&](const std::vector<int>& vs) {
    Json out = Json::array();
    for (int v : vs) out.push_back(g.vertices[v]);
    return out;
  };
  auto positions = [](const std::vector<std::vector<int>>& sets) {
    Json out = Json::array();
    for (const auto& s : sets) {
      Json row = Json::array();
      for (int i : s) row.push_back(i + 1);
      out.push_back(row);
    }
    return out;
  };
  Emit({{"schema", "multicut-analysis/1"},
        {"sources", names(a.sources)},
        {"sinks", names(a.sinks)},
        {"Y", positions(a.y)},
        {"Z", positions(a.z)}});
  return 0;
}

int Runner::Gen() {
  Emit(InstanceToJson(GenerateInstance(gen_.Resolve(config_.seed))));
  return 0;
}

int Runner::Run(const std::vector<std::string>& args) {
  config_ = RunConfig::FromEnvironment();
  CLI::App app{"Multicut relaxations, roundings and reductions", "multicut"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format_, "machine (JSON) or human")
      ->check(CLI::IsMember({"machine", "human"}));
  app.add_option("--seed", config_.seed, "Random seed");
  app.add_option("--trials", config_.trials, "Rounding trials");
  app.add_option("--edge-cap", config_.edge_cap,
                 "Finite edges the exact search may enumerate");
  app.add_option("--enum-cap", config_.enum_cap, "Search node cap");
  app.add_option("--label-k-cap", config_.label_k_cap,
                 "Largest terminal count for the label LP");
  app.add_option("--mis-cap", config_.mis_cap,
                 "Largest number of maximal independent sets");
  app.add_option("--tolerance", config_.tolerance, "LP tolerance");

  std::function<int()> action;
  auto command = [&](const char* name, const char* help, auto method,
                     bool takes_input = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (takes_input) {
      sub->add_option("input", input_, "Input document ('-' for stdin)");
    }
    sub->callback([this, &action, method] {
      action = [this, method] { return (this->*method)(); };
    });
    return sub;
  };
  command("validate", "Check an instance or CSP document", &Runner::Validate);
  CLI::App* solve =
      command("solve-lp", "Solve an LP relaxation", &Runner::SolveLpCommand);
  solve->add_option("--formulation", formulation_, "distance, label or basic")
      ->check(CLI::IsMember({"distance", "label", "basic"}));
  solve->add_flag("--emit-lp", emit_lp_, "Print the LP instead of solving");
  solve->add_flag("--preprocessed", preprocessed_,
                  "Input already satisfies the supply assumptions");
  command("round-dir", "Derandomized ball rounding of the distance LP",
          &Runner::RoundDir);
  CLI::App* und = command("solve-und", "Labeling pipeline for tK2-free demands",
                          &Runner::SolveUnd);
  und->add_option("--t", t_, "Forbidden induced matching size");
  CLI::App* reduce =
      command("reduce", "Instance transformations", &Runner::Reduce);
  reduce->add_option("--to", target_, "csp, multicut, preprocessed or gadget")
      ->required()
      ->check(CLI::IsMember({"csp", "multicut", "preprocessed", "gadget"}));
  reduce->add_flag("--preprocessed", preprocessed_,
                   "Input already satisfies the supply assumptions");
  CLI::App* translate =
      command("translate", "Translate LP solutions", &Runner::Translate);
  translate
      ->add_option("--direction", direction_,
                   "label2basic, basic2label, dist2label or label2dist")
      ->required()
      ->check(CLI::IsMember(
          {"label2basic", "basic2label", "dist2label", "label2dist"}));
  translate->add_option("--solution", solution_path_, "Solution document")
      ->required();
  CLI::App* gap =
      command("gap", "Flow-cut gap of an instance or a search", &Runner::Gap);
  gap->add_flag("--search", search_,
                "Random restarts over generated instances");
  gap->add_option("--seeds", seeds_, "Instances to try in search mode");
  gen_.Register(gap);
  command("decompose", "Split the demand graph into bipartite parts",
          &Runner::Decompose);
  CLI::App* analyze =
      command("analyze", "Demand graph structure", &Runner::Analyze);
  analyze->add_option("--matching", matching_,
                      "Look for an induced t-matching");
  analyze->add_option("--extension", extension_,
                      "Look for an induced k-matching-extension");
  CLI::App* gen =
      command("gen", "Generate a random instance", &Runner::Gen, false);
  gen_.Register(gen);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err_ << "error: ParseError: " << e.what() << "\n";
    return ExitCodeFor(ErrorCode::kParse);
  }
  config_.Validate();
  return action();
}

}  // namespace

RunConfig RunConfig::FromEnvironment() {
  RunConfig c;
  ReadEnv("MULTICUT_EDGE_CAP", &c.edge_cap);
  ReadEnv("MULTICUT_ENUM_CAP", &c.enum_cap);
  ReadEnv("MULTICUT_LABEL_K_CAP", &c.label_k_cap);
  ReadEnv("MULTICUT_MIS_CAP", &c.mis_cap);
  return c;
}

void RunConfig::Validate() const {
  if (trials < 1 || edge_cap < 1 || enum_cap < 1 || label_k_cap < 1 ||
      mis_cap < 1) {
    throw Error(ErrorCode::kParameter, "trials and caps must be positive");
  }
  if (!(tolerance > 0)) {
    throw Error(ErrorCode::kParameter, "tolerance must be positive");
  }
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSizeGuard:
      return 3;
    case ErrorCode::kInfeasible:
      return 4;
    case ErrorCode::kInfiniteEdgeCut:
    case ErrorCode::kNumericFailure:
    case ErrorCode::kInternal:
      return 5;
    default:
      return 2;
  }
}

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  // Reports are buffered so a failing command leaves `out` untouched.
  std::ostringstream buffer;
  int status;
  try {
    Runner runner(in, buffer, err);
    status = runner.Run(args);
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: InternalError: " << e.what() << "\n";
    return 5;
  }
  out << buffer.str();
  return status;
}

}  // namespace multicut::cli
