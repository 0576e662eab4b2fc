#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "umwelt/errors.hpp"
#include "umwelt/io.hpp"
#include "umwelt/multi_agent.hpp"
#include "umwelt/random_model.hpp"
#include "umwelt/refinement.hpp"
#include "umwelt/synthesis.hpp"

namespace umwelt::cli {

namespace {

/// An analysis verdict that should end the command with exit code 1.
struct AnalysisFailure : Error {
  using Error::Error;
};

struct Input {
  std::string bytes;
  Json doc;
};

Input read_input(const std::string& path) {
  Input in;
  in.bytes = read_file(path);
  in.doc = parse_json(in.bytes);
  return in;
}

bool is_two_agent(const Json& doc) { return doc.is_object() && doc.contains("agents"); }

JointLimits joint_limits() {
  JointLimits limits;
  if (const char* env = std::getenv("UMWELT_MAX_JOINT_STATES")) {
    try {
      limits.max_joint_states = std::stoul(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("UMWELT_MAX_JOINT_STATES is not a number: ") + env);
    }
  }
  return limits;
}

std::string blocks_text(const Partition& p) {
  std::string s;
  for (const auto& b : p.blocks()) {
    s += s.empty() ? "{" : " {";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + p.space().label(b[i]);
    s += "}";
  }
  return s;
}

std::string word_text(const FiniteSpace& space, std::span<const StateIndex> word) {
  if (word.empty()) return "(empty)";
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) s += (i ? " " : "") + space.label(word[i]);
  return s;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + out_path + "'");
  file << text;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// validate ------------------------------------------------------------------

int cmd_validate(const std::string& path, std::ostream& out) {
  const Input in = read_input(path);
  std::vector<Violation> violations =
      is_two_agent(in.doc) ? validate(two_agent_from_json(in.doc)) : validate(model_from_json(in.doc));
  if (violations.empty()) {
    out << "valid\n";
    return ok;
  }
  for (const auto& v : violations) out << v.to_string() << "\n";
  return failure;
}

// analyze -------------------------------------------------------------------

struct AnalyzeOptions {
  std::string path;
  bool sep = false, am = false, intrinsic = false, all = false, timing = false;
  std::string format = "json";
  std::string out_path;
  std::size_t samples = 100000;
  std::uint64_t seed = 0x5eed;
  std::string estimator = "paths";
};

std::string invariance_text(const LoopModel& m, const InvarianceResult& r) {
  if (r.invariant) return "invariant";
  const auto& w = *r.witness;
  return "not invariant: action " + m.action.label(w.action) + " sends " + m.world.label(w.state) + " and " +
         m.world.label(w.other) + " to {" + word_text(m.world, w.block) + "} with " + w.mass_state.to_string() +
         " vs " + w.mass_other.to_string();
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const Input in = read_input(o.path);
  const LoopModel m = model_from_json(in.doc);
  require_valid(m);
  const bool sep = o.sep || o.all, intrinsic = o.intrinsic || o.all;
  const bool am = o.am || o.all;
  if (o.am && !m.memoryless) throw AnalysisFailure("--am requires a memoryless model (set \"memoryless\": true)");

  Json report = Json::object();
  Json timing = Json::object();
  Json info = Json::object();
  info["sha256"] = sha256_hex(in.bytes);
  info["world_states"] = m.world.size();
  info["sensor_states"] = m.sensor.size();
  info["memory_states"] = m.memory.size();
  info["action_states"] = m.action.size();
  info["memoryless"] = m.memoryless;
  info["arithmetic"] = arithmetic_to_json(m.arithmetic);
  report["model"] = std::move(info);

  std::ostringstream text;
  text << "model sha256 " << sha256_hex(in.bytes) << "\n";
  text << "|W|=" << m.world.size() << " |S|=" << m.sensor.size() << " |C|=" << m.memory.size()
       << " |A|=" << m.action.size() << (m.memoryless ? " memoryless" : "") << "\n";

  auto start = Clock::now();
  const Partition sb = sigma_beta(m);
  report["sigma_beta"] = partition_to_json(sb);
  text << "sigma(beta): " << blocks_text(sb) << "\n";

  std::optional<RefinementResult> separate;
  if (sep) {
    start = Clock::now();
    separate = w_sep(m);
    timing["w_sep"] = elapsed_ms(start);
    Json j = Json::object();
    j["partition"] = partition_to_json(separate->partition);
    j["trace"] = trace_to_json(separate->trace);
    report["w_sep"] = std::move(j);
    text << "W_sep: " << blocks_text(separate->partition) << " (fixpoint index " << separate->trace.fixpoint_index
         << ")\n";
    for (std::size_t i = 0; i < separate->trace.stages.size(); ++i)
      text << "  stage " << i << ": " << blocks_text(separate->trace.stages[i]) << "\n";
  }

  if (am) {
    if (m.memoryless) {
      start = Clock::now();
      auto r = w_am(m);
      timing["w_am"] = elapsed_ms(start);
      Json j = Json::object();
      j["partition"] = partition_to_json(r.partition);
      j["trace"] = trace_to_json(r.trace);
      if (separate) j["relation_to_w_sep"] = to_string(compare_partitions(r.partition, separate->partition));
      report["w_am"] = std::move(j);
      text << "W_am: " << blocks_text(r.partition);
      if (separate) {
        const Relation rel = compare_partitions(r.partition, separate->partition);
        text << (rel == Relation::equal          ? " (equal to W_sep)"
                 : rel == Relation::incomparable ? " (incomparable with W_sep)"
                                                 : " (" + to_string(rel) + " than W_sep)");
      }
      text << "\n";
    } else {
      Json j = Json::object();
      j["skipped"] = "model is not memoryless";
      report["w_am"] = std::move(j);
      text << "W_am: skipped (model is not memoryless)\n";
    }
  }

  std::optional<IntrinsicResult> intr;
  if (intrinsic) {
    start = Clock::now();
    intr = intrinsic_partition(m);
    timing["intrinsic"] = elapsed_ms(start);
    report["intrinsic"] = intrinsic_to_json(m, *intr);
    text << "W_int: " << blocks_text(intr->partition) << " (basis dimension " << intr->basis.dimension()
         << (intr->basis.authoritative ? "" : ", float mode") << ")\n";
  }

  bool contained = true;
  if (separate && intr) {
    ContainmentReport c;
    c.intrinsic = intr->partition;
    c.separate = separate->partition;
    c.contained = c.separate.refines(c.intrinsic);
    c.equal = c.contained && c.intrinsic.refines(c.separate);
    c.intrinsic_invariance = check_invariance(m, c.intrinsic);
    c.criterion_consistent = c.equal == c.intrinsic_invariance.invariant;
    if (!c.contained)
      for (StateIndex w = 0; w < m.world.size() && !c.violating_state; ++w)
        for (auto v : c.separate.block(c.separate.block_of(w)))
          if (!c.intrinsic.same_block(w, v)) c.violating_state = w;
    contained = c.contained && c.criterion_consistent;
    report["containment"] = containment_to_json(m, c);
    text << "containment: W_int " << (c.contained ? (c.equal ? "equals" : "is strictly coarser than") : "ESCAPES")
         << " W_sep; W_int is " << invariance_text(m, c.intrinsic_invariance) << "\n";
  }

  if (o.all) {
    start = Clock::now();
    const IntrinsicResult& base = *intr;
    const Selector sel = select_representatives(base);
    const ModifiedModel mod = synthesize_alpha_prime(m, sel);
    MonteCarloOptions mc;
    mc.samples = o.samples;
    mc.seed = o.seed;
    mc.enabled = o.samples > 0;
    mc.estimator = o.estimator == "paths" ? Estimator::paths : Estimator::frequencies;
    const auto eq = verify_equivalence(m, mod, mc);
    const auto min = certify_minimal_model(m, mod);
    timing["synthesis"] = elapsed_ms(start);
    Json j = Json::object();
    j["selector"] = selector_to_json(m, sel);
    j["equivalence"] = equivalence_to_json(m, eq);
    j["minimality"] = minimality_to_json(min);
    report["synthesis"] = std::move(j);
    text << "synthesis: equivalence " << (eq.equivalent ? "certified" : "FAILED") << ", W_sep of alpha' "
         << (min.minimal ? "equals" : "DIFFERS FROM") << " W_int";
    if (eq.monte_carlo.ran) text << ", Monte Carlo max TV " << std::setprecision(4) << eq.monte_carlo.max_tv;
    text << "\n";
  }

  if (o.timing) {
    report["timing_ms"] = timing;
    for (auto it = timing.begin(); it != timing.end(); ++it)
      text << "time " << it.key() << ": " << std::fixed << std::setprecision(3) << it.value().get<double>()
           << " ms\n";
  }

  emit(o.format == "text" ? text.str() : dump(report), o.out_path, out);
  return contained ? ok : failure;
}

// minimize ------------------------------------------------------------------

struct MinimizeOptions {
  std::string path;
  std::string out_path;
  std::size_t samples = 100000;
  std::uint64_t seed = 0x5eed;
  std::string estimator = "paths";
};

int cmd_minimize(const MinimizeOptions& o, std::ostream& out) {
  const Input in = read_input(o.path);
  const LoopModel m = model_from_json(in.doc);
  require_valid(m);
  auto sel = selector_from_json(in.doc, m);
  if (!sel) sel = select_representatives(intrinsic_partition(m));
  const ModifiedModel mod = synthesize_alpha_prime(m, *sel);
  MonteCarloOptions mc;
  mc.samples = o.samples;
  mc.seed = o.seed;
  mc.enabled = o.samples > 0;
  mc.estimator = o.estimator == "paths" ? Estimator::paths : Estimator::frequencies;
  const auto eq = verify_equivalence(m, mod, mc);
  const auto min = certify_minimal_model(m, mod);
  const bool passed = eq.equivalent && min.minimal && (!eq.monte_carlo.ran || eq.monte_carlo.passed);

  Json doc = model_to_json(mod.modified());
  doc["selector"] = selector_to_json(m, *sel);
  Json certs = Json::object();
  certs["equivalence"] = equivalence_to_json(m, eq);
  certs["minimality"] = minimality_to_json(min);
  certs["passed"] = passed;
  doc["certificates"] = std::move(certs);
  if (!o.out_path.empty()) emit(dump(doc), o.out_path, out);

  out << "equivalence: " << (eq.equivalent ? "certified" : "failed") << " (union basis dimension "
      << eq.basis_dimension << ")\n";
  if (eq.counterexample) {
    const auto& c = *eq.counterexample;
    out << "counterexample: state " << m.world.label(c.state) << ", sensors " << word_text(m.sensor, c.sensors)
        << " after actions " << word_text(m.action, c.actions) << ": " << c.original.to_string() << " under alpha vs "
        << c.modified.to_string() << " under alpha'\n";
  }
  if (eq.monte_carlo.ran)
    out << "monte carlo (" << to_string(eq.monte_carlo.estimator) << "): max TV " << std::setprecision(4) << eq.monte_carlo.max_tv << " over "
        << eq.monte_carlo.pairs << " state/word pairs (" << (eq.monte_carlo.passed ? "passed" : "failed") << ")\n";
  out << "minimality: W_sep of alpha' " << blocks_text(min.separate_modified) << (min.minimal ? " == " : " != ")
      << "W_int " << blocks_text(min.intrinsic_original) << "\n";
  if (o.out_path.empty()) out << dump(doc);
  return passed ? ok : failure;
}

// compare -------------------------------------------------------------------

struct CompareOptions {
  std::vector<std::string> paths;
  std::string two_agent;
  std::string format = "json";
  std::string out_path;
};

Json lifted_to_json(const LiftedComparison& c) {
  Json j = Json::object();
  j["meet"] = partition_to_json(c.meet);
  Json cyl = Json::array();
  for (bool b : c.block_is_world_cylinder) cyl.push_back(b);
  j["meet_block_is_world_cylinder"] = std::move(cyl);
  j["meet_on_world"] = c.on_world ? partition_to_json(*c.on_world) : Json(nullptr);
  j["join_block_count"] = c.join.block_count();
  j["lifted_equal"] = c.lifted[0] == c.lifted[1];
  return j;
}

int compare_two_agent(const CompareOptions& o, std::ostream& out) {
  const Input in = read_input(o.two_agent);
  const TwoAgentModel m = two_agent_from_json(in.doc);
  auto violations = validate(m);
  if (!violations.empty()) {
    std::string msg = "invalid two-agent model:";
    for (const auto& v : violations) msg += "\n  " + v.to_string();
    throw PreconditionError(msg);
  }
  const auto shared = shared_distinctions(m, joint_limits());

  Json report = Json::object();
  report["sha256"] = sha256_hex(in.bytes);
  report["joint_states"] = shared.joint.size();
  std::ostringstream text;
  text << "model sha256 " << sha256_hex(in.bytes) << "\njoint states " << shared.joint.size() << "\n";
  Json agents = Json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    const LoopModel& v = shared.views[i].model;
    Json a = Json::object();
    a["outer_world_states"] = v.world.size();
    a["sigma_beta"] = partition_to_json(sigma_beta(v));
    a["w_sep"] = partition_to_json(shared.separate[i]);
    if (v.memoryless) a["w_am"] = partition_to_json(w_am(v).partition);
    a["intrinsic"] = partition_to_json(shared.intrinsic[i]);
    a["intrinsic_trivial"] = shared.intrinsic[i].is_trivial();
    agents.push_back(std::move(a));
    text << "agent " << i + 1 << ": outer world " << v.world.size() << " states, W_sep "
         << shared.separate[i].block_count() << " blocks, W_int " << shared.intrinsic[i].block_count() << " blocks\n";
    text << "  W_int: " << blocks_text(shared.intrinsic[i]) << "\n";
  }
  report["agents"] = std::move(agents);
  report["intrinsic_shared"] = lifted_to_json(shared.intrinsic_shared);
  report["separate_shared"] = lifted_to_json(shared.separate_shared);
  report["umwelten_equal"] = shared.intrinsic_shared.lifted[0] == shared.intrinsic_shared.lifted[1];
  for (const auto* c : {&shared.intrinsic_shared, &shared.separate_shared}) {
    text << (c == &shared.intrinsic_shared ? "shared W_int" : "shared W_sep") << ": " << c->meet.block_count()
         << " joint blocks";
    if (c->on_world) text << ", on W: " << blocks_text(*c->on_world);
    else text << ", not a partition of W";
    text << "\n";
  }
  text << "lifted Umwelten " << (shared.intrinsic_shared.lifted[0] == shared.intrinsic_shared.lifted[1] ? "equal" : "differ")
       << "\n";
  emit(o.format == "text" ? text.str() : dump(report), o.out_path, out);
  return ok;
}

/// A partition file, or a model file standing for its intrinsic partition.
Partition partition_input(const std::string& path) {
  const Input in = read_input(path);
  if (in.doc.is_object() && in.doc.contains("blocks")) return partition_from_json(in.doc);
  const LoopModel m = model_from_json(in.doc);
  require_valid(m);
  return intrinsic_partition(m).partition;
}

int compare_partitions_cmd(const CompareOptions& o, std::ostream& out) {
  if (o.paths.size() != 2) throw ParseError("compare needs two partition or model files, or --two-agent FILE");
  Partition p = partition_input(o.paths[0]);
  Partition q = partition_input(o.paths[1]);
  if (!(p.space().labels() == q.space().labels()))
    throw SpaceMismatch("the two inputs partition different state spaces");
  q = Partition::from_block_ids(p.space(), q.block_ids());
  const Partition join = partition_join(p, q), meet = partition_meet(p, q);
  Json report = Json::object();
  report["relation"] = to_string(compare_partitions(p, q));
  report["join"] = partition_to_json(join);
  report["meet"] = partition_to_json(meet);
  std::ostringstream text;
  text << "relation: first is " << to_string(compare_partitions(p, q)) << "\njoin: " << blocks_text(join)
       << "\nmeet: " << blocks_text(meet) << "\n";
  emit(o.format == "text" ? text.str() : dump(report), o.out_path, out);
  return ok;
}

// export-dot ----------------------------------------------------------------

constexpr const char* palette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                   "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string quoted(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

int cmd_export_dot(const std::string& path, const std::string& which, const std::string& out_path, std::ostream& out) {
  const Input in = read_input(path);
  const LoopModel m = model_from_json(in.doc);
  require_valid(m);
  const Partition p = which == "sep" ? w_sep(m).partition : intrinsic_partition(m).partition;
  std::ostringstream dot;
  dot << "digraph umwelt {\n  rankdir=LR;\n  node [shape=circle, style=filled];\n";
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    dot << "  subgraph cluster_" << b << " {\n    label=" << quoted("block " + std::to_string(b)) << ";\n";
    for (auto w : p.block(b))
      dot << "    " << quoted(m.world.label(w)) << " [fillcolor=" << quoted(palette[b % std::size(palette)])
          << "];\n";
    dot << "  }\n";
  }
  const std::size_t nw = m.world.size();
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t a = 0; a < m.action.size(); ++a)
      for (std::size_t v = 0; v < nw; ++v) {
        const Scalar& x = m.alpha(a * nw + w, v);
        if (m.arithmetic.is_zero(x)) continue;
        dot << "  " << quoted(m.world.label(w)) << " -> " << quoted(m.world.label(v))
            << " [label=" << quoted(m.action.label(a) + ", " + x.to_string()) << "];\n";
      }
  dot << "}\n";
  emit(dot.str(), out_path, out);
  return ok;
}

// proptest ------------------------------------------------------------------

struct ProptestOptions {
  std::size_t count = 100;
  std::size_t max_world = 8;
  std::uint64_t seed = 1;
  std::string witness_dir = ".";
  std::size_t samples = 0;
  bool inject_fault = false;
};

struct SuiteTally {
  std::size_t checked = 0;
  std::size_t violations = 0;
};

/// Each suite returns an empty string on success, a description otherwise.
using Suite = std::function<std::string(const LoopModel&)>;

int cmd_proptest(const ProptestOptions& o, std::ostream& out) {
  auto intrinsic_of = [&](const LoopModel& m) {
    return o.inject_fault ? Partition::discrete(m.world) : intrinsic_partition(m).partition;
  };
  const std::vector<std::pair<std::string, Suite>> suites = {
      {"containment",
       [&](const LoopModel& m) -> std::string {
         const Partition intr = intrinsic_of(m), sep = w_sep(m).partition;
         if (!sep.refines(intr)) return "W_sep " + blocks_text(sep) + " does not refine W_int " + blocks_text(intr);
         if ((intr == sep) != check_invariance(m, intr).invariant) return "invariance criterion disagrees";
         return {};
       }},
      {"minimality",
       [&](const LoopModel& m) -> std::string {
         const auto mod = synthesize_alpha_prime(m, select_representatives(intrinsic_of(m)));
         MonteCarloOptions mc;
         mc.samples = o.samples;
         mc.enabled = o.samples > 0;
         const auto eq = verify_equivalence(m, mod, mc);
         if (!eq.equivalent) return "alpha' is not sensory equivalent";
         if (eq.monte_carlo.ran && !eq.monte_carlo.passed) return "Monte Carlo check exceeded its tolerance";
         const auto min = certify_minimal_model(m, mod);
         if (!min.minimal) return "W_sep of alpha' differs from W_int";
         return {};
       }},
      {"oracle",
       [&](const LoopModel& m) -> std::string {
         if (m.world.size() > 5) return {};
         if (brute_force_partition(m, m.world.size()) != intrinsic_of(m)) return "brute-force partition differs";
         return {};
       }},
      {"structure",
       [&](const LoopModel& m) -> std::string {
         if (w_sep(m).trace.fixpoint_index + 1 > m.world.size()) return "refinement took more than |W|-1 steps";
         if (build_basis(m).dimension() > m.world.size()) return "basis larger than |W|";
         return {};
       }},
  };

  std::mt19937_64 rng(o.seed);
  RandomModelBounds bounds;
  bounds.max_world = std::max<std::size_t>(1, o.max_world);
  std::map<std::string, SuiteTally> tally;
  for (const auto& s : suites) tally[s.first];
  tally["lattice"];
  std::vector<std::string> witnesses;

  for (std::size_t i = 0; i < o.count; ++i) {
    const LoopModel m = random_model(rng, bounds);
    for (const auto& [name, suite] : suites) {
      if (name == "oracle" && m.world.size() > 5) continue;
      auto& t = tally[name];
      ++t.checked;
      const std::string problem = suite(m);
      if (problem.empty()) continue;
      ++t.violations;
      const LoopModel small = shrink_model(m, [&](const LoopModel& c) { return !suite(c).empty(); });
      Json doc = model_to_json(small);
      Json v = Json::object();
      v["suite"] = name;
      v["model_index"] = i;
      v["seed"] = o.seed;
      v["detail"] = suite(small);
      doc["violation"] = std::move(v);
      std::filesystem::create_directories(o.witness_dir);
      const auto file = (std::filesystem::path(o.witness_dir) / ("witness-" + name + "-" + std::to_string(i) + ".json")).string();
      emit(dump(doc), file, out);
      witnesses.push_back(file);
    }
    // Lattice laws on a random pair of partitions of this model's world.
    auto& t = tally["lattice"];
    ++t.checked;
    const Partition p = random_partition(rng, m.world), q = random_partition(rng, m.world);
    const Partition j = partition_join(p, q), mt = partition_meet(p, q);
    const bool laws = j == partition_join(q, p) && mt == partition_meet(q, p) && partition_join(p, mt) == p &&
                      partition_meet(p, j) == p && j.refines(p) && j.refines(q) && p.refines(mt) && q.refines(mt);
    if (!laws) ++t.violations;
  }

  std::size_t total = 0;
  Json summary = Json::object();
  summary["count"] = o.count;
  summary["max_world"] = bounds.max_world;
  summary["seed"] = o.seed;
  Json per = Json::object();
  for (const auto& [name, t] : tally) {
    Json s = Json::object();
    s["checked"] = t.checked;
    s["violations"] = t.violations;
    per[name] = std::move(s);
    total += t.violations;
  }
  summary["suites"] = std::move(per);
  summary["violations"] = total;
  summary["witnesses"] = witnesses;
  out << dump(summary);
  return total == 0 ? ok : failure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyze finite sensorimotor loops: extrinsic and intrinsic world partitions, minimal world models "
               "and shared distinctions of two agents.",
               "umwelt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all commands");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a model file; prints one violation per line");
  validate_cmd->add_option("model", validate_path, "Model file (single- or two-agent)")->required();

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute world partitions of a model");
  analyze_cmd->add_option("model", analyze.path, "Model file")->required();
  analyze_cmd->add_flag("--sep", analyze.sep, "Minimal separately measurable partition with its trace");
  analyze_cmd->add_flag("--am", analyze.am, "Partition generated by beta and kappa (memoryless models)");
  analyze_cmd->add_flag("--intrinsic", analyze.intrinsic, "Sensory-equivalence classes and their basis");
  analyze_cmd->add_flag("--all", analyze.all, "All of the above plus the minimal-model certificates");
  analyze_cmd->add_option("--format", analyze.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  analyze_cmd->add_option("--out", analyze.out_path, "Write the report to a file");
  analyze_cmd->add_option("--samples", analyze.samples, "Monte Carlo samples for --all (0 disables)");
  analyze_cmd->add_option("--seed", analyze.seed, "Monte Carlo seed");
  analyze_cmd->add_option("--estimator", analyze.estimator, "Monte Carlo estimator")
      ->check(CLI::IsMember({"paths", "frequencies"}));
  analyze_cmd->add_flag("--timing", analyze.timing, "Include wall-clock timings (not deterministic)");

  MinimizeOptions minimize;
  auto* minimize_cmd = app.add_subcommand("minimize", "Synthesize alpha' and certify it");
  minimize_cmd->add_option("model", minimize.path, "Model file; an optional \"selector\" overrides the default")
      ->required();
  minimize_cmd->add_option("--out", minimize.out_path, "Write the modified model with certificates");
  minimize_cmd->add_option("--samples", minimize.samples, "Monte Carlo samples (0 disables)");
  minimize_cmd->add_option("--seed", minimize.seed, "Monte Carlo seed");
  minimize_cmd->add_option("--estimator", minimize.estimator, "Monte Carlo estimator")
      ->check(CLI::IsMember({"paths", "frequencies"}));

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "Join and meet of two partitions, or shared distinctions");
  compare_cmd->add_option("inputs", compare.paths, "Two partition or model files");
  compare_cmd->add_option("--two-agent", compare.two_agent, "Two-agent model file");
  compare_cmd->add_option("--format", compare.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  compare_cmd->add_option("--out", compare.out_path, "Write the report to a file");

  std::string dot_path, dot_partition = "intrinsic", dot_out;
  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of alpha grouped by a partition");
  dot_cmd->add_option("model", dot_path, "Model file")->required();
  dot_cmd->add_option("--partition", dot_partition, "Grouping")->check(CLI::IsMember({"sep", "intrinsic"}));
  dot_cmd->add_option("--out", dot_out, "Write the graph to a file");

  ProptestOptions prop;
  auto* prop_cmd = app.add_subcommand("proptest", "Property campaign over seeded random models");
  prop_cmd->add_option("--count", prop.count, "Number of models");
  prop_cmd->add_option("--max-w", prop.max_world, "Largest world size")->check(CLI::PositiveNumber);
  prop_cmd->add_option("--seed", prop.seed, "Generator seed");
  prop_cmd->add_option("--witness-dir", prop.witness_dir, "Directory for shrunk counterexample models");
  prop_cmd->add_option("--samples", prop.samples, "Monte Carlo samples in the minimality suite (0 disables)");
  prop_cmd->add_flag("--inject-fault", prop.inject_fault, "Replace the intrinsic partition by the discrete one")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_path, out);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze, out);
    if (minimize_cmd->parsed()) return cmd_minimize(minimize, out);
    if (compare_cmd->parsed())
      return compare.two_agent.empty() ? compare_partitions_cmd(compare, out) : compare_two_agent(compare, out);
    if (dot_cmd->parsed()) return cmd_export_dot(dot_path, dot_partition, dot_out, out);
    if (prop_cmd->parsed()) return cmd_proptest(prop, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const AnalysisFailure& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace umwelt::cli
