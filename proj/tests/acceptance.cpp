// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "umwelt/intrinsic.hpp"
#include "umwelt/multi_agent.hpp"
#include "umwelt/random_model.hpp"
#include "umwelt/refinement.hpp"
#include "umwelt/synthesis.hpp"

using namespace umwelt;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<bool> results;

void report(int number, const std::string& title, const Outcome& o) {
  std::cout << "criterion " << number << " [" << title << "]: " << (o.pass ? "PASS" : "FAIL") << " : " << o.detail
            << std::endl;
  results.push_back(o.pass);
}

std::string fmt(double x, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

/// The shared campaign of criteria 2 and 3.
std::vector<LoopModel> campaign(std::uint64_t seed, std::size_t count, const RandomModelBounds& bounds) {
  std::mt19937_64 rng(seed);
  std::vector<LoopModel> models;
  for (std::size_t i = 0; i < count; ++i) models.push_back(random_model(rng, bounds));
  return models;
}

// Structural bounds are asserted on every model the other criteria touch.
std::size_t structural_checked = 0;
std::vector<std::string> structural_failures;

void structural(const LoopModel& m, const RefinementResult& sep, const EquivalenceBasis& basis) {
  ++structural_checked;
  if (sep.trace.fixpoint_index + 1 > m.world.size())
    structural_failures.push_back("fixpoint index " + std::to_string(sep.trace.fixpoint_index) + " at |W|=" +
                                  std::to_string(m.world.size()));
  if (basis.dimension() > m.world.size())
    structural_failures.push_back("basis dimension " + std::to_string(basis.dimension()) + " at |W|=" +
                                  std::to_string(m.world.size()));
}

Outcome golden() {
  const auto start = Clock::now();
  const LoopModel m = oracle::load_model("five_state.json");
  const auto sb = sigma_beta(m);
  const auto sep = w_sep(m);
  const auto intr = intrinsic_partition(m);
  const double t = seconds_since(start);
  structural(m, sep, intr.basis);
  using B = oracle::Blocks;
  Outcome o;
  o.pass = oracle::labels(sb) == B{{"1", "4", "5"}, {"2"}, {"3"}} &&
           oracle::labels(sep.partition) == B{{"1"}, {"2"}, {"3"}, {"4", "5"}} && sep.trace.fixpoint_index == 1 &&
           oracle::labels(intr.partition) == B{{"1", "4", "5"}, {"2"}, {"3"}} && m.arithmetic.is_exact() && t < 1.0;
  o.detail = "sigma(beta), W_sep (fixpoint index " + std::to_string(sep.trace.fixpoint_index) +
             ") and W_int match in rational mode, " + fmt(t * 1000, 1) + " ms";
  return o;
}

Outcome containment(const std::vector<LoopModel>& models) {
  const auto start = Clock::now();
  std::size_t held = 0;
  for (const auto& m : models) {
    const auto sep = w_sep(m);
    const auto intr = intrinsic_partition(m);
    structural(m, sep, intr.basis);
    held += sep.partition.refines(intr.partition);
  }
  const double t = seconds_since(start);
  return {held == models.size() && t < 60.0,
          std::to_string(held) + "/" + std::to_string(models.size()) + " models with W_int coarsening W_sep, " +
              fmt(t) + " s"};
}

Outcome minimality(const std::vector<LoopModel>& models) {
  const auto start = Clock::now();
  std::size_t equivalent = 0, minimal = 0, mc_ok = 0, pairs = 0, plain_ok = 0;
  double worst = 0.0, plain_worst = 0.0;
  MonteCarloOptions mc;  // horizon 5, 10^5 samples, fixed seed, tolerance 0.02
  MonteCarloOptions plain = mc;
  plain.estimator = Estimator::frequencies;
  for (const auto& m : models) {
    const auto intr = intrinsic_partition(m);
    const auto mod = synthesize_alpha_prime(m, select_representatives(intr));
    const auto eq = verify_equivalence(m, mod, mc);
    const auto min = certify_minimal_model(m, mod);
    equivalent += eq.equivalent;
    minimal += min.minimal;
    mc_ok += eq.monte_carlo.ran && eq.monte_carlo.passed;
    pairs += eq.monte_carlo.pairs;
    worst = std::max(worst, eq.monte_carlo.max_tv);
  }
  const double t = seconds_since(start);
  // Informational: plain sensor-word frequencies carry sampling noise of order
  // sqrt(|S|^5 / 10^5), which exceeds 0.02 for high-entropy processes.
  for (const auto& m : models) {
    const auto mod = synthesize_alpha_prime(m, select_representatives(intrinsic_partition(m)));
    const auto eq = verify_equivalence(m, mod, plain);
    plain_ok += eq.monte_carlo.passed;
    plain_worst = std::max(plain_worst, eq.monte_carlo.max_tv);
  }
  const std::size_t n = models.size();
  return {equivalent == n && minimal == n && mc_ok == n && t < 300.0,
          "equivalence " + std::to_string(equivalent) + "/" + std::to_string(n) + ", minimality " +
              std::to_string(minimal) + "/" + std::to_string(n) + ", Monte Carlo (sampled world paths) within 0.02 on " +
              std::to_string(mc_ok) + "/" + std::to_string(n) + " models (" + std::to_string(pairs) +
              " pairs, max TV " + fmt(worst, 4) + "), " + fmt(t) + " s; plain frequencies within 0.02 on " +
              std::to_string(plain_ok) + "/" + std::to_string(n) + " (max TV " + fmt(plain_worst, 4) + ")"};
}

Outcome oracle_agreement() {
  const auto start = Clock::now();
  const auto models = campaign(4004, 300, RandomModelBounds{});
  std::size_t small = 0, pairs = 0, disagreements = 0;
  for (const auto& m : models) {
    if (m.world.size() > 5) continue;
    ++small;
    const auto intr = intrinsic_partition(m);
    structural(m, w_sep(m), intr.basis);
    const std::size_t h = m.world.size();
    for (StateIndex u = 0; u < h; ++u)
      for (StateIndex v = u + 1; v < h; ++v) {
        ++pairs;
        if (brute_force_equivalent(m, u, v, h) != intr.partition.same_block(u, v)) ++disagreements;
      }
  }
  const double t = seconds_since(start);
  return {disagreements == 0 && t < 120.0,
          std::to_string(pairs) + " state pairs over " + std::to_string(small) + " models with |W| <= 5, " +
              std::to_string(disagreements) + " disagreements, " + fmt(t) + " s"};
}

Outcome exhaustive_stable() {
  const auto start = Clock::now();
  RandomModelBounds b;
  b.max_world = 6;
  const auto models = campaign(5005, 100, b);
  std::size_t agree = 0;
  for (const auto& m : models) {
    const auto sep = w_sep(m);
    structural(m, sep, build_basis(m));
    const auto expected = oracle::coarsest_stable_partition(m);
    agree += !expected.empty() && sep.partition == Partition::from_block_ids(m.world, expected);
  }
  const double t = seconds_since(start);
  return {agree == models.size() && t < 120.0,
          std::to_string(agree) + "/" + std::to_string(models.size()) +
              " models where W_sep equals the exhaustive coarsest stable partition, " + fmt(t) + " s"};
}

Outcome lattice() {
  std::mt19937_64 rng(7007);
  std::size_t law_failures = 0, minimality_checked = 0, minimality_failures = 0;
  for (int i = 0; i < 500; ++i) {
    const auto X = FiniteSpace::numbered("X", 1 + rng() % 10);
    const auto p = random_partition(rng, X), q = random_partition(rng, X), r = random_partition(rng, X);
    const auto j = partition_join(p, q), mt = partition_meet(p, q);
    const bool ok = j == partition_join(q, p) && mt == partition_meet(q, p) &&
                    partition_join(j, r) == partition_join(p, partition_join(q, r)) &&
                    partition_meet(mt, r) == partition_meet(p, partition_meet(q, r)) && partition_join(p, p) == p &&
                    partition_meet(p, p) == p && partition_join(p, mt) == p && partition_meet(p, j) == p &&
                    j.refines(p) && j.refines(q) && p.refines(mt) && q.refines(mt);
    law_failures += !ok;
    if (X.size() <= 6) {
      ++minimality_checked;
      minimality_failures += !oracle::meet_is_minimal(mt, p, q);
    }
  }
  return {law_failures == 0 && minimality_failures == 0,
          "laws hold on " + std::to_string(500 - law_failures) + "/500 pairs, meet minimal on " +
              std::to_string(minimality_checked - minimality_failures) + "/" + std::to_string(minimality_checked) +
              " pairs of size <= 6"};
}

Outcome umwelt_rows() {
  RandomModelBounds blind_b, passive_b;
  blind_b.max_sensor = 1;
  passive_b.max_action = 1;
  std::size_t blind_ok = 0, passive_ok = 0, passive_nontrivial = 0;
  const auto blind = campaign(8008, 100, blind_b);
  for (const auto& m : blind) {
    const auto t = umwelt_table(m);
    blind_ok += t.intrinsic.is_trivial() && !t.rows.empty() && t.rows.back().agent == "blind actor" &&
                t.rows.back().intrinsic == "no Umwelt";
  }
  auto passive = campaign(8009, 100, passive_b);
  passive.push_back(oracle::load_model("five_state.json"));
  for (const auto& m : passive) {
    const auto t = umwelt_table(m);
    const bool refines = t.intrinsic.refines(t.merkwelt);
    const bool nontrivial_ok = t.merkwelt.is_trivial() || !t.intrinsic.is_trivial();
    const std::string expected = t.merkwelt.is_trivial() ? "no Umwelt" : "contains Merkwelt";
    passive_nontrivial += !t.merkwelt.is_trivial();
    passive_ok += refines && nontrivial_ok && !t.rows.empty() && t.rows.front().agent == "passive observer" &&
                  t.rows.front().intrinsic == expected;
  }
  return {blind_ok == blind.size() && passive_ok == passive.size(),
          "blind actor rows " + std::to_string(blind_ok) + "/" + std::to_string(blind.size()) +
              ", passive observer rows " + std::to_string(passive_ok) + "/" + std::to_string(passive.size()) + " (" +
              std::to_string(passive_nontrivial) + " with nontrivial Merkwelt)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Runs the CLI binary twice per command and compares stdout, exit codes and
/// any written files byte for byte.
Outcome determinism() {
  const fs::path work = fs::temp_directory_path() / "umwelt-acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  const std::string cli = UMWELT_CLI_PATH;
  auto fx = [](const std::string& n) { return oracle::fixture(n); };
  struct Command {
    std::string args;
    std::vector<std::string> files;  // outputs written under the run directory
  };
  const std::vector<Command> commands = {
      {"validate " + fx("five_state.json"), {}},
      {"validate " + fx("row_sum_0_9.json"), {}},
      {"validate " + fx("malformed.json"), {}},
      {"analyze --all " + fx("five_state.json"), {}},
      {"analyze --all --format text " + fx("five_state.json"), {}},
      {"analyze --intrinsic --out {dir}/intrinsic.json " + fx("five_state.json"), {"intrinsic.json"}},
      {"analyze --sep --am " + fx("already_minimal.json"), {}},
      {"minimize --out {dir}/min.json " + fx("five_state.json"), {"min.json"}},
      {"minimize --samples 1000 " + fx("corrupted_selector.json"), {}},
      {"compare " + fx("partition_a.json") + " " + fx("partition_b.json"), {}},
      {"compare --two-agent " + fx("two_agent_asymmetric_bits.json"), {}},
      {"compare --two-agent " + fx("two_agent_symmetric.json") + " --format text", {}},
      {"export-dot --partition intrinsic --out {dir}/g.dot " + fx("five_state.json"), {"g.dot"}},
      {"export-dot --partition sep " + fx("one_state.json"), {}},
      {"proptest --count 40 --max-w 6 --seed 9", {}},
      {"proptest --count 3 --max-w 5 --seed 2 --inject-fault --witness-dir {dir}/wit", {}},
  };
  std::size_t identical = 0;
  std::string first_difference;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = work / ("run" + std::to_string(run));
      fs::create_directories(dir);
      std::string args = commands[c].args;
      for (std::size_t pos; (pos = args.find("{dir}")) != std::string::npos;) args.replace(pos, 5, dir.string());
      const fs::path stdout_file = dir / ("stdout-" + std::to_string(c));
      const std::string line = "\"" + cli + "\" " + args + " > \"" + stdout_file.string() + "\" 2>&1";
      const int status = std::system(line.c_str());
      std::string captured = "status " + std::to_string(status) + "\n" + slurp(stdout_file);
      for (auto s = captured.find(dir.string()); s != std::string::npos; s = captured.find(dir.string()))
        captured.replace(s, dir.string().size(), "{dir}");
      for (const auto& f : commands[c].files) captured += "\n--- " + f + "\n" + slurp(dir / f);
      if (commands[c].args.find("--witness-dir") != std::string::npos)
        for (const auto& e : fs::directory_iterator(dir / "wit")) captured += "\n--- " + e.path().filename().string() + "\n" + slurp(e.path());
      outputs[run] = std::move(captured);
    }
    if (outputs[0] == outputs[1]) ++identical;
    else if (first_difference.empty()) first_difference = "; differs: " + commands[c].args;
  }
  fs::remove_all(work);
  return {identical == commands.size(),
          std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical across two runs" +
              first_difference};
}

}  // namespace

int main() {
  report(1, "golden five-state example", golden());
  const auto models = campaign(2002, 1000, RandomModelBounds{});
  report(2, "W_int within W_sep on 1000 random models", containment(models));
  report(3, "minimal world model certificates", minimality(std::vector<LoopModel>(models.begin(), models.begin() + 200)));
  report(4, "oracle agreement", oracle_agreement());
  report(5, "exhaustive coarsest stable partition", exhaustive_stable());
  report(6, "structural bounds",
         {structural_failures.empty(), std::to_string(structural_checked) + " models, " +
                                           std::to_string(structural_failures.size()) + " violations" +
                                           (structural_failures.empty() ? "" : " (" + structural_failures[0] + ")")});
  report(7, "partition lattice", lattice());
  report(8, "passive observer and blind actor table", umwelt_rows());
  report(9, "CLI determinism", determinism());
  std::size_t passed = 0;
  for (bool r : results) passed += r;
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  return passed == results.size() ? 0 : 1;
}
