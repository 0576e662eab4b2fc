#include "umwelt/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "umwelt/errors.hpp"

namespace umwelt {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const Json& require(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) fail(where + ": expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) fail(where + ": missing field '" + key + "'");
  return *it;
}

Scalar scalar_from_json(const Json& v, const Arithmetic& arith, const std::string& where) {
  try {
    if (v.is_string()) return arith.parse(v.get<std::string>());
    if (v.is_number_integer()) return arith.ratio(v.get<long>());
    if (v.is_number_float()) {
      if (arith.is_exact()) fail(where + ": write non-integer rationals as strings, e.g. \"1/2\"");
      return Scalar(v.get<double>());
    }
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": expected a number or numeric string");
}

std::vector<Scalar> scalar_row(const Json& row, const Arithmetic& arith, const std::string& where) {
  if (!row.is_array()) fail(where + ": expected an array");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < row.size(); ++i) out.push_back(scalar_from_json(row[i], arith, where));
  return out;
}

FiniteSpace space_from_json(const std::string& name, const Json& labels) {
  if (!labels.is_array()) fail("space '" + name + "': expected a list of labels");
  std::vector<std::string> out;
  for (const auto& l : labels) {
    if (l.is_string()) out.push_back(l.get<std::string>());
    else if (l.is_number_integer()) out.push_back(std::to_string(l.get<long>()));
    else fail("space '" + name + "': labels must be strings");
  }
  try {
    return FiniteSpace(name, std::move(out));
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
}

std::vector<FiniteSpace> spaces_from_json(const Json& doc) {
  const Json& spaces = require(doc, "spaces", "model");
  if (!spaces.is_object()) fail("model: 'spaces' must be an object");
  std::vector<FiniteSpace> out;
  for (auto it = spaces.begin(); it != spaces.end(); ++it) out.push_back(space_from_json(it.key(), it.value()));
  return out;
}

const FiniteSpace& find_space(const std::vector<FiniteSpace>& spaces, const std::string& name,
                              const std::string& where) {
  for (const auto& s : spaces)
    if (s.name() == name) return s;
  fail(where + ": unknown space '" + name + "'");
}

std::vector<FiniteSpace> space_list(const Json& names, const std::vector<FiniteSpace>& spaces,
                                    const std::string& where) {
  if (!names.is_array()) fail(where + ": expected a list of space names");
  std::vector<FiniteSpace> out;
  for (const auto& n : names) {
    if (!n.is_string()) fail(where + ": space names must be strings");
    out.push_back(find_space(spaces, n.get<std::string>(), where));
  }
  return out;
}

std::vector<Scalar> initial_from_json(const Json& doc, const LoopModel& m) {
  const auto& arith = m.arithmetic;
  if (doc.is_array()) return scalar_row(doc, arith, "initial");
  if (!doc.is_object()) fail("initial: expected an array or an object of marginals");
  auto marginal = [&](const FiniteSpace& space, bool uniform) {
    std::vector<Scalar> dist(space.size(), arith.zero());
    if (auto it = doc.find(space.name()); it != doc.end()) {
      dist = scalar_row(*it, arith, "initial." + space.name());
      if (dist.size() != space.size()) fail("initial." + space.name() + ": wrong length");
    } else if (uniform) {
      for (auto& x : dist) x = arith.ratio(1, static_cast<long>(space.size()));
    } else {
      dist[0] = arith.one();
    }
    return dist;
  };
  auto w = marginal(m.world, true), s = marginal(m.sensor, false), c = marginal(m.memory, false),
       a = marginal(m.action, false);
  std::vector<Scalar> joint;
  joint.reserve(w.size() * s.size() * c.size() * a.size());
  for (const auto& pw : w)
    for (const auto& ps : s)
      for (const auto& pc : c)
        for (const auto& pa : a) joint.push_back(pw * ps * pc * pa);
  return joint;
}

Json space_names(const std::vector<FiniteSpace>& spaces) {
  Json out = Json::array();
  for (const auto& s : spaces) out.push_back(s.name());
  return out;
}

Json scalars_to_json(std::span<const Scalar> values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

Json labels_of(const FiniteSpace& space, std::span<const StateIndex> states) {
  Json out = Json::array();
  for (auto s : states) out.push_back(space.label(s));
  return out;
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = line_and_column(text, e.byte);
    std::string reason = e.what();
    if (auto pos = reason.find(": ", reason.find("column")); pos != std::string::npos) reason = reason.substr(pos + 2);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + reason,
                     line, column);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Arithmetic arithmetic_from_json(const Json& doc) {
  auto it = doc.find("arithmetic");
  if (it == doc.end() || (it->is_string() && it->get<std::string>() == "rational")) return Arithmetic::exact();
  if (it->is_object() && it->contains("float")) {
    const Json& eps = (*it)["float"];
    double epsilon = 0.0;
    if (eps.is_number()) epsilon = eps.get<double>();
    else if (eps.is_string()) epsilon = std::stod(eps.get<std::string>());
    else fail("arithmetic.float: expected a tolerance");
    if (!(epsilon >= 0.0)) fail("arithmetic.float: tolerance must be non-negative");
    return Arithmetic::floating(epsilon);
  }
  fail("arithmetic: expected \"rational\" or {\"float\": epsilon}");
}

Json arithmetic_to_json(const Arithmetic& arith) {
  if (arith.is_exact()) return "rational";
  Json out = Json::object();
  out["float"] = arith.epsilon;
  return out;
}

Kernel kernel_from_json(const Json& doc, const std::string& name, const std::vector<FiniteSpace>& spaces,
                        const Arithmetic& arith) {
  const std::string where = "kernel '" + name + "'";
  auto source = space_list(require(doc, "source", where), spaces, where + ".source");
  auto target = space_list(require(doc, "target", where), spaces, where + ".target");
  const Json& rows = require(doc, "rows", where);
  if (!rows.is_array()) fail(where + ".rows: expected an array of rows");
  const std::size_t nrows = product_size(source), ncols = product_size(target);
  if (rows.size() != nrows)
    fail(where + ": expected " + std::to_string(nrows) + " rows, got " + std::to_string(rows.size()));
  std::vector<Scalar> entries;
  entries.reserve(nrows * ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    auto row = scalar_row(rows[r], arith, where + " row " + std::to_string(r));
    if (row.size() != ncols)
      fail(where + " row " + std::to_string(r) + ": expected " + std::to_string(ncols) + " entries, got " +
           std::to_string(row.size()));
    for (auto& x : row) entries.push_back(std::move(x));
  }
  return Kernel(name, std::move(source), std::move(target), std::move(entries));
}

Json kernel_to_json(const Kernel& k) {
  Json out = Json::object();
  out["source"] = space_names(k.source());
  out["target"] = space_names(k.target());
  Json rows = Json::array();
  for (std::size_t r = 0; r < k.rows(); ++r) rows.push_back(scalars_to_json(k.row(r)));
  out["rows"] = std::move(rows);
  return out;
}

LoopModel model_from_json(const Json& doc) {
  if (!doc.is_object()) fail("model: expected a JSON object");
  try {
    const auto spaces = spaces_from_json(doc);
    const Arithmetic arith = arithmetic_from_json(doc);
    const Json& kernels = require(doc, "kernels", "model");
    LoopModel m;
    m.world = find_space(spaces, "W", "model.spaces");
    m.sensor = find_space(spaces, "S", "model.spaces");
    m.memory = find_space(spaces, "C", "model.spaces");
    m.action = find_space(spaces, "A", "model.spaces");
    m.alpha = kernel_from_json(require(kernels, "alpha", "kernels"), "alpha", spaces, arith);
    m.beta = kernel_from_json(require(kernels, "beta", "kernels"), "beta", spaces, arith);
    m.phi = kernel_from_json(require(kernels, "phi", "kernels"), "phi", spaces, arith);
    m.pi = kernel_from_json(require(kernels, "pi", "kernels"), "pi", spaces, arith);
    m.arithmetic = arith;
    if (auto it = doc.find("memoryless"); it != doc.end()) {
      if (!it->is_boolean()) fail("model: 'memoryless' must be a boolean");
      m.memoryless = it->get<bool>();
    }
    if (auto it = doc.find("initial"); it != doc.end() && !it->is_null())
      m.initial = initial_from_json(*it, m);
    else
      m.initial = LoopModel::default_initial(m.world, m.sensor, m.memory, m.action, arith);
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("model: ") + e.what());
  }
}

Json model_to_json(const LoopModel& m) {
  Json doc = Json::object();
  Json spaces = Json::object();
  for (const auto* s : {&m.world, &m.sensor, &m.memory, &m.action}) spaces[s->name()] = s->labels();
  doc["spaces"] = std::move(spaces);
  Json kernels = Json::object();
  kernels["alpha"] = kernel_to_json(m.alpha);
  kernels["beta"] = kernel_to_json(m.beta);
  kernels["phi"] = kernel_to_json(m.phi);
  kernels["pi"] = kernel_to_json(m.pi);
  doc["kernels"] = std::move(kernels);
  doc["initial"] = scalars_to_json(m.initial);
  doc["memoryless"] = m.memoryless;
  doc["arithmetic"] = arithmetic_to_json(m.arithmetic);
  return doc;
}

std::optional<Selector> selector_from_json(const Json& doc, const LoopModel& m) {
  auto it = doc.find("selector");
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_object()) fail("selector: expected an object mapping world labels to labels");
  Selector sel;
  sel.representative.resize(m.world.size());
  std::vector<bool> seen(m.world.size(), false);
  for (auto e = it->begin(); e != it->end(); ++e) {
    auto from = m.world.find(e.key());
    if (!from) fail("selector: unknown world state '" + e.key() + "'");
    if (!e.value().is_string()) fail("selector: targets must be labels");
    auto to = m.world.find(e.value().get<std::string>());
    if (!to) fail("selector: unknown world state '" + e.value().get<std::string>() + "'");
    sel.representative[*from] = *to;
    seen[*from] = true;
  }
  for (std::size_t w = 0; w < seen.size(); ++w)
    if (!seen[w]) fail("selector: no entry for world state '" + m.world.label(w) + "'");
  return sel;
}

TwoAgentModel two_agent_from_json(const Json& doc) {
  if (!doc.is_object()) fail("two-agent model: expected a JSON object");
  try {
    const auto spaces = spaces_from_json(doc);
    TwoAgentModel m;
    m.arithmetic = arithmetic_from_json(doc);
    m.world = find_space(spaces, "W", "model.spaces");
    const Json& agents = require(doc, "agents", "two-agent model");
    if (!agents.is_array() || agents.size() != 2) fail("two-agent model: 'agents' must list exactly two agents");
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string where = "agents[" + std::to_string(i) + "]";
      const Json& a = agents[i];
      AgentLoop& ag = m.agents[i];
      ag.beta = kernel_from_json(require(a, "sensors", where), where + ".sensors", spaces, m.arithmetic);
      ag.phi = kernel_from_json(require(a, "memory", where), where + ".memory", spaces, m.arithmetic);
      ag.pi = kernel_from_json(require(a, "policy", where), where + ".policy", spaces, m.arithmetic);
      if (ag.beta.target().size() != 1 || ag.phi.target().size() != 1 || ag.pi.target().size() != 1)
        fail(where + ": sensors, memory and policy must each target a single space");
      ag.sensor = ag.beta.target()[0];
      ag.memory = ag.phi.target()[0];
      ag.action = ag.pi.target()[0];
      if (auto it = a.find("memoryless"); it != a.end()) ag.memoryless = it->get<bool>();
    }
    const Json& kernels = require(doc, "kernels", "two-agent model");
    m.alpha = kernel_from_json(require(kernels, "alpha", "kernels"), "alpha", spaces, m.arithmetic);
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("two-agent model: ") + e.what());
  }
}

Json two_agent_to_json(const TwoAgentModel& m) {
  Json doc = Json::object();
  Json spaces = Json::object();
  spaces[m.world.name()] = m.world.labels();
  for (const auto& ag : m.agents)
    for (const auto* s : {&ag.sensor, &ag.memory, &ag.action}) spaces[s->name()] = s->labels();
  doc["spaces"] = std::move(spaces);
  Json kernels = Json::object();
  kernels["alpha"] = kernel_to_json(m.alpha);
  doc["kernels"] = std::move(kernels);
  Json agents = Json::array();
  for (const auto& ag : m.agents) {
    Json a = Json::object();
    a["sensors"] = kernel_to_json(ag.beta);
    a["memory"] = kernel_to_json(ag.phi);
    a["policy"] = kernel_to_json(ag.pi);
    a["memoryless"] = ag.memoryless;
    agents.push_back(std::move(a));
  }
  doc["agents"] = std::move(agents);
  doc["arithmetic"] = arithmetic_to_json(m.arithmetic);
  return doc;
}

Json partition_to_json(const Partition& p) {
  Json out = Json::object();
  out["space"] = p.space().name();
  Json blocks = Json::array();
  for (const auto& b : p.blocks()) blocks.push_back(labels_of(p.space(), b));
  out["blocks"] = std::move(blocks);
  return out;
}

Partition partition_from_json(const Json& doc, const std::optional<FiniteSpace>& space) {
  try {
    const std::string name = require(doc, "space", "partition").get<std::string>();
    const Json& blocks = require(doc, "blocks", "partition");
    if (!blocks.is_array()) fail("partition: 'blocks' must be an array");
    std::vector<std::vector<std::string>> labelled;
    std::vector<std::string> order;
    for (const auto& b : blocks) {
      if (!b.is_array()) fail("partition: every block must be an array of labels");
      auto& block = labelled.emplace_back();
      for (const auto& l : b) {
        block.push_back(l.is_string() ? l.get<std::string>() : l.dump());
        order.push_back(block.back());
      }
    }
    FiniteSpace target = space ? *space : space_from_json(name, Json(order));
    std::vector<std::vector<StateIndex>> indexed;
    for (const auto& block : labelled) {
      auto& out = indexed.emplace_back();
      for (const auto& l : block) {
        auto idx = target.find(l);
        if (!idx) fail("partition: label '" + l + "' is not a state of space '" + target.name() + "'");
        out.push_back(*idx);
      }
    }
    return Partition::from_blocks(std::move(target), indexed);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("partition: ") + e.what());
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
}

Json words_to_json(const LoopModel& m, const SensorWord& sensors, const ActionWord& actions) {
  Json out = Json::object();
  out["sensors"] = labels_of(m.sensor, sensors);
  out["actions"] = labels_of(m.action, actions);
  return out;
}

Json basis_to_json(const LoopModel& m, const EquivalenceBasis& basis) {
  Json out = Json::object();
  out["dimension"] = basis.dimension();
  out["authoritative"] = basis.authoritative;
  Json vectors = Json::array();
  for (const auto& v : basis.vectors) {
    Json e = words_to_json(m, v.sensors, v.actions);
    e["values"] = scalars_to_json(v.values);
    vectors.push_back(std::move(e));
  }
  out["vectors"] = std::move(vectors);
  return out;
}

Json intrinsic_to_json(const LoopModel& m, const IntrinsicResult& result) {
  Json out = Json::object();
  out["partition"] = partition_to_json(result.partition);
  out["basis"] = basis_to_json(m, result.basis);
  return out;
}

Json trace_to_json(const RefinementTrace& trace) {
  Json out = Json::object();
  Json stages = Json::array();
  for (const auto& s : trace.stages) stages.push_back(partition_to_json(s));
  out["stages"] = std::move(stages);
  out["fixpoint_index"] = trace.fixpoint_index;
  return out;
}

Json invariance_to_json(const LoopModel& m, const InvarianceResult& result) {
  Json out = Json::object();
  out["invariant"] = result.invariant;
  if (result.witness) {
    const auto& w = *result.witness;
    Json j = Json::object();
    j["action"] = m.action.label(w.action);
    j["state"] = m.world.label(w.state);
    j["other"] = m.world.label(w.other);
    j["block"] = labels_of(m.world, w.block);
    j["mass_state"] = w.mass_state.to_string();
    j["mass_other"] = w.mass_other.to_string();
    out["witness"] = std::move(j);
  }
  return out;
}

Json containment_to_json(const LoopModel& m, const ContainmentReport& r) {
  Json out = Json::object();
  out["intrinsic_within_sep"] = r.contained;
  out["equal"] = r.equal;
  out["intrinsic_invariance"] = invariance_to_json(m, r.intrinsic_invariance);
  out["criterion_consistent"] = r.criterion_consistent;
  if (r.violating_state) out["violating_state"] = m.world.label(*r.violating_state);
  return out;
}

Json equivalence_to_json(const LoopModel& m, const EquivalenceCertificate& cert) {
  Json out = Json::object();
  out["equivalent"] = cert.equivalent;
  out["union_basis_dimension"] = cert.basis_dimension;
  Json states = Json::object();
  for (std::size_t w = 0; w < cert.state_equivalent.size(); ++w)
    states[m.world.label(w)] = static_cast<bool>(cert.state_equivalent[w]);
  out["states"] = std::move(states);
  if (cert.counterexample) {
    const auto& c = *cert.counterexample;
    Json j = words_to_json(m, c.sensors, c.actions);
    j["state"] = m.world.label(c.state);
    j["p_original"] = c.original.to_string();
    j["p_modified"] = c.modified.to_string();
    out["counterexample"] = std::move(j);
  }
  Json mc = Json::object();
  mc["ran"] = cert.monte_carlo.ran;
  if (cert.monte_carlo.ran) {
    mc["estimator"] = to_string(cert.monte_carlo.estimator);
    mc["passed"] = cert.monte_carlo.passed;
    mc["pairs"] = cert.monte_carlo.pairs;
    std::ostringstream tv;
    tv << std::setprecision(6) << cert.monte_carlo.max_tv;
    mc["max_tv"] = tv.str();
    mc["worst_state"] = m.world.label(cert.monte_carlo.worst_state);
    mc["worst_word"] = labels_of(m.action, cert.monte_carlo.worst_word);
  }
  out["monte_carlo"] = std::move(mc);
  return out;
}

Json minimality_to_json(const MinimalityCertificate& cert) {
  Json out = Json::object();
  out["minimal"] = cert.minimal;
  out["w_sep_modified"] = partition_to_json(cert.separate_modified);
  out["intrinsic_original"] = partition_to_json(cert.intrinsic_original);
  return out;
}

Json selector_to_json(const LoopModel& m, const Selector& selector) {
  Json out = Json::object();
  for (std::size_t w = 0; w < selector.representative.size(); ++w)
    out[m.world.label(w)] = m.world.label(selector(w));
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace umwelt
