#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "umwelt/intrinsic.hpp"
#include "umwelt/multi_agent.hpp"
#include "umwelt/synthesis.hpp"

namespace umwelt {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(const std::string& text);
/// Reads a file (ParseError when unreadable or malformed).
std::string read_file(const std::string& path);

// Model files ---------------------------------------------------------------
//
// {
//   "spaces":  {"W": [labels], "S": [...], "C": [...], "A": [...]},
//   "kernels": {"alpha": {"source": ["A","W"], "target": ["W"], "rows": [["1/2", ...], ...]},
//               "beta": ..., "phi": ..., "pi": ...},
//   "initial": [joint W x S x C x A entries] | {"W": [...], "S": [...], ...}   (optional)
//   "memoryless": false,
//   "arithmetic": "rational" | {"float": 1e-9}
// }
//
// Rows follow the mixed-radix order of the source spaces' label tuples, with
// the first listed source space varying slowest.

LoopModel model_from_json(const Json& doc);
Json model_to_json(const LoopModel& model);

/// Optional "selector": {"label": "representative label", ...}.
std::optional<Selector> selector_from_json(const Json& doc, const LoopModel& model);

Arithmetic arithmetic_from_json(const Json& doc);
Json arithmetic_to_json(const Arithmetic& arith);

Kernel kernel_from_json(const Json& doc, const std::string& name,
                        const std::vector<FiniteSpace>& spaces, const Arithmetic& arith);
Json kernel_to_json(const Kernel& kernel);

// Two-agent files: the single-agent layout plus
//   "agents": [{"sensors": kernel, "memory": kernel, "policy": kernel, "memoryless": bool}, x2]
// and "kernels": {"alpha": {"source": [A1, A2, "W"], "target": ["W"], ...}}.

TwoAgentModel two_agent_from_json(const Json& doc);
Json two_agent_to_json(const TwoAgentModel& model);

// Partitions: {"space": name, "blocks": [[labels], ...]} in canonical order.

Json partition_to_json(const Partition& p);
/// Without `space`, the space is the labels in order of appearance.
Partition partition_from_json(const Json& doc, const std::optional<FiniteSpace>& space = std::nullopt);

Json words_to_json(const LoopModel& model, const SensorWord& sensors, const ActionWord& actions);
Json basis_to_json(const LoopModel& model, const EquivalenceBasis& basis);
Json intrinsic_to_json(const LoopModel& model, const IntrinsicResult& result);
Json trace_to_json(const RefinementTrace& trace);
Json invariance_to_json(const LoopModel& model, const InvarianceResult& result);
Json containment_to_json(const LoopModel& model, const ContainmentReport& report);
Json equivalence_to_json(const LoopModel& model, const EquivalenceCertificate& cert);
Json minimality_to_json(const MinimalityCertificate& cert);
Json selector_to_json(const LoopModel& model, const Selector& selector);

/// Indented dump with a trailing newline; deterministic for equal values.
std::string dump(const Json& doc);

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace umwelt
