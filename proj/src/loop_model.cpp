#include "umwelt/loop_model.hpp"

#include <sstream>

#include "umwelt/errors.hpp"

namespace umwelt {

std::vector<Scalar> LoopModel::default_initial(const FiniteSpace& w, const FiniteSpace& s,
                                               const FiniteSpace& c, const FiniteSpace& a,
                                               const Arithmetic& arith) {
  const std::size_t n = w.size() * s.size() * c.size() * a.size();
  std::vector<Scalar> init(n, arith.zero());
  const Scalar mass = arith.ratio(1, static_cast<long>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) init[i * s.size() * c.size() * a.size()] = mass;
  return init;
}

LoopModel make_model(Kernel alpha, Kernel beta, Kernel phi, Kernel pi, bool memoryless,
                     Arithmetic arith, std::vector<Scalar> initial) {
  if (beta.source().size() != 1 || beta.target().size() != 1 || phi.target().size() != 1 ||
      pi.target().size() != 1)
    throw SpaceMismatch("make_model: beta, phi and pi must map between single spaces");
  LoopModel m;
  m.world = beta.source()[0];
  m.sensor = beta.target()[0];
  m.memory = phi.target()[0];
  m.action = pi.target()[0];
  alpha.set_name("alpha");
  beta.set_name("beta");
  phi.set_name("phi");
  pi.set_name("pi");
  m.alpha = std::move(alpha);
  m.beta = std::move(beta);
  m.phi = std::move(phi);
  m.pi = std::move(pi);
  m.memoryless = memoryless;
  m.arithmetic = arith;
  m.initial = initial.empty()
                  ? LoopModel::default_initial(m.world, m.sensor, m.memory, m.action, arith)
                  : std::move(initial);
  return m;
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << kernel;
  if (row) os << " row " << *row;
  os << ": " << check;
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

namespace {

std::string space_names(const std::vector<FiniteSpace>& spaces) {
  std::string s = "[";
  for (std::size_t i = 0; i < spaces.size(); ++i) s += (i ? "," : "") + spaces[i].name();
  return s + "]";
}

void check_rows(const Kernel& k, const std::string& name, const Arithmetic& arith, std::vector<Violation>& out) {
  for (std::size_t r = 0; r < k.rows(); ++r) {
    auto row = k.row(r);
    bool conforming = true;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!arith.conforms(row[c])) conforming = false;
      if (row[c] < Scalar() && !arith.is_zero(row[c])) {
        out.push_back({name, r, "negative-entry", "column " + std::to_string(c) + " = " + row[c].to_string()});
      }
    }
    if (!conforming)
      out.push_back({name, r, "arithmetic", "entry not in the model's arithmetic mode"});
    Scalar sum = row_sum(row);
    if (!arith.equal(sum, arith.one()))
      out.push_back({name, r, "row-sum", "sums to " + sum.to_string()});
  }
}

}  // namespace

bool check_kernel(const Kernel& k, const std::string& name, const std::vector<FiniteSpace>& source,
                  const std::vector<FiniteSpace>& target, const Arithmetic& arith, std::vector<Violation>& out) {
  bool shape_ok = true;
  if (k.source() != source || k.target() != target) {
    out.push_back({name, std::nullopt, "shape",
                   "expected " + space_names(source) + " -> " + space_names(target) + ", got " +
                       space_names(k.source()) + " -> " + space_names(k.target())});
    shape_ok = false;
  }
  check_rows(k, name, arith, out);
  return shape_ok;
}

void check_memoryless(const Kernel& phi, const std::string& name, const Arithmetic& arith,
                      std::vector<Violation>& out) {
  const FiniteSpace& sensor = phi.source().at(0);
  const std::size_t nc = phi.source().at(1).size();
  for (std::size_t s = 0; s < sensor.size(); ++s) {
    auto reference = phi.row(s * nc);
    for (std::size_t c = 1; c < nc; ++c) {
      auto row = phi.row(s * nc + c);
      bool differs = false;
      for (std::size_t k = 0; k < nc && !differs; ++k) differs = !arith.equal(row[k], reference[k]);
      if (differs) {
        // One report per sensor value.
        out.push_back({name, s * nc + c, "memoryless",
                       "row depends on the previous memory state (sensor " + sensor.label(s) + ")"});
        break;
      }
    }
  }
}

std::vector<Violation> validate(const LoopModel& m) {
  std::vector<Violation> out;
  const auto& arith = m.arithmetic;
  if (!arith.is_exact() && !(arith.epsilon >= 0.0))
    out.push_back({"model", std::nullopt, "arithmetic", "float epsilon must be non-negative"});

  check_kernel(m.alpha, "alpha", {m.action, m.world}, {m.world}, arith, out);
  check_kernel(m.beta, "beta", {m.world}, {m.sensor}, arith, out);
  const bool phi_ok = check_kernel(m.phi, "phi", {m.sensor, m.memory}, {m.memory}, arith, out);
  check_kernel(m.pi, "pi", {m.memory}, {m.action}, arith, out);

  const std::size_t joint = m.world.size() * m.sensor.size() * m.memory.size() * m.action.size();
  if (m.initial.size() != joint) {
    out.push_back({"initial", std::nullopt, "shape",
                   "expected " + std::to_string(joint) + " entries, got " + std::to_string(m.initial.size())});
  } else {
    Scalar sum;
    for (std::size_t i = 0; i < joint; ++i) {
      if (m.initial[i] < Scalar() && !arith.is_zero(m.initial[i]))
        out.push_back({"initial", i, "negative-entry", m.initial[i].to_string()});
      sum += m.initial[i];
    }
    if (!arith.equal(sum, arith.one()))
      out.push_back({"initial", std::nullopt, "row-sum", "sums to " + sum.to_string()});
  }

  if (m.memoryless && phi_ok) check_memoryless(m.phi, "phi", arith, out);
  return out;
}

void require_valid(const LoopModel& model) {
  auto violations = validate(model);
  if (violations.empty()) return;
  std::string msg = "invalid model:";
  for (const auto& v : violations) msg += "\n  " + v.to_string();
  throw PreconditionError(msg);
}

Kernel memoryless_update(const LoopModel& m) {
  const std::size_t nc = m.memory.size();
  Kernel k("phi_S", {m.sensor}, {m.memory}, m.arithmetic);
  for (std::size_t s = 0; s < m.sensor.size(); ++s) {
    auto src = m.phi.row(s * nc);
    auto dst = k.row(s);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return k;
}

Kernel gamma(const LoopModel& m) {
  if (!m.memoryless) throw PreconditionError("gamma requires a memoryless model");
  Kernel g = compose(compose(m.beta, memoryless_update(m)), m.pi);
  g.set_name("gamma");
  return g;
}

Kernel kappa(const LoopModel& m) {
  Kernel g = gamma(m);
  const std::size_t nw = m.world.size();
  Kernel k("kappa", {m.world}, {m.action, m.world}, m.arithmetic);
  for (std::size_t w = 0; w < nw; ++w) {
    for (std::size_t a = 0; a < m.action.size(); ++a) {
      const Scalar& weight = g(w, a);
      auto step = m.world_step(a, w);
      for (std::size_t v = 0; v < nw; ++v) k(w, a * nw + v) = weight * step[v];
    }
  }
  return k;
}

}  // namespace umwelt
