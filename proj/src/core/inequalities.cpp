#include "spintomo/inequalities.hpp"

#include <cmath>
#include <string>

#include "spintomo/errors.hpp"

namespace spintomo {
namespace {

void require_two_qubits(const TomogramProvider& t, const char* what) {
  if (t.spin() != Spin::half || t.parties() != 2) {
    throw DomainError(std::string(what) + " needs a two-qubit tomogram provider");
  }
}

void require_two_parties(const TomogramProvider& t, const char* what) {
  if (t.parties() != 2) throw DomainError(std::string(what) + " needs a two-party tomogram provider");
}

InequalityReport make_report(InequalityKind kind, std::vector<Direction> dirs, double lhs, double bound,
                             bool upper_bound) {
  InequalityReport r{kind, std::move(dirs), lhs, bound, upper_bound ? lhs - bound : bound - lhs, false};
  r.violated = r.margin > kViolationTol;
  return r;
}

}  // namespace

std::string_view to_string(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::wigner: return "wigner";
    case InequalityKind::chsh: return "chsh";
    case InequalityKind::uffink: return "uffink";
  }
  return "unknown";
}

std::optional<InequalityKind> parse_inequality_kind(std::string_view name) {
  if (name == "wigner") return InequalityKind::wigner;
  if (name == "chsh") return InequalityKind::chsh;
  if (name == "uffink") return InequalityKind::uffink;
  return std::nullopt;
}

std::size_t direction_count(InequalityKind kind) { return kind == InequalityKind::wigner ? 3 : 4; }

double wigner_joint_prob(const TomogramProvider& t, const Direction& n1, const Direction& n2) {
  require_two_qubits(t, "wigner_joint_prob");
  return t.tomogram(n1, n2).probability({+1, +1});
}

InequalityReport eval_wigner(const TomogramProvider& t, const Direction& na, const Direction& nb,
                             const Direction& nc) {
  const double lhs = wigner_joint_prob(t, na, nb) + wigner_joint_prob(t, nb, nc) - wigner_joint_prob(t, na, nc);
  return make_report(InequalityKind::wigner, {na, nb, nc}, lhs, 0.0, false);
}

double spin_correlation(const TomogramProvider& t, const Direction& n1, const Direction& n2) {
  require_two_parties(t, "spin_correlation");
  const Tomogram tomo = t.tomogram(n1, n2);
  const auto labels = outcome_labels(tomo.spin());
  const auto probs = tomo.probabilities();
  double m = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j)
      m += labels[i] * labels[j] * probs[i * labels.size() + j];
  return m;
}

double correlation_M(const TomogramProvider& t, const Direction& n1, const Direction& n2) {
  require_two_qubits(t, "correlation_M");
  return spin_correlation(t, n1, n2);
}

InequalityReport eval_chsh(const TomogramProvider& t, const Direction& na, const Direction& nb,
                           const Direction& nbp, const Direction& nc) {
  const double lhs = std::abs(correlation_M(t, na, nb) - correlation_M(t, na, nc)) +
                     correlation_M(t, nbp, nb) + correlation_M(t, nbp, nc) - 2.0;
  return make_report(InequalityKind::chsh, {na, nb, nbp, nc}, lhs, 0.0, true);
}

InequalityReport eval_uffink(const TomogramProvider& t, const Direction& nA, const Direction& nAp,
                             const Direction& nB, const Direction& nBp) {
  if (std::abs(nA.dot(nAp)) > 1e-10 || std::abs(nB.dot(nBp)) > 1e-10) {
    throw DomainError("uffink settings must be locally orthogonal (|nA.nA'| = " +
                      std::to_string(std::abs(nA.dot(nAp))) + ", |nB.nB'| = " +
                      std::to_string(std::abs(nB.dot(nBp))) + ")");
  }
  const double ab = spin_correlation(t, nA, nB);
  const double abp = spin_correlation(t, nA, nBp);
  const double apb = spin_correlation(t, nAp, nB);
  const double apbp = spin_correlation(t, nAp, nBp);
  const double lhs = (abp + apb) * (abp + apb) + (ab - apbp) * (ab - apbp);
  return make_report(InequalityKind::uffink, {nA, nAp, nB, nBp}, lhs, 1.0, true);
}

InequalityReport evaluate(const TomogramProvider& t, InequalityKind kind, std::span<const Direction> dirs) {
  if (dirs.size() != direction_count(kind)) {
    throw ShapeError(std::string(to_string(kind)) + " takes " + std::to_string(direction_count(kind)) +
                     " directions, got " + std::to_string(dirs.size()));
  }
  switch (kind) {
    case InequalityKind::wigner: return eval_wigner(t, dirs[0], dirs[1], dirs[2]);
    case InequalityKind::chsh: return eval_chsh(t, dirs[0], dirs[1], dirs[2], dirs[3]);
    case InequalityKind::uffink: return eval_uffink(t, dirs[0], dirs[1], dirs[2], dirs[3]);
  }
  throw DomainError("unknown inequality kind");
}

}  // namespace spintomo
