#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spintomo/provider.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo {

enum class InequalityKind { wigner, chsh, uffink };

std::string_view to_string(InequalityKind kind);
std::optional<InequalityKind> parse_inequality_kind(std::string_view name);

// Directions consumed by each evaluator: wigner (a, b, c),
// chsh (a, b, b', c), uffink (A, A', B, B').
std::size_t direction_count(InequalityKind kind);

// A positive margin signals a violation. A margin must exceed this to
// count, so float noise at a threshold is not reported as a violation.
inline constexpr double kViolationTol = 1e-12;

struct InequalityReport {
  InequalityKind kind;
  std::vector<Direction> directions;
  double lhs = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool violated = false;
};

// P(n1, n2) = omega(+1, +1; n1, n2).
double wigner_joint_prob(const TomogramProvider& t, const Direction& n1, const Direction& n2);

// P(a,b) + P(b,c) - P(a,c) >= 0; margin = -lhs.
InequalityReport eval_wigner(const TomogramProvider& t, const Direction& na, const Direction& nb,
                             const Direction& nc);

// M(n1, n2) = sum m1 m2 omega(m1, m2; n1, n2) for two qubits.
double correlation_M(const TomogramProvider& t, const Direction& n1, const Direction& n2);

// <(n1.S)(n2.S)> = sum m1 m2 omega for two qubits or two qutrits.
double spin_correlation(const TomogramProvider& t, const Direction& n1, const Direction& n2);

// |M(a,b) - M(a,c)| + M(b',b) + M(b',c) - 2 <= 0; margin = lhs.
InequalityReport eval_chsh(const TomogramProvider& t, const Direction& na, const Direction& nb,
                           const Direction& nbp, const Direction& nc);

// <AB' + A'B>^2 + <AB - A'B'>^2 <= 1 with A = nA.S etc.; margin = lhs - 1.
// Throws DomainError unless nA is orthogonal to nA' and nB to nB'
// (within 1e-10).
InequalityReport eval_uffink(const TomogramProvider& t, const Direction& nA, const Direction& nAp,
                             const Direction& nB, const Direction& nBp);

// Dispatch on kind; dirs.size() must equal direction_count(kind).
InequalityReport evaluate(const TomogramProvider& t, InequalityKind kind, std::span<const Direction> dirs);

}  // namespace spintomo
