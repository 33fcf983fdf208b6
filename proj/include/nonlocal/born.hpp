#pragma once

// Coincidence probabilities and the correlation E_eps(theta) built from the
// generalized-trigonometric pair at (p, q) = (2, 2 + eps). Two incompatible
// normalizations coexist here: the literal assignment
// |sin|^2 + |cos|^{2+eps} = 1 and the identity |cos|^2 + |sin|^{2+eps} = 1
// that the derivative construction actually satisfies; the mapping from
// (sin, cos) to probabilities is therefore selectable.

#include <optional>
#include <string_view>

#include "nonlocal/gentrig.hpp"

namespace nonlocal {

struct Epsilon {
    double value = 0.0;

    // eps > -1 keeps q = 2 + eps > 1, so F_{2,q} stays convergent and invertible.
    void validate() const;
    double q() const { return 2.0 + value; }
};

enum class Convention {
    // p(a=b) = sin^2, p(a!=b) = 1 - sin^2; the normalization defect
    // |sin^2 + |cos|^{2+eps} - 1| is reported, not hidden.
    PaperLiteral,
    // p(a=b) = |sin|^{2+eps}, p(a!=b) = cos^2; sums to one exactly by the
    // generalized-trig identity.
    IdentityConsistent,
    // (sin^2, |cos|^{2+eps}) divided by their sum.
    Renormalized,
};

std::string_view to_string(Convention mode);
std::optional<Convention> convention_from_string(std::string_view name);

struct ProbabilityPair {
    double p_same = 0.0;
    double p_diff = 0.0;
    // |sin^2 + |cos|^{2+eps} - 1|, the mismatch of the literal normalization;
    // identically 0 at eps = 0.
    double defect = 0.0;
};

ProbabilityPair probabilities(Epsilon eps, double theta, Convention mode,
                              double invert_tol = kDefaultInvertTol);

// p_same - p_diff; equals -cos(2 theta) at eps = 0 in every mode.
double correlation(Epsilon eps, double theta, Convention mode,
                   double invert_tol = kDefaultInvertTol);

// First-order small-eps expansion
//   E ~ (sin^2 - cos^2) - eps cos^2 log|cos|,
// with sin, cos taken at (2, 2 + eps). Valid for |eps| <~ 0.1; the caller
// judges applicability.
double correlation_taylor(Epsilon eps, double theta,
                          double invert_tol = kDefaultInvertTol);

}  // namespace nonlocal
