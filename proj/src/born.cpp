#include "nonlocal/born.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nonlocal {

void Epsilon::validate() const {
    if (!(value > -1.0) || !std::isfinite(value))
        throw std::domain_error("Epsilon: value must be finite and > -1, got " +
                                std::to_string(value));
}

std::string_view to_string(Convention mode) {
    switch (mode) {
        case Convention::PaperLiteral: return "paper-literal";
        case Convention::IdentityConsistent: return "identity-consistent";
        case Convention::Renormalized: return "renormalized";
    }
    return "unknown";
}

std::optional<Convention> convention_from_string(std::string_view name) {
    if (name == "paper-literal") return Convention::PaperLiteral;
    if (name == "identity-consistent") return Convention::IdentityConsistent;
    if (name == "renormalized") return Convention::Renormalized;
    return std::nullopt;
}

ProbabilityPair probabilities(Epsilon eps, double theta, Convention mode,
                              double invert_tol) {
    eps.validate();
    const double q = eps.q();
    const GenTrigEval ev = eval_pq({2.0, q}, theta, invert_tol);
    const double s2 = ev.sin_value * ev.sin_value;
    const double sq = std::pow(std::abs(ev.sin_value), q);
    const double cq = std::pow(std::abs(ev.cos_value), q);

    ProbabilityPair out;
    out.defect = std::abs(s2 + cq - 1.0);
    switch (mode) {
        case Convention::PaperLiteral:
            out.p_same = s2;
            out.p_diff = 1.0 - s2;
            break;
        case Convention::IdentityConsistent:
            // cos^2 = 1 - |sin|^q by the generalized-trig identity; the
            // complement form keeps the pair summing to one exactly.
            out.p_same = sq;
            out.p_diff = 1.0 - sq;
            break;
        case Convention::Renormalized:
            out.p_same = s2 / (s2 + cq);
            out.p_diff = 1.0 - out.p_same;
            break;
    }
    return out;
}

double correlation(Epsilon eps, double theta, Convention mode, double invert_tol) {
    const ProbabilityPair pp = probabilities(eps, theta, mode, invert_tol);
    return pp.p_same - pp.p_diff;
}

double correlation_taylor(Epsilon eps, double theta, double invert_tol) {
    eps.validate();
    const GenTrigEval ev = eval_pq({2.0, eps.q()}, theta, invert_tol);
    const double s2 = ev.sin_value * ev.sin_value;
    const double c2 = ev.cos_value * ev.cos_value;
    const double c_abs = std::abs(ev.cos_value);
    // x^2 log x -> 0 as x -> 0.
    const double log_term = c_abs > 0.0 ? c2 * std::log(c_abs) : 0.0;
    return (s2 - c2) - eps.value * log_term;
}

}  // namespace nonlocal
