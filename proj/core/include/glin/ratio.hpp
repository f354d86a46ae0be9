#pragma once

#include <functional>

namespace glin {

/// Removable-singularity ratios of a scalar nonlinearity.
///
/// Closed-form linearizations divide by the state value, e.g. g(u)/u for a
/// reaction term. Each ratio below is bounded as u -> 0; the limit is a
/// Taylor coefficient of the nonlinearity, and an evaluator switches to that
/// limit once |u| falls under a threshold. All five are moment integrals of
/// the derivative along the segment [0, u]:
///
///   ReactionSecant         g(u)/u                    = int_0^1 g'(tu) dt      -> g'(0)
///   DiffusionSecant        (a(u)-a(0))/u             = int_0^1 a'(tu) dt      -> a'(0)
///   DiffusionMean          gamma(u)/u                = int_0^1 a(tu) dt       -> a(0)
///   DiffusionFirstMoment   (u a(u)-gamma(u))/u^2     = int_0^1 t a'(tu) dt    -> a'(0)/2
///   DiffusionSecondMoment  (a'(u)u^2-2ua(u)+2gamma(u))/u^3
///                                                    = int_0^1 t^2 a''(tu) dt -> a''(0)/3
///
/// where gamma(u) is the antiderivative of the diffusivity, gamma(u) =
/// int_0^u a(v) dv.
enum class RatioKind {
    ReactionSecant,
    DiffusionSecant,
    DiffusionMean,
    DiffusionFirstMoment,
    DiffusionSecondMoment,
};

/// Evaluators and switch thresholds for the ratios above. Reaction ratios
/// need (g, g'); diffusion ratios need (a, a', a'', gamma). Limits at zero
/// are captured at construction.
///
/// The second-moment ratio uses its own, wider threshold: its literal form
/// loses roughly 2 a(0) eps / u^2 to cancellation, so below ~3e-5 the
/// rounding error alone would exceed 1e-6. It is evaluated through the
/// rearrangement (a'(u) - 2 * first_moment(u)) / u, which is algebraically
/// identical and keeps the error near 1e-8 at the 1e-4 switch point.
class RatioCoefficient {
public:
    using Fn = std::function<double(double)>;

    /// Reaction form: g and g'.
    static RatioCoefficient reaction(Fn g, Fn g_prime);

    /// Diffusion form: a, a', a'' and gamma (antiderivative of a).
    static RatioCoefficient diffusion(Fn a, Fn a_prime, Fn a_second, Fn gamma);

    double eval(RatioKind kind, double u) const;

    double switch_threshold() const noexcept { return epsilon_; }
    double second_moment_threshold() const noexcept { return epsilon_second_moment_; }
    RatioCoefficient& set_switch_threshold(double eps);
    RatioCoefficient& set_second_moment_threshold(double eps);

private:
    RatioCoefficient() = default;

    Fn g_, g_prime_;
    Fn a_, a_prime_, a_second_, gamma_;
    double epsilon_ = 1e-7;
    double epsilon_second_moment_ = 1e-4;
    // limits at u = 0
    double g_prime0_ = 0.0;
    double a0_ = 0.0;
    double a_prime0_ = 0.0;
    double a_second0_ = 0.0;
};

/// Free-function spelling.
double ratio_eval(const RatioCoefficient& coef, RatioKind kind, double u);

/// The four pointwise coefficients of the closed-form parabolic
/// linearization, all evaluated through the bounded ratios:
///
///   L(u)w = w - int_0^t { d/dx[ flux * dw/dx ] + laplace_weight * (Lap u) w
///                        + gradient_weight * (grad u . grad w)
///                        + gradient_sq_weight * (grad u)^2 w } dtau
///
/// with flux = DiffusionMean, laplace_weight = gradient_weight =
/// DiffusionFirstMoment, gradient_sq_weight = DiffusionSecondMoment. The
/// identity first_moment'(u) = second_moment(u) makes this pointwise form
/// the expansion of the conservative two-term form actually assembled.
struct DiffusionRatios {
    double flux = 0.0;
    double laplace_weight = 0.0;
    double gradient_weight = 0.0;
    double gradient_sq_weight = 0.0;
};

DiffusionRatios diffusion_ratios(const RatioCoefficient& coef, double u);

}  // namespace glin
