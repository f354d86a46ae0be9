#include "glin/ratio.hpp"

#include <cmath>

#include "glin/errors.hpp"

namespace glin {

RatioCoefficient RatioCoefficient::reaction(Fn g, Fn g_prime) {
    if (!g || !g_prime) {
        throw InvalidArgumentError("RatioCoefficient::reaction: g and g' are required");
    }
    RatioCoefficient coef;
    coef.g_ = std::move(g);
    coef.g_prime_ = std::move(g_prime);
    coef.g_prime0_ = coef.g_prime_(0.0);
    return coef;
}

RatioCoefficient RatioCoefficient::diffusion(Fn a, Fn a_prime, Fn a_second, Fn gamma) {
    if (!a || !a_prime || !a_second || !gamma) {
        throw InvalidArgumentError("RatioCoefficient::diffusion: a, a', a'', gamma are required");
    }
    RatioCoefficient coef;
    coef.a_ = std::move(a);
    coef.a_prime_ = std::move(a_prime);
    coef.a_second_ = std::move(a_second);
    coef.gamma_ = std::move(gamma);
    coef.a0_ = coef.a_(0.0);
    coef.a_prime0_ = coef.a_prime_(0.0);
    coef.a_second0_ = coef.a_second_(0.0);
    return coef;
}

RatioCoefficient& RatioCoefficient::set_switch_threshold(double eps) {
    if (!(eps > 0.0)) {
        throw InvalidArgumentError("switch threshold must be positive");
    }
    epsilon_ = eps;
    return *this;
}

RatioCoefficient& RatioCoefficient::set_second_moment_threshold(double eps) {
    if (!(eps > 0.0)) {
        throw InvalidArgumentError("switch threshold must be positive");
    }
    epsilon_second_moment_ = eps;
    return *this;
}

double RatioCoefficient::eval(RatioKind kind, double u) const {
    const bool diffusion_kind = kind != RatioKind::ReactionSecant;
    if (diffusion_kind && !a_) {
        throw UnsupportedOperationError("diffusion ratio requested from a reaction coefficient");
    }
    if (!diffusion_kind && !g_) {
        throw UnsupportedOperationError("reaction ratio requested from a diffusion coefficient");
    }
    switch (kind) {
        case RatioKind::ReactionSecant:
            return std::abs(u) > epsilon_ ? g_(u) / u : g_prime0_;
        case RatioKind::DiffusionSecant:
            return std::abs(u) > epsilon_ ? (a_(u) - a0_) / u : a_prime0_;
        case RatioKind::DiffusionMean:
            return std::abs(u) > epsilon_ ? gamma_(u) / u : a0_;
        case RatioKind::DiffusionFirstMoment:
            return std::abs(u) > epsilon_ ? (u * a_(u) - gamma_(u)) / (u * u) : 0.5 * a_prime0_;
        case RatioKind::DiffusionSecondMoment: {
            if (std::abs(u) <= epsilon_second_moment_) {
                return a_second0_ / 3.0;
            }
            // (a'(u)u^2 - 2u a(u) + 2 gamma(u)) / u^3 rearranged through the
            // first moment to dodge the worst of the cancellation.
            const double first = (u * a_(u) - gamma_(u)) / (u * u);
            return (a_prime_(u) - 2.0 * first) / u;
        }
    }
    return 0.0;
}

double ratio_eval(const RatioCoefficient& coef, RatioKind kind, double u) {
    return coef.eval(kind, u);
}

DiffusionRatios diffusion_ratios(const RatioCoefficient& coef, double u) {
    DiffusionRatios r;
    r.flux = coef.eval(RatioKind::DiffusionMean, u);
    r.laplace_weight = coef.eval(RatioKind::DiffusionFirstMoment, u);
    r.gradient_weight = r.laplace_weight;
    r.gradient_sq_weight = coef.eval(RatioKind::DiffusionSecondMoment, u);
    return r;
}

}  // namespace glin
