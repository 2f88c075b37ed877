#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "picone/vec.hpp"

namespace picone {

// A norm F together with its dual F*(y) = sup_{x != 0} <x,y> / F(x), both in
// closed form. Three families are supported:
//
//   Euclid            F(x) = |x|_2, self-dual
//   Lp(r)             F(x) = (sum |x_i|^r)^(1/r), dual exponent r' = r/(r-1)
//   WeightedEuclid(w) F(x) = sqrt(sum w_i x_i^2), w_i > 0, dual weights 1/w_i
//
// Lp accepts r = 1 and r = inf so that dual evaluations always have somewhere
// to land, but those two endpoints are not C^1 away from 0: gradient queries
// and any use as the primal norm of a Hardy weight require smooth(), i.e.
// 1 < r < inf.
class NormPair {
  public:
    enum class Kind { Euclid, Lp, WeightedEuclid };

    static NormPair euclid() { return NormPair(Kind::Euclid, 2.0, {}); }

    static NormPair lp(double r) {
        if (!(r >= 1.0))
            throw std::invalid_argument("NormPair: Lp exponent must satisfy r >= 1");
        return NormPair(Kind::Lp, r, {});
    }

    static NormPair lp_infinity() {
        return NormPair(Kind::Lp, std::numeric_limits<double>::infinity(), {});
    }

    static NormPair weighted_euclid(Vec w) {
        for (double wi : w)
            if (!(wi > 0.0))
                throw std::invalid_argument("NormPair: weights must be positive");
        if (w.empty()) throw std::invalid_argument("NormPair: empty weight vector");
        return NormPair(Kind::WeightedEuclid, 2.0, std::move(w));
    }

    Kind kind() const { return kind_; }
    double exponent() const { return r_; }
    const Vec& weights() const { return w_; }

    // C^1 away from the origin (and strictly convex), which is what the
    // gradient identities and the Hardy machinery need.
    bool smooth() const {
        if (kind_ != Kind::Lp) return true;
        return r_ > 1.0 && std::isfinite(r_);
    }

    NormPair dual_pair() const {
        switch (kind_) {
            case Kind::Euclid:
                return euclid();
            case Kind::Lp: {
                if (r_ == 1.0) return lp_infinity();
                if (!std::isfinite(r_)) return lp(1.0);
                return lp(r_ / (r_ - 1.0));
            }
            case Kind::WeightedEuclid: {
                Vec inv(w_.size());
                for (std::size_t i = 0; i < w_.size(); ++i) inv[i] = 1.0 / w_[i];
                return weighted_euclid(std::move(inv));
            }
        }
        throw std::logic_error("NormPair: unreachable");
    }

    double primal(std::span<const double> x) const {
        switch (kind_) {
            case Kind::Euclid:
                return norm2(x);
            case Kind::Lp: {
                if (!std::isfinite(r_)) return norm_inf(x);
                if (r_ == 1.0) {
                    double s = 0.0;
                    for (double v : x) s += std::abs(v);
                    return s;
                }
                double s = 0.0;
                for (double v : x) s += std::pow(std::abs(v), r_);
                return std::pow(s, 1.0 / r_);
            }
            case Kind::WeightedEuclid: {
                check_dim(x.size());
                double s = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) s += w_[i] * x[i] * x[i];
                return std::sqrt(s);
            }
        }
        throw std::logic_error("NormPair: unreachable");
    }

    double dual(std::span<const double> x) const { return dual_pair().primal(x); }

    // Gradient of F at x != 0 (1-homogeneous of degree 0).
    Vec grad_primal(std::span<const double> x) const {
        if (!smooth())
            throw std::domain_error("NormPair: gradient undefined for l1/linf norms");
        double f = primal(x);
        if (f == 0.0) throw std::domain_error("NormPair: gradient undefined at 0");
        Vec g(x.size());
        switch (kind_) {
            case Kind::Euclid:
                for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] / f;
                break;
            case Kind::Lp:
                for (std::size_t i = 0; i < x.size(); ++i)
                    g[i] = signed_pow(x[i], r_ - 1.0) / std::pow(f, r_ - 1.0);
                break;
            case Kind::WeightedEuclid:
                check_dim(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) g[i] = w_[i] * x[i] / f;
                break;
        }
        return g;
    }

    Vec grad_dual(std::span<const double> x) const { return dual_pair().grad_primal(x); }

  private:
    NormPair(Kind k, double r, Vec w) : kind_(k), r_(r), w_(std::move(w)) {}

    void check_dim(std::size_t n) const {
        if (kind_ == Kind::WeightedEuclid && n != w_.size())
            throw std::invalid_argument("NormPair: dimension does not match weight vector");
    }

    Kind kind_;
    double r_;
    Vec w_;
};

// Convex integrand H(z) >= 0, positively homogeneous of some degree p > 1,
// vanishing exactly where its gradient vanishes. Three families:
//
//   PowerEuclid      H(z) = |z|^p
//   PowerNorm        H(z) = F(z)^p for a smooth NormPair F
//   Anisotropic      H(z) = sum_i |z_i|^{p_i}, 1 < p_1 <= ... <= p_N
//
// The anisotropic family is homogeneous per coordinate but not as a whole;
// homogeneous() reports that, and callers that need a single degree (Euler
// identity, fractional quotients H^{q/p}) must reject it. degree() returns
// the largest exponent, min_degree() the smallest.
class HomogeneousForm {
  public:
    enum class Kind { PowerEuclid, PowerNorm, Anisotropic };

    static HomogeneousForm power_euclid(double p, std::size_t dim) {
        check_degree(p);
        HomogeneousForm h;
        h.kind_ = Kind::PowerEuclid;
        h.p_ = p;
        h.dim_ = dim;
        return h;
    }

    static HomogeneousForm power_norm(NormPair pair, double p, std::size_t dim) {
        check_degree(p);
        if (!pair.smooth())
            throw std::invalid_argument("HomogeneousForm: PowerNorm requires a smooth norm");
        HomogeneousForm h;
        h.kind_ = Kind::PowerNorm;
        h.p_ = p;
        h.dim_ = dim;
        h.pair_ = pair;
        return h;
    }

    static HomogeneousForm anisotropic(Vec exponents) {
        if (exponents.empty())
            throw std::invalid_argument("HomogeneousForm: empty exponent list");
        for (double e : exponents) check_degree(e);
        if (!std::is_sorted(exponents.begin(), exponents.end()))
            throw std::invalid_argument("HomogeneousForm: exponents must be non-decreasing");
        HomogeneousForm h;
        h.kind_ = Kind::Anisotropic;
        h.dim_ = exponents.size();
        h.p_ = exponents.back();
        h.exps_ = std::move(exponents);
        return h;
    }

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    bool homogeneous() const { return kind_ != Kind::Anisotropic; }
    double degree() const { return p_; }
    double min_degree() const { return kind_ == Kind::Anisotropic ? exps_.front() : p_; }
    const Vec& exponents() const { return exps_; }
    const NormPair& norm() const {
        if (kind_ != Kind::PowerNorm)
            throw std::logic_error("HomogeneousForm: no underlying norm");
        return *pair_;
    }

    double operator()(std::span<const double> z) const { return eval(z); }

    double eval(std::span<const double> z) const {
        check_dim(z.size());
        switch (kind_) {
            case Kind::PowerEuclid:
                return std::pow(norm2(z), p_);
            case Kind::PowerNorm:
                return std::pow(pair_->primal(z), p_);
            case Kind::Anisotropic: {
                double s = 0.0;
                for (std::size_t i = 0; i < z.size(); ++i)
                    s += std::pow(std::abs(z[i]), exps_[i]);
                return s;
            }
        }
        throw std::logic_error("HomogeneousForm: unreachable");
    }

    // Gradient, defined everywhere: since every exponent exceeds 1, the
    // gradient extends continuously by 0 across the zero set of H.
    Vec grad(std::span<const double> z) const {
        check_dim(z.size());
        Vec g(z.size(), 0.0);
        switch (kind_) {
            case Kind::PowerEuclid: {
                double n = norm2(z);
                if (n == 0.0) return g;
                double c = p_ * std::pow(n, p_ - 2.0);
                for (std::size_t i = 0; i < z.size(); ++i) g[i] = c * z[i];
                return g;
            }
            case Kind::PowerNorm: {
                double f = pair_->primal(z);
                if (f == 0.0) return g;
                Vec gf = pair_->grad_primal(z);
                double c = p_ * std::pow(f, p_ - 1.0);
                for (std::size_t i = 0; i < z.size(); ++i) g[i] = c * gf[i];
                return g;
            }
            case Kind::Anisotropic: {
                for (std::size_t i = 0; i < z.size(); ++i)
                    g[i] = exps_[i] * signed_pow(z[i], exps_[i] - 1.0);
                return g;
            }
        }
        throw std::logic_error("HomogeneousForm: unreachable");
    }

    // H^{q/p} for 1 < q <= p. Because H = F^p with F convex positively
    // 1-homogeneous, the root is just F^q: same family, lower degree, and in
    // particular convex. Only homogeneous kinds have a single p to root.
    HomogeneousForm root_power(double q) const {
        if (!homogeneous())
            throw std::domain_error("HomogeneousForm: root_power needs a homogeneous form");
        if (!(q > 1.0 && q <= p_))
            throw std::invalid_argument("HomogeneousForm: root_power requires 1 < q <= p");
        if (kind_ == Kind::PowerEuclid) return power_euclid(q, dim_);
        return power_norm(*pair_, q, dim_);
    }

  private:
    HomogeneousForm() = default;

    static void check_degree(double p) {
        if (!(p > 1.0) || !std::isfinite(p))
            throw std::invalid_argument("HomogeneousForm: degree must satisfy p > 1");
    }

    void check_dim(std::size_t n) const {
        if (n != dim_)
            throw std::invalid_argument("HomogeneousForm: argument dimension mismatch");
    }

    Kind kind_ = Kind::PowerEuclid;
    double p_ = 2.0;
    std::size_t dim_ = 0;
    std::optional<NormPair> pair_;
    Vec exps_;
};

}  // namespace picone
