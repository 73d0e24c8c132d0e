#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mvsde {

// McKean nonlinearity F and its companion Ftilde(x) = x*F(x), which enters
// the Fokker-Planck flux. F must be bounded with bounded derivative.
class NonlinearF {
public:
    enum class Kind { sine, sigmoid, cosine, custom };

    static NonlinearF sine(double amplitude = 1.0) {
        NonlinearF f;
        f.kind_ = Kind::sine;
        f.amplitude_ = amplitude;
        f.sup_ = std::abs(amplitude);
        return f;
    }
    static NonlinearF sigmoid(double steepness, double center) {
        NonlinearF f;
        f.kind_ = Kind::sigmoid;
        f.steepness_ = steepness;
        f.center_ = center;
        f.sup_ = 1.0;
        return f;
    }
    static NonlinearF cosine() {
        NonlinearF f;
        f.kind_ = Kind::cosine;
        f.sup_ = 1.0;
        return f;
    }
    static NonlinearF custom(std::function<double(double)> fn, double sup, std::string name = "custom") {
        if (!fn) throw std::invalid_argument("NonlinearF::custom: null function");
        NonlinearF f;
        f.kind_ = Kind::custom;
        f.fn_ = std::move(fn);
        f.sup_ = sup;
        f.name_ = std::move(name);
        return f;
    }

    double operator()(double x) const {
        switch (kind_) {
            case Kind::sine: return amplitude_ * std::sin(x);
            case Kind::sigmoid: return 1.0 / (1.0 + std::exp(-steepness_ * (x - center_)));
            case Kind::cosine: return std::cos(x);
            case Kind::custom: return fn_(x);
        }
        return 0.0;
    }

    // Ftilde(0) = 0 holds exactly for every kind
    double tilde(double x) const { return x == 0.0 ? 0.0 : x * (*this)(x); }

    double sup_abs() const { return sup_; }
    Kind kind() const { return kind_; }
    std::string name() const {
        switch (kind_) {
            case Kind::sine: return amplitude_ == 1.0 ? "sin" : "sin*" + std::to_string(amplitude_);
            case Kind::sigmoid: return "sigmoid";
            case Kind::cosine: return "cos";
            case Kind::custom: return name_;
        }
        return "?";
    }

private:
    Kind kind_ = Kind::sine;
    double amplitude_ = 1.0;
    double steepness_ = 1.0;
    double center_ = 0.0;
    double sup_ = 1.0;
    std::function<double(double)> fn_;
    std::string name_ = "custom";
};

}  // namespace mvsde
