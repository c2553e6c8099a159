#include "hnbc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hnbc/errors.hpp"

namespace hnbc {

Potential Potential::zero() {
    return Potential{};
}

Potential Potential::constant(double value) {
    if (!std::isfinite(value))
        throw ConfigError("constant potential value must be finite");
    Potential p;
    p.kind_ = Kind::constant;
    p.constant_ = value;
    return p;
}

Potential Potential::sampled(std::vector<double> values) {
    if (values.size() < 2)
        throw ConfigError("sampled potential needs at least two samples");
    for (double v : values)
        if (!std::isfinite(v))
            throw ConfigError("sampled potential values must be finite");
    Potential p;
    p.kind_ = Kind::sampled;
    p.samples_ = std::move(values);
    return p;
}

double Potential::operator()(double x) const {
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return constant_;
    case Kind::sampled: {
        const double clamped = std::clamp(x, 0.0, interval_length);
        const std::size_t segments = samples_.size() - 1;
        const double t = clamped / interval_length * static_cast<double>(segments);
        std::size_t i = static_cast<std::size_t>(t);
        if (i >= segments)
            i = segments - 1;
        const double frac = t - static_cast<double>(i);
        return samples_[i] * (1.0 - frac) + samples_[i + 1] * frac;
    }
    }
    return 0.0;
}

double Potential::l1_norm() const {
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return std::abs(constant_) * interval_length;
    case Kind::sampled: {
        // Exact integral of |piecewise linear|: split segments at sign
        // changes.
        const std::size_t segments = samples_.size() - 1;
        const double h = interval_length / static_cast<double>(segments);
        double acc = 0.0;
        for (std::size_t i = 0; i < segments; ++i) {
            const double a = samples_[i];
            const double b = samples_[i + 1];
            if (a * b >= 0.0) {
                acc += 0.5 * h * (std::abs(a) + std::abs(b));
            } else {
                const double t = a / (a - b); // zero crossing in [0, 1]
                acc += 0.5 * h * (std::abs(a) * t + std::abs(b) * (1.0 - t));
            }
        }
        return acc;
    }
    }
    return 0.0;
}

double Potential::integral() const {
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return constant_ * interval_length;
    case Kind::sampled: {
        const std::size_t segments = samples_.size() - 1;
        const double h = interval_length / static_cast<double>(segments);
        double acc = 0.0;
        for (std::size_t i = 0; i < segments; ++i)
            acc += 0.5 * h * (samples_[i] + samples_[i + 1]);
        return acc;
    }
    }
    return 0.0;
}

Potential Potential::reflected() const {
    if (kind_ != Kind::sampled)
        return *this;
    std::vector<double> rev(samples_.rbegin(), samples_.rend());
    return sampled(std::move(rev));
}

void Potential::append_interior_breakpoints(std::vector<double>& out) const {
    if (kind_ != Kind::sampled)
        return;
    const std::size_t segments = samples_.size() - 1;
    for (std::size_t i = 1; i < segments; ++i)
        out.push_back(interval_length * static_cast<double>(i) /
                      static_cast<double>(segments));
}

void SolverParams::validate() const {
    if (!(ode_rel_tol > 0.0) || !(ode_abs_tol > 0.0) || !(eigen_tol > 0.0))
        throw ConfigError("solver tolerances must be positive");
    if (n_max < 1)
        throw ConfigError("n_max must be >= 1");
}

void Spectrum::validate() const {
    for (std::size_t i = 0; i < data.size(); ++i) {
        const SpectralDatum& datum = data[i];
        if (datum.n != static_cast<int>(i)) {
            std::ostringstream msg;
            msg << "spectrum indices must run 0..N-1; entry " << i << " has n = "
                << datum.n;
            throw DimensionMismatch(msg.str());
        }
        if (!(datum.gamma > 0.0))
            throw NonPositiveNorming("gamma must be positive at n = " +
                                     std::to_string(datum.n));
        if (i > 0 && !(data[i - 1].lambda < datum.lambda))
            throw DimensionMismatch("eigenvalues must be strictly increasing at n = " +
                                    std::to_string(datum.n));
    }
}

} // namespace hnbc
