#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace levyruin {

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
///
/// The generator is a pure function of (key, counter), so a 64-bit seed plus
/// a 64-bit stream id give an independent reproducible stream per path,
/// independent of how paths are scheduled across workers.
class Philox4x32 {
public:
    Philox4x32(std::uint64_t seed, std::uint64_t stream) {
        key_[0] = static_cast<std::uint32_t>(seed);
        key_[1] = static_cast<std::uint32_t>(seed >> 32);
        ctr_[0] = 0;
        ctr_[1] = 0;
        ctr_[2] = static_cast<std::uint32_t>(stream);
        ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            generate_block();
            pos_ = 0;
        }
        return out_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

private:
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    static constexpr std::uint32_t kMult0 = 0xD2511F53u;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;

    static void round(std::uint32_t c[4], const std::uint32_t k[2]) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
        const std::uint32_t n3 = lo0;
        c[0] = n0;
        c[1] = n1;
        c[2] = n2;
        c[3] = n3;
    }

    void generate_block() {
        std::uint32_t c[4] = {ctr_[0], ctr_[1], ctr_[2], ctr_[3]};
        std::uint32_t k[2] = {key_[0], key_[1]};
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                k[0] += kWeyl0;
                k[1] += kWeyl1;
            }
            round(c, k);
        }
        out_[0] = c[0];
        out_[1] = c[1];
        out_[2] = c[2];
        out_[3] = c[3];
        if (++ctr_[0] == 0) ++ctr_[1];  // 64-bit block counter
    }

    std::uint32_t ctr_[4];
    std::uint32_t key_[2];
    std::uint32_t out_[4] = {0, 0, 0, 0};
    int pos_ = 4;
};

/// One reproducible random stream with the variate generators the simulators
/// need. Streams with distinct (seed, stream) pairs are independent.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : gen_(seed, stream), seed_(seed) {}

    /// Independent stream derived from the same seed.
    RandomStream substream(std::uint64_t stream) const { return RandomStream(seed_, stream); }

    std::uint64_t next_u64() { return gen_.next_u64(); }

    /// Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform01() {
        return (static_cast<double>(gen_.next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    /// Standard normal via Box-Muller, one spare value cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double exponential(double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log(uniform01()) / rate;
    }

    /// Poisson count. Knuth's product method below mean 10, Hormann's PTRS
    /// transformed rejection above.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 10.0) {
            const double limit = std::exp(-mean);
            std::uint64_t k = 0;
            double prod = uniform01();
            while (prod > limit) {
                ++k;
                prod *= uniform01();
            }
            return k;
        }
        return poisson_ptrs(mean);
    }

    /// Gamma(shape, rate) by Marsaglia-Tsang squeeze, with the usual
    /// power-of-uniform boost for shape < 1.
    double gamma(double shape, double rate) {
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x;
            double v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

    /// Inverse Gaussian(mean, shape) by the Michael-Schucany-Haas transform.
    /// The smaller root is evaluated in the reciprocal form
    /// mu / (s + sqrt(s^2 - 1)), s = 1 + mu*y/(2*shape), which has no
    /// cancellation for small shape/mean ratios.
    double inverse_gaussian(double mean, double shape) {
        const double nu = normal();
        const double y = nu * nu;
        const double s = 1.0 + mean * y / (2.0 * shape);
        const double x = mean / (s + std::sqrt(s * s - 1.0));
        if (uniform01() <= mean / (mean + x)) return x;
        return mean * mean / x;
    }

private:
    std::uint64_t poisson_ptrs(double mean) {
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mean = std::log(mean);
        for (;;) {
            const double u = uniform01() - 0.5;
            const double v = uniform01();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                kf * log_mean - mean - std::lgamma(kf + 1.0)) {
                return static_cast<std::uint64_t>(kf);
            }
        }
    }

    Philox4x32 gen_;
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace levyruin
