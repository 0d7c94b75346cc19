// Copyright 2026 The wpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsim_kernels.hpp"

#include <cmath>
#include <numbers>

namespace wpf::qsim::kernels {

namespace {

std::vector<Amp> twiddles(std::uint64_t n) {
    std::vector<Amp> w(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        w[k] = Amp(std::cos(angle), std::sin(angle));
    }
    return w;
}

// Label of fiber t with a zero gap of `width` bits at `offset`.
inline std::uint64_t fiber_base(std::uint64_t t, unsigned offset, unsigned width) {
    const std::uint64_t low = t & ((std::uint64_t{1} << offset) - 1);
    return low | ((t >> offset) << (offset + width));
}

inline std::uint64_t bit_reverse(std::uint64_t x, unsigned width) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < width; ++i) r |= ((x >> i) & 1) << (width - 1 - i);
    return r;
}

}  // namespace

void permute_serial(const std::vector<Amp> &in, std::vector<Amp> &out, const Gather &g,
                    const std::vector<std::uint64_t> &perm, std::uint64_t control) {
    const std::uint64_t size = in.size();
    for (std::uint64_t x = 0; x < size; ++x) {
        if ((x & control) != control) {
            out[x] = in[x];
            continue;
        }
        out[g.scatter(x, perm[g.local(x)])] = in[x];
    }
}

void permute_parallel(const std::vector<Amp> &in, std::vector<Amp> &out, const Gather &g,
                      const std::vector<std::uint64_t> &perm, std::uint64_t control) {
    const auto size = static_cast<std::int64_t>(in.size());
    // A bijection on labels: every out[] slot has exactly one writer.
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < size; ++i) {
        const auto x = static_cast<std::uint64_t>(i);
        if ((x & control) != control) {
            out[x] = in[x];
        } else {
            out[g.scatter(x, perm[g.local(x)])] = in[x];
        }
    }
}

double off_domain_serial(const std::vector<Amp> &in, const Gather &g, const std::vector<std::uint8_t> &domain,
                         std::uint64_t control) {
    double mass = 0.0;
    for (std::uint64_t x = 0; x < in.size(); ++x) {
        if ((x & control) == control && !domain[g.local(x)]) mass += std::norm(in[x]);
    }
    return mass;
}

double off_domain_parallel(const std::vector<Amp> &in, const Gather &g, const std::vector<std::uint8_t> &domain,
                           std::uint64_t control) {
    double mass = 0.0;
    const auto size = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) reduction(+ : mass)
    for (std::int64_t i = 0; i < size; ++i) {
        const auto x = static_cast<std::uint64_t>(i);
        if ((x & control) == control && !domain[g.local(x)]) mass += std::norm(in[x]);
    }
    return mass;
}

void hadamard_serial(std::vector<Amp> &amps, unsigned first_qubit, unsigned width) {
    const double s = std::sqrt(0.5);
    for (unsigned q = first_qubit; q < first_qubit + width; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        for (std::uint64_t x = 0; x < amps.size(); ++x) {
            if (x & bit) continue;
            const Amp a = amps[x], b = amps[x | bit];
            amps[x] = s * (a + b);
            amps[x | bit] = s * (a - b);
        }
    }
}

void hadamard_parallel(std::vector<Amp> &amps, unsigned first_qubit, unsigned width) {
    const double s = std::sqrt(0.5);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    for (unsigned q = first_qubit; q < first_qubit + width; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
#pragma omp parallel for schedule(static)
        for (std::int64_t t = 0; t < half; ++t) {
            const auto x = fiber_base(static_cast<std::uint64_t>(t), q, 1);
            const Amp a = amps[x], b = amps[x | bit];
            amps[x] = s * (a + b);
            amps[x | bit] = s * (a - b);
        }
    }
}

void inverse_dft_serial(const std::vector<Amp> &in, std::vector<Amp> &out, unsigned offset, unsigned width) {
    const std::uint64_t n = std::uint64_t{1} << width;
    const std::vector<Amp> w = twiddles(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const std::uint64_t fibers = in.size() / n;
    // out_y = n^{-1/2} sum_x e^{-2 pi i x y / n} in_x
    for (std::uint64_t t = 0; t < fibers; ++t) {
        const std::uint64_t base = fiber_base(t, offset, width);
        for (std::uint64_t y = 0; y < n; ++y) {
            Amp acc = 0.0;
            for (std::uint64_t x = 0; x < n; ++x) acc += in[base | (x << offset)] * w[(x * y) & (n - 1)];
            out[base | (y << offset)] = acc * scale;
        }
    }
}

void inverse_dft_parallel(const std::vector<Amp> &in, std::vector<Amp> &out, unsigned offset, unsigned width) {
    const std::uint64_t n = std::uint64_t{1} << width;
    const std::vector<Amp> w = twiddles(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const auto fibers = static_cast<std::int64_t>(in.size() / n);
    // Same transform as the serial kernel, by iterative radix-2 FFT on each fiber.
#pragma omp parallel
    {
        std::vector<Amp> a(n);
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < fibers; ++t) {
            const std::uint64_t base = fiber_base(static_cast<std::uint64_t>(t), offset, width);
            for (std::uint64_t x = 0; x < n; ++x) a[bit_reverse(x, width)] = in[base | (x << offset)];
            for (std::uint64_t len = 2; len <= n; len <<= 1) {
                const std::uint64_t half = len / 2, stride = n / len;
                for (std::uint64_t i = 0; i < n; i += len) {
                    for (std::uint64_t j = 0; j < half; ++j) {
                        const Amp u = a[i + j], v = a[i + j + half] * w[j * stride];
                        a[i + j] = u + v;
                        a[i + j + half] = u - v;
                    }
                }
            }
            for (std::uint64_t y = 0; y < n; ++y) out[base | (y << offset)] = a[y] * scale;
        }
    }
}

void marginal_serial(const std::vector<Amp> &in, std::vector<double> &probs, unsigned offset, unsigned width) {
    const std::uint64_t n = std::uint64_t{1} << width;
    probs.assign(n, 0.0);
    const std::uint64_t fibers = in.size() / n;
    for (std::uint64_t v = 0; v < n; ++v) {
        double p = 0.0;
        for (std::uint64_t t = 0; t < fibers; ++t) p += std::norm(in[fiber_base(t, offset, width) | (v << offset)]);
        probs[v] = p;
    }
}

void marginal_parallel(const std::vector<Amp> &in, std::vector<double> &probs, unsigned offset, unsigned width) {
    const std::uint64_t n = std::uint64_t{1} << width;
    probs.assign(n, 0.0);
    const std::uint64_t fibers = in.size() / n;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const auto v = static_cast<std::uint64_t>(i);
        double p = 0.0;
        for (std::uint64_t t = 0; t < fibers; ++t) p += std::norm(in[fiber_base(t, offset, width) | (v << offset)]);
        probs[v] = p;
    }
}

}  // namespace wpf::qsim::kernels
