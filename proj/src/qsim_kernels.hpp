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

#ifndef WPF_SRC_QSIM_KERNELS_HPP_
#define WPF_SRC_QSIM_KERNELS_HPP_

#include <complex>
#include <cstdint>
#include <vector>

namespace wpf::qsim::kernels {

using Amp = std::complex<double>;

/// Where each local register of a unitary sits inside the state label.
struct Gather {
    std::vector<unsigned> state_offset;
    std::vector<unsigned> local_offset;
    std::vector<std::uint64_t> mask;  // (1 << width) - 1
    std::uint64_t touched = 0;        // union of the registers' bits in the state label

    std::uint64_t local(std::uint64_t x) const {
        std::uint64_t l = 0;
        for (std::size_t k = 0; k < mask.size(); ++k) l |= ((x >> state_offset[k]) & mask[k]) << local_offset[k];
        return l;
    }
    std::uint64_t scatter(std::uint64_t x, std::uint64_t l) const {
        std::uint64_t y = x & ~touched;
        for (std::size_t k = 0; k < mask.size(); ++k) y |= ((l >> local_offset[k]) & mask[k]) << state_offset[k];
        return y;
    }
};

// out[scatter(x, perm[local(x)])] = in[x] for labels x whose control bits
// are all set (control == 0 means unconditional); other labels copy through.
void permute_serial(const std::vector<Amp> &in, std::vector<Amp> &out, const Gather &g,
                    const std::vector<std::uint64_t> &perm, std::uint64_t control);
void permute_parallel(const std::vector<Amp> &in, std::vector<Amp> &out, const Gather &g,
                      const std::vector<std::uint64_t> &perm, std::uint64_t control);

double off_domain_serial(const std::vector<Amp> &in, const Gather &g, const std::vector<std::uint8_t> &domain,
                         std::uint64_t control);
double off_domain_parallel(const std::vector<Amp> &in, const Gather &g, const std::vector<std::uint8_t> &domain,
                           std::uint64_t control);

void hadamard_serial(std::vector<Amp> &amps, unsigned first_qubit, unsigned width);
void hadamard_parallel(std::vector<Amp> &amps, unsigned first_qubit, unsigned width);

// out_y = n^{-1/2} sum_x e^{-2 pi i x y / n} in_x on every fiber of the register.
// The serial kernel sums directly; the parallel one runs an FFT.
void inverse_dft_serial(const std::vector<Amp> &in, std::vector<Amp> &out, unsigned offset, unsigned width);
void inverse_dft_parallel(const std::vector<Amp> &in, std::vector<Amp> &out, unsigned offset, unsigned width);

void marginal_serial(const std::vector<Amp> &in, std::vector<double> &probs, unsigned offset, unsigned width);
void marginal_parallel(const std::vector<Amp> &in, std::vector<double> &probs, unsigned offset, unsigned width);

}  // namespace wpf::qsim::kernels

#endif  // WPF_SRC_QSIM_KERNELS_HPP_
