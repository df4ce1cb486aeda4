#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nmpl/measures.hpp"

namespace nmpl {

// Cell-centered lattice over a box: centers at lo + (i + 1/2) h.
struct CellGrid {
    int dim = 1;
    std::array<double, kMaxDim> lo{};
    std::array<double, kMaxDim> hi{};
    std::array<int, kMaxDim> n{};

    double h(int d) const { return (hi[d] - lo[d]) / n[d]; }
    int64_t count() const {
        int64_t c = 1;
        for (int d = 0; d < dim; ++d) c *= n[d];
        return c;
    }
    int64_t index(const std::array<int, kMaxDim>& idx) const {
        int64_t i = 0;
        for (int d = 0; d < dim; ++d) i = i * n[d] + idx[d];
        return i;
    }
    std::array<int, kMaxDim> coords(int64_t i) const {
        std::array<int, kMaxDim> idx{};
        for (int d = dim - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(i % n[d]);
            i /= n[d];
        }
        return idx;
    }
    Vec center(const std::array<int, kMaxDim>& idx) const {
        Vec x(dim);
        for (int d = 0; d < dim; ++d) x[d] = lo[d] + (idx[d] + 0.5) * h(d);
        return x;
    }
    std::array<int, kMaxDim> locate(const Vec& x) const {
        std::array<int, kMaxDim> idx{};
        for (int d = 0; d < dim; ++d) {
            int i = static_cast<int>(std::floor((x[d] - lo[d]) / h(d)));
            idx[d] = std::min(std::max(i, 0), n[d] - 1);
        }
        return idx;
    }
};

// Support of μ discretized at cell offsets. Full-dimensional supports are
// tested at cell centers; line-charging supports (null sets) use exact
// line/cell intersection; push-forward supports are sampled through the jump.
struct SupportMask {
    int dim = 1;
    std::array<int, kMaxDim> span{};  // offsets run over [-span_d, span_d]
    std::vector<std::array<int, kMaxDim>> offsets;  // marked, origin excluded
};
SupportMask support_mask(const MeasureSpec& m, const CellGrid& g, const Vec* x = nullptr,
                         int pushforward_samples_per_cell = 3);

struct ReachabilityResult {
    std::vector<uint8_t> mask;
    std::vector<int32_t> first_iter;  // iteration of first reach, -1 if never
    int iterations = 0;               // rounds until fixpoint
    bool converged = false;
};

using MeasureFamily = std::function<MeasureSpec(const Vec&)>;

// Least fixpoint of A_{n+1} = ∪_{x∈A_n} (x + supp(μ_x)) on the lattice.
// With restrict_to_omega, only cells inside omega generate translates;
// reached exterior cells stay marked. family may be empty (x-independent m).
ReachabilityResult iterate_reachable(const MeasureSpec& m, const MeasureFamily& family,
                                     const Vec& x0, const CellGrid& g, bool restrict_to_omega,
                                     const std::vector<uint8_t>* omega_mask, int max_iter);

struct CoverageResult {
    bool covered = false;
    std::vector<int64_t> uncovered;
};
CoverageResult covers_domain(const ReachabilityResult& r, const CellGrid& g,
                             const std::vector<uint8_t>& omega_mask);

// True when the support offsets include every lattice neighbor of the origin
// (discrete version of "0 interior to the support").
bool support_has_origin_neighborhood(const SupportMask& s);

}  // namespace nmpl
