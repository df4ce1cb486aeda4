#include "nmpl/reachability.hpp"

#include <algorithm>
#include <cmath>

namespace nmpl {

namespace {

// iterate over the offset box [-span, span]^dim
template <typename F>
void for_each_offset(int dim, const std::array<int, kMaxDim>& span, F&& f) {
    std::array<int, kMaxDim> o{};
    for (int d = 0; d < dim; ++d) o[d] = -span[d];
    while (true) {
        f(o);
        int d = dim - 1;
        while (d >= 0) {
            if (++o[d] <= span[d]) break;
            o[d] = -span[d];
            --d;
        }
        if (d < 0) break;
    }
}

}  // namespace

SupportMask support_mask(const MeasureSpec& m, const CellGrid& g, const Vec* x,
                         int pushforward_samples_per_cell) {
    SupportMask s;
    s.dim = g.dim;
    for (int d = 0; d < g.dim; ++d) s.span[d] = g.n[d] - 1;

    if (m.is_push_forward()) {
        // sample the base support through the jump and mark image cells
        Vec x0(g.dim);
        const Vec& xe = x ? *x : x0;
        std::vector<uint8_t> seen;
        std::array<int, kMaxDim> dims{};
        int64_t total = 1;
        for (int d = 0; d < g.dim; ++d) {
            dims[d] = 2 * s.span[d] + 1;
            total *= dims[d];
        }
        seen.assign(total, 0);
        int sub = std::max(1, pushforward_samples_per_cell);
        for_each_offset(g.dim, s.span, [&](const std::array<int, kMaxDim>& o) {
            std::array<int, kMaxDim> ss{};
            for (int d = 0; d < g.dim; ++d) ss[d] = 0;
            while (true) {
                Vec z(g.dim);
                for (int d = 0; d < g.dim; ++d)
                    z[d] = (o[d] + (ss[d] + 0.5) / sub - 0.5) * g.h(d);
                bool in_support = norm(z) > 0 && m.base->support_contains(z);
                if (in_support) {
                    Vec y = m.jump->map(xe, z);
                    bool ok = true;
                    int64_t li = 0;
                    std::array<int, kMaxDim> oc{};
                    for (int d = 0; d < g.dim; ++d) {
                        double c = y[d] / g.h(d);
                        int oi = static_cast<int>(std::lround(c));
                        if (std::abs(oi) > s.span[d]) {
                            ok = false;
                            break;
                        }
                        oc[d] = oi;
                        li = li * dims[d] + (oi + s.span[d]);
                    }
                    bool origin = ok;
                    for (int d = 0; d < g.dim && origin; ++d) origin = oc[d] == 0;
                    if (ok && !origin && !seen[li]) {
                        seen[li] = 1;
                        s.offsets.push_back(oc);
                    }
                }
                int d = g.dim - 1;
                while (d >= 0) {
                    if (++ss[d] < sub) break;
                    ss[d] = 0;
                    --d;
                }
                if (d < 0) break;
            }
        });
        std::sort(s.offsets.begin(), s.offsets.end());
        return s;
    }

    const bool box_test = m.lower_dimensional_support();
    for_each_offset(g.dim, s.span, [&](const std::array<int, kMaxDim>& o) {
        bool origin = true;
        for (int d = 0; d < g.dim; ++d) origin = origin && o[d] == 0;
        if (origin) return;
        bool mark;
        if (box_test) {
            Vec lo(g.dim), hi(g.dim);
            for (int d = 0; d < g.dim; ++d) {
                lo[d] = (o[d] - 0.5) * g.h(d);
                hi[d] = (o[d] + 0.5) * g.h(d);
            }
            mark = m.support_intersects_box(lo, hi);
        } else {
            Vec z(g.dim);
            for (int d = 0; d < g.dim; ++d) z[d] = o[d] * g.h(d);
            mark = m.support_contains(z);
        }
        if (mark) s.offsets.push_back(o);
    });
    return s;
}

ReachabilityResult iterate_reachable(const MeasureSpec& m, const MeasureFamily& family,
                                     const Vec& x0, const CellGrid& g, bool restrict_to_omega,
                                     const std::vector<uint8_t>* omega_mask, int max_iter) {
    ReachabilityResult res;
    const int64_t total = g.count();
    res.mask.assign(total, 0);
    res.first_iter.assign(total, -1);

    SupportMask fixed_mask;
    bool have_fixed = !family;
    if (have_fixed) fixed_mask = support_mask(m, g);

    std::array<int, kMaxDim> seed = g.locate(x0);
    int64_t seed_i = g.index(seed);
    res.mask[seed_i] = 1;
    res.first_iter[seed_i] = 0;
    std::vector<int64_t> frontier{seed_i};

    int round = 0;
    while (!frontier.empty() && round < max_iter) {
        ++round;
        std::vector<int64_t> next;
        for (int64_t ci : frontier) {
            if (restrict_to_omega && omega_mask && !(*omega_mask)[ci]) continue;
            std::array<int, kMaxDim> c = g.coords(ci);
            const SupportMask* sm = &fixed_mask;
            SupportMask local;
            if (!have_fixed) {
                local = support_mask(family(g.center(c)), g);
                sm = &local;
            }
            for (const auto& o : sm->offsets) {
                std::array<int, kMaxDim> tgt{};
                bool ok = true;
                for (int d = 0; d < g.dim; ++d) {
                    tgt[d] = c[d] + o[d];
                    if (tgt[d] < 0 || tgt[d] >= g.n[d]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                int64_t ti = g.index(tgt);
                if (!res.mask[ti]) {
                    res.mask[ti] = 1;
                    res.first_iter[ti] = round;
                    next.push_back(ti);
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) {
            res.converged = true;
            break;
        }
    }
    res.converged = res.converged || frontier.empty();
    res.iterations = round;
    return res;
}

CoverageResult covers_domain(const ReachabilityResult& r, const CellGrid& g,
                             const std::vector<uint8_t>& omega_mask) {
    CoverageResult out;
    out.covered = true;
    for (int64_t i = 0; i < g.count(); ++i) {
        if (omega_mask[i] && !r.mask[i]) {
            out.covered = false;
            out.uncovered.push_back(i);
        }
    }
    return out;
}

bool support_has_origin_neighborhood(const SupportMask& s) {
    std::array<int, kMaxDim> one{};
    for (int d = 0; d < s.dim; ++d) one[d] = 1;
    bool ok = true;
    for_each_offset(s.dim, one, [&](const std::array<int, kMaxDim>& o) {
        bool origin = true;
        for (int d = 0; d < s.dim; ++d) origin = origin && o[d] == 0;
        if (origin) return;
        if (!std::binary_search(s.offsets.begin(), s.offsets.end(), o)) ok = false;
    });
    return ok;
}

}  // namespace nmpl
